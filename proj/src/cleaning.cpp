#include "landmarker/cleaning.hpp"

#include <algorithm>

#include "landmarker/errors.hpp"

namespace landmarker {

void validate(const BinaryTrack& track) {
    if (track.labels.size() != track.frame_indices.size()) {
        throw PreconditionError("track: labels and frame_indices differ in length");
    }
    for (std::size_t i = 0; i < track.labels.size(); ++i) {
        if (track.labels[i] > 1) throw PreconditionError("track: labels must be 0 or 1");
        if (i > 0 && track.frame_indices[i] <= track.frame_indices[i - 1]) {
            throw PreconditionError("track: frame_indices must be strictly increasing");
        }
    }
}

void validate(const CleaningConfig& cfg) {
    if (cfg.half_width < 1) throw PreconditionError("cleaning: half_width must be >= 1");
    if (cfg.end_window < 2 * cfg.half_width) {
        throw PreconditionError("cleaning: end_window must be >= 2*half_width");
    }
    if (cfg.interior_threshold < 0 || cfg.interior_threshold >= 2 * cfg.half_width) {
        throw PreconditionError("cleaning: interior_threshold must be in [0, 2*half_width)");
    }
    if (cfg.end_threshold < 0 || cfg.end_threshold >= cfg.end_window) {
        throw PreconditionError("cleaning: end_threshold must be in [0, end_window)");
    }
    if (cfg.max_iterations < 1) throw PreconditionError("cleaning: max_iterations must be >= 1");
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::StepThreshold: return "step_threshold";
        case StopReason::FixedPoint: return "fixed_point";
        case StopReason::IterationCap: return "iteration_cap";
    }
    return "unknown";
}

std::int64_t check_step(const BinaryTrack& track) {
    if (track.labels.empty()) throw PreconditionError("check_step: empty track");
    std::int64_t steps = 0;
    for (std::size_t i = 0; i + 1 < track.labels.size(); ++i) {
        steps += track.labels[i] != track.labels[i + 1];
    }
    return steps;
}

int check_ends(std::span<const std::uint8_t> window, const CleaningConfig& cfg) {
    validate(cfg);
    if (static_cast<int>(window.size()) != cfg.end_window) {
        throw PreconditionError("check_ends: window length must equal end_window");
    }
    int sum = 0;
    for (std::uint8_t v : window) sum += v;
    return sum > cfg.end_threshold ? 1 : 0;
}

namespace {

void clean_pass_into(const std::vector<std::uint8_t>& in, const CleaningConfig& cfg,
                     std::vector<std::int32_t>& prefix, std::vector<std::uint8_t>& out) {
    const std::size_t n = in.size();
    const int hw = cfg.half_width;

    prefix.resize(n + 1);
    prefix[0] = 0;
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + in[i];

    out.resize(n);
    const std::uint8_t head =
        prefix[cfg.end_window] > cfg.end_threshold ? 1 : 0;
    const std::uint8_t tail =
        prefix[n] - prefix[n - cfg.end_window] > cfg.end_threshold ? 1 : 0;
    for (int i = 0; i < hw; ++i) out[i] = head;
    for (std::size_t i = n - hw; i < n; ++i) out[i] = tail;
    for (std::size_t i = hw; i < n - hw; ++i) {
        const std::int32_t neighbors = prefix[i + hw + 1] - prefix[i - hw] - in[i];
        out[i] = neighbors > cfg.interior_threshold ? 1 : 0;
    }
}

}  // namespace

BinaryTrack clean_pass(const BinaryTrack& track, const CleaningConfig& cfg) {
    validate(cfg);
    validate(track);
    if (static_cast<int>(track.size()) < cfg.end_window) {
        throw PreconditionError("clean_pass: track shorter than end_window");
    }
    BinaryTrack out;
    out.frame_indices = track.frame_indices;
    std::vector<std::int32_t> prefix;
    clean_pass_into(track.labels, cfg, prefix, out.labels);
    return out;
}

CleaningOutcome result_cleaning(const BinaryTrack& track, const CleaningConfig& cfg) {
    validate(cfg);
    validate(track);
    if (static_cast<int>(track.size()) < cfg.end_window) {
        throw PreconditionError("result_cleaning: track shorter than end_window");
    }

    CleaningOutcome outcome;
    outcome.track.frame_indices = track.frame_indices;

    std::vector<std::uint8_t> current = track.labels;
    std::vector<std::uint8_t> next;
    std::vector<std::int32_t> prefix;
    for (int pass = 1;; ++pass) {
        clean_pass_into(current, cfg, prefix, next);
        outcome.iterations = pass;

        std::int64_t steps = 0;
        for (std::size_t i = 0; i + 1 < next.size(); ++i) steps += next[i] != next[i + 1];
        if (steps <= 2) {
            outcome.reason = StopReason::StepThreshold;
            current = std::move(next);
            break;
        }
        if (next == current) {
            outcome.reason = StopReason::FixedPoint;
            break;
        }
        std::swap(current, next);
        if (pass == cfg.max_iterations) {
            outcome.reason = StopReason::IterationCap;
            break;
        }
    }
    outcome.track.labels = std::move(current);
    return outcome;
}

std::vector<Segment> extract_segments(const BinaryTrack& track) {
    validate(track);
    std::vector<Segment> segments;
    const std::size_t n = track.size();
    std::size_t i = 0;
    while (i < n) {
        if (track.labels[i] == 1) {
            std::size_t j = i;
            while (j + 1 < n && track.labels[j + 1] == 1) ++j;
            segments.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j)});
            i = j + 1;
        } else {
            ++i;
        }
    }
    return segments;
}

std::optional<Segment> locate_landmark_period(const BinaryTrack& track,
                                              const CleaningConfig& cfg) {
    const CleaningOutcome outcome = result_cleaning(track, cfg);
    const std::vector<Segment> segments = extract_segments(outcome.track);
    if (segments.empty()) return std::nullopt;
    const auto longest = std::max_element(
        segments.begin(), segments.end(),
        [](const Segment& a, const Segment& b) { return a.length() < b.length(); });
    return *longest;
}

}  // namespace landmarker
