#include "landmarker/interference.hpp"

#include <algorithm>

#include "landmarker/errors.hpp"

namespace landmarker {

void validate(const FilterConfig& cfg) {
    if (cfg.edge_pixel_threshold < 1) {
        throw PreconditionError("filter: edge_pixel_threshold must be >= 1");
    }
    validate(cfg.canny);
}

FrameVerdict classify_frame(const EdgeMap& edges, const FilterConfig& cfg,
                            std::int64_t frame_index) {
    FrameVerdict v;
    v.frame_index = frame_index;
    v.edge_count = edges.edge_count;
    v.verdict = edges.edge_count > cfg.edge_pixel_threshold ? FrameClass::Normal
                                                            : FrameClass::Interference;
    return v;
}

std::int64_t calibrate_threshold(const std::vector<LabeledEdgeCount>& labeled) {
    bool has_normal = false;
    bool has_interference = false;
    for (const auto& l : labeled) {
        (l.truth == FrameClass::Normal ? has_normal : has_interference) = true;
    }
    if (!has_normal || !has_interference) {
        throw PreconditionError("calibrate_threshold: both classes must be present");
    }

    // Sort by count; accuracy of (count > t => Normal) changes only at the
    // observed counts, so sweeping candidates in order with running tallies
    // covers every distinct optimum.
    std::vector<LabeledEdgeCount> sorted = labeled;
    std::sort(sorted.begin(), sorted.end(),
              [](const LabeledEdgeCount& a, const LabeledEdgeCount& b) {
                  return a.edge_count < b.edge_count;
              });

    const std::size_t n = sorted.size();
    std::size_t normal_total = 0;
    for (const auto& l : sorted) normal_total += l.truth == FrameClass::Normal;

    std::int64_t best_t = sorted.front().edge_count;
    std::size_t best_correct = 0;
    bool first = true;

    std::size_t interference_below_or_eq = 0;  // truth Interference with count <= t
    std::size_t normal_below_or_eq = 0;        // truth Normal with count <= t
    std::size_t i = 0;
    while (i < n) {
        const std::int64_t t = sorted[i].edge_count;
        while (i < n && sorted[i].edge_count == t) {
            (sorted[i].truth == FrameClass::Normal ? normal_below_or_eq
                                                   : interference_below_or_eq)++;
            ++i;
        }
        const std::size_t correct =
            interference_below_or_eq + (normal_total - normal_below_or_eq);
        if (first || correct > best_correct) {
            first = false;
            best_correct = correct;
            best_t = t;
        }
    }
    return best_t;
}

std::int64_t calibrate_threshold(const std::vector<EdgeMap>& maps,
                                 const std::vector<FrameClass>& truths) {
    if (maps.size() != truths.size()) {
        throw PreconditionError("calibrate_threshold: maps and truths differ in length");
    }
    std::vector<LabeledEdgeCount> labeled(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i) {
        labeled[i] = {maps[i].edge_count, truths[i]};
    }
    return calibrate_threshold(labeled);
}

std::vector<std::size_t> filter_sequence(const std::vector<EdgeMap>& frames,
                                         const FilterConfig& cfg) {
    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].edge_count > cfg.edge_pixel_threshold) retained.push_back(i);
    }
    return retained;
}

}  // namespace landmarker
