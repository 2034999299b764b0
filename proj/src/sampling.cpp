#include "landmarker/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "landmarker/errors.hpp"
#include "landmarker/rng.hpp"

namespace landmarker {

void validate(const TimelineAnnotation& ann) {
    if (!(ann.stage_start_s < ann.stage_end_s)) {
        throw PreconditionError("annotation: stage_start must precede stage_end");
    }
    if (!(ann.fps > 0.0)) throw PreconditionError("annotation: fps must be positive");
    double prev_end = ann.stage_start_s;
    for (std::size_t i = 0; i < ann.landmarks.size(); ++i) {
        const LandmarkPeriod& lm = ann.landmarks[i];
        if (!(lm.start_s < lm.end_s)) {
            throw PreconditionError("annotation: landmark " + std::to_string(i) +
                                    " has nonpositive duration");
        }
        if (lm.start_s < prev_end || lm.end_s > ann.stage_end_s) {
            throw PreconditionError("annotation: landmark " + std::to_string(i) +
                                    " out of order or outside the stage");
        }
        prev_end = lm.end_s;
    }
}

void validate(const SamplingConfig& cfg) {
    if (!(cfg.f_p > 0.0)) throw PreconditionError("sampling: f_p must be positive");
    if (cfg.gap_fraction < 0.0 || cfg.gap_fraction >= 1.0) {
        throw PreconditionError("sampling: gap_fraction must be in [0, 1)");
    }
    if (cfg.train_fraction <= 0.0 || cfg.train_fraction >= 1.0 ||
        cfg.validation_fraction_of_train <= 0.0 || cfg.validation_fraction_of_train >= 1.0) {
        throw PreconditionError("sampling: split fractions must be in (0, 1)");
    }
}

double negative_frequency(double f_p, double t_p, double t_n) {
    if (!(t_n > 0.0)) throw PreconditionError("negative_frequency: t_n must be positive");
    if (!(f_p > 0.0) || !(t_p > 0.0)) {
        throw PreconditionError("negative_frequency: f_p and t_p must be positive");
    }
    return f_p * t_p / t_n;
}

SamplingPlan build_sampling_plan(const TimelineAnnotation& ann, int k,
                                 const SamplingConfig& cfg) {
    validate(ann);
    validate(cfg);
    if (k < 0 || static_cast<std::size_t>(k) >= ann.landmarks.size()) {
        throw PreconditionError("build_sampling_plan: landmark index out of range");
    }

    const LandmarkPeriod& lm = ann.landmarks[k];
    const double window_start =
        k > 0 ? ann.landmarks[k - 1].end_s : ann.stage_start_s;
    const double window_end = static_cast<std::size_t>(k + 1) < ann.landmarks.size()
                                  ? ann.landmarks[k + 1].start_s
                                  : ann.stage_end_s;

    SamplingPlan plan;
    plan.landmark_index = k;
    plan.positive_period = {lm.start_s, lm.end_s};
    plan.f_p = cfg.f_p;
    plan.t_p = lm.end_s - lm.start_s;

    // Each remaining part keeps its outer (1 - gap_fraction) share; the share
    // adjacent to the landmark is the P-N gap.
    const double left_len = lm.start_s - window_start;
    if (left_len > 0.0) {
        const double keep_end = lm.start_s - cfg.gap_fraction * left_len;
        if (keep_end > window_start) {
            plan.negative_periods.push_back({window_start, keep_end});
        }
    }
    const double right_len = window_end - lm.end_s;
    if (right_len > 0.0) {
        const double keep_start = lm.end_s + cfg.gap_fraction * right_len;
        if (window_end > keep_start) {
            plan.negative_periods.push_back({keep_start, window_end});
        }
    }

    plan.t_n = 0.0;
    for (const TimeInterval& p : plan.negative_periods) plan.t_n += p.duration();
    if (!(plan.t_n > 0.0)) {
        throw PreconditionError("build_sampling_plan: no negative period available");
    }
    plan.f_n = negative_frequency(plan.f_p, plan.t_p, plan.t_n);
    return plan;
}

namespace {

void emit_grid(const TimeInterval& period, double frequency, SampleLabel label,
               int landmark_index, std::vector<LabeledSample>& out) {
    const double spacing = 1.0 / frequency;
    for (std::int64_t i = 0;; ++i) {
        const double t = period.start_s + static_cast<double>(i) * spacing;
        if (t >= period.end_s) break;
        out.push_back({t, label, landmark_index});
    }
}

}  // namespace

std::vector<LabeledSample> enumerate_samples(const SamplingPlan& plan) {
    std::vector<LabeledSample> out;
    emit_grid(plan.positive_period, plan.f_p, SampleLabel::Positive, plan.landmark_index, out);
    for (const TimeInterval& p : plan.negative_periods) {
        emit_grid(p, plan.f_n, SampleLabel::Negative, plan.landmark_index, out);
    }
    return out;
}

DatasetSplit split_dataset(std::vector<LabeledSample> samples, const SamplingConfig& cfg) {
    validate(cfg);
    if (samples.empty()) throw PreconditionError("split_dataset: no samples");

    // Canonical sort makes the split a function of the sample multiset, not of
    // the input order.
    std::sort(samples.begin(), samples.end(),
              [](const LabeledSample& a, const LabeledSample& b) {
                  return std::tie(a.timestamp_s, a.landmark_index, a.label) <
                         std::tie(b.timestamp_s, b.landmark_index, b.label);
              });

    std::vector<LabeledSample> by_class[2];
    for (const LabeledSample& s : samples) {
        by_class[s.label == SampleLabel::Positive ? 0 : 1].push_back(s);
    }

    const double test_fraction = 1.0 - cfg.train_fraction;
    Rng rng(derive_seed(cfg.seed, 0x5)  /* split stream */);
    DatasetSplit split;
    for (auto& cls : by_class) {
        rng.shuffle(cls);
        const auto n = static_cast<std::int64_t>(cls.size());
        const std::int64_t n_test = std::llround(test_fraction * static_cast<double>(n));
        const std::int64_t n_val = std::llround(cfg.validation_fraction_of_train *
                                                static_cast<double>(n - n_test));
        for (std::int64_t i = 0; i < n; ++i) {
            if (i < n_test) {
                split.test.push_back(cls[i]);
            } else if (i < n_test + n_val) {
                split.validation.push_back(cls[i]);
            } else {
                split.train.push_back(cls[i]);
            }
        }
    }
    if (split.train.empty() || split.validation.empty() || split.test.empty()) {
        throw PreconditionError("split_dataset: a split would be empty");
    }
    return split;
}

}  // namespace landmarker
