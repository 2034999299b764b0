#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace landmarker {

/// One annotated landmark period on the removal-stage timeline, in seconds.
struct LandmarkPeriod {
    std::string name;
    double start_s = 0.0;
    double end_s = 0.0;
};

struct TimelineAnnotation {
    double stage_start_s = 0.0;
    double stage_end_s = 0.0;
    std::vector<LandmarkPeriod> landmarks;  // strictly ordered, pairwise disjoint
    double fps = 25.0;
};

/// Throws PreconditionError if stage bounds or landmark ordering are invalid.
void validate(const TimelineAnnotation& ann);

struct SamplingConfig {
    double f_p = 10.0;                         // positive sampling frequency, fps
    double gap_fraction = 0.2;                 // share of each remaining part dropped next to the landmark
    double train_fraction = 0.8;               // train+validation share of the total
    double validation_fraction_of_train = 0.2; // validation share of the train pool
    std::uint64_t seed = 0;
};

void validate(const SamplingConfig& cfg);

struct TimeInterval {
    double start_s = 0.0;
    double end_s = 0.0;

    double duration() const { return end_s - start_s; }
};

/// Balanced sampling schedule for one landmark: the positive period plus the
/// outer negative periods, with the negative frequency chosen so that
/// f_n * t_n = f_p * t_p.
struct SamplingPlan {
    int landmark_index = 0;
    TimeInterval positive_period;
    std::vector<TimeInterval> negative_periods;
    double f_p = 0.0;
    double f_n = 0.0;
    double t_p = 0.0;
    double t_n = 0.0;
};

enum class SampleLabel { Positive, Negative };

struct LabeledSample {
    double timestamp_s = 0.0;
    SampleLabel label = SampleLabel::Negative;
    int landmark_index = 0;
};

struct DatasetSplit {
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> validation;
    std::vector<LabeledSample> test;
};

/// f_p * t_p / t_n. Rejects t_n <= 0.
double negative_frequency(double f_p, double t_p, double t_n);

/// Builds the sampling plan for landmark k. The sampling window runs from the
/// end of the previous landmark (or stage start) to the start of the next
/// landmark (or stage end). Each remaining part keeps its outer share, with
/// the gap_fraction share adjacent to the positive period discarded. A side
/// with no usable length is omitted; if both sides vanish the plan is rejected.
SamplingPlan build_sampling_plan(const TimelineAnnotation& ann, int k,
                                 const SamplingConfig& cfg);

/// Deterministic sample grid: inclusive start, exclusive end, spacing 1/f.
/// Positives over the positive period at f_p, negatives over each negative
/// period at f_n.
std::vector<LabeledSample> enumerate_samples(const SamplingPlan& plan);

/// Stratified deterministic split: test gets 20% of the total (rounded per
/// class), validation 20% of the remainder. Keyed on sample identity after a
/// canonical sort, so the result does not depend on input order.
DatasetSplit split_dataset(std::vector<LabeledSample> samples, const SamplingConfig& cfg);

}  // namespace landmarker
