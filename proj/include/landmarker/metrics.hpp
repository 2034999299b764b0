#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "landmarker/cleaning.hpp"

namespace landmarker {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }
};

/// Per-landmark evaluation figures. precision/recall/f1 are absent when their
/// denominators vanish; they serialize as null, never NaN.
struct MetricsReport {
    int landmark_index = 0;
    double intermediate_accuracy = 0.0;
    double final_accuracy = 0.0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    double temporal_iou = 0.0;
    std::optional<Segment> predicted_segment;  // source frame indices
    std::optional<Segment> truth_segment;      // source frame indices
    std::int64_t compared_frames = 0;
};

/// Element-wise tally against the positive class 1. Tracks must be aligned.
ConfusionCounts confusion(const BinaryTrack& pred, const BinaryTrack& truth);

double accuracy(const ConfusionCounts& c);
std::optional<double> precision(const ConfusionCounts& c);
std::optional<double> recall(const ConfusionCounts& c);
std::optional<double> f1_score(double precision, double recall);

/// Intersection over union of two disjoint segment lists by interval
/// arithmetic; inclusive segments count end - start + 1 frames. Both lists
/// empty gives 1, exactly one empty gives 0.
double temporal_iou(const std::vector<Segment>& a, const std::vector<Segment>& b);

/// Full per-landmark report: intermediate accuracy against truth, final
/// accuracy/precision/recall/f1 against truth, and temporal IoU between the
/// final and truth segment sets (in source frame indices).
MetricsReport evaluate_run(const BinaryTrack& intermediate, const BinaryTrack& final_track,
                           const BinaryTrack& truth, int landmark_index);

}  // namespace landmarker
