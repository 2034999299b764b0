#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace landmarker {

/// Ordered binary prediction track. frame_indices maps track positions back
/// to source video frames and is strictly increasing.
struct BinaryTrack {
    std::vector<std::uint8_t> labels;        // 0 or 1
    std::vector<std::int64_t> frame_indices;

    std::size_t size() const { return labels.size(); }
};

void validate(const BinaryTrack& track);

/// Parameters of the iterative smoothing. Defaults follow the 8-neighbor / >3
/// interior rule and the 10-window / >5 end rule.
struct CleaningConfig {
    int half_width = 4;
    int interior_threshold = 3;
    int end_window = 10;
    int end_threshold = 5;
    int max_iterations = 64;
};

void validate(const CleaningConfig& cfg);

/// Contiguous run of track positions, inclusive on both ends.
struct Segment {
    std::int64_t start = 0;
    std::int64_t end = 0;

    std::int64_t length() const { return end - start + 1; }
    bool operator==(const Segment&) const = default;
};

enum class StopReason { StepThreshold, FixedPoint, IterationCap };

std::string to_string(StopReason reason);

struct CleaningOutcome {
    BinaryTrack track;
    int iterations = 0;
    StopReason reason = StopReason::StepThreshold;
};

/// Number of 0<->1 transitions between consecutive labels.
std::int64_t check_step(const BinaryTrack& track);

/// End rule: 1 iff the window sum strictly exceeds cfg.end_threshold. The
/// window must contain exactly cfg.end_window labels.
int check_ends(std::span<const std::uint8_t> window, const CleaningConfig& cfg);

/// One smoothing pass. Every output label is computed from the immutable
/// input track: the first and last half_width positions take the check_ends
/// label of the leading/trailing end_window, and each interior position is 1
/// iff strictly more than interior_threshold of its 2*half_width neighbors
/// (center excluded) are 1.
BinaryTrack clean_pass(const BinaryTrack& track, const CleaningConfig& cfg);

/// Iterates clean_pass until the output has at most one positive run
/// (check_step <= 2), reaches a fixed point, or hits max_iterations.
CleaningOutcome result_cleaning(const BinaryTrack& track, const CleaningConfig& cfg);

/// Maximal runs of 1s as inclusive segments, in order.
std::vector<Segment> extract_segments(const BinaryTrack& track);

/// Cleans the track and returns the longest positive run (earliest on ties),
/// or nothing if no positive frame survives.
std::optional<Segment> locate_landmark_period(const BinaryTrack& track,
                                              const CleaningConfig& cfg);

}  // namespace landmarker
