#pragma once

#include <cstdint>
#include <vector>

#include "landmarker/imaging.hpp"

namespace landmarker {

enum class FrameClass { Normal, Interference };

struct FilterConfig {
    std::int64_t edge_pixel_threshold = 2000;
    CannyParams canny;
};

void validate(const FilterConfig& cfg);

struct FrameVerdict {
    std::int64_t frame_index = 0;
    std::int64_t edge_count = 0;
    FrameClass verdict = FrameClass::Interference;
};

/// One calibration observation: the measured edge count and the true class.
struct LabeledEdgeCount {
    std::int64_t edge_count = 0;
    FrameClass truth = FrameClass::Interference;
};

/// A frame is Normal iff its edge count strictly exceeds the threshold.
FrameVerdict classify_frame(const EdgeMap& edges, const FilterConfig& cfg,
                            std::int64_t frame_index = 0);

/// Picks the threshold maximizing accuracy of the rule (count > t => Normal)
/// over the candidate set of all distinct observed edge counts. Ties resolve
/// to the smallest maximizing threshold. Requires both classes present.
std::int64_t calibrate_threshold(const std::vector<LabeledEdgeCount>& labeled);

/// Convenience overload taking edge maps directly.
std::int64_t calibrate_threshold(const std::vector<EdgeMap>& maps,
                                 const std::vector<FrameClass>& truths);

/// Indices of frames classified Normal, in original order.
std::vector<std::size_t> filter_sequence(const std::vector<EdgeMap>& frames,
                                         const FilterConfig& cfg);

}  // namespace landmarker
