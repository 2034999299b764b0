#pragma once

#include <cstdint>
#include <vector>

namespace landmarker {

/// 8-bit RGB frame, row-major, three bytes per pixel.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // size = width * height * 3

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    const std::uint8_t* pixel(int x, int y) const {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
    std::uint8_t* pixel(int x, int y) {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
};

/// Single-channel luminance frame, values in [0, 255], row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // size = width * height

    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Per-pixel gradient magnitude and direction. Direction is in (-pi, pi].
/// The raw Sobel responses gx/gy are kept alongside so downstream stages can
/// quantize directions without re-deriving them from the angle.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> magnitude;
    std::vector<double> direction;
    std::vector<double> gx;
    std::vector<double> gy;
};

/// Binary edge mask plus the count of edge pixels.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;  // 1 = edge pixel
    std::int64_t edge_count = 0;
};

struct CannyParams {
    double gaussian_sigma = 1.4;
    int kernel_radius = 3;
    double low_threshold = 50.0;
    double high_threshold = 100.0;
};

/// Throws PreconditionError unless sigma > 0, radius >= ceil(2*sigma),
/// 0 <= low < high.
void validate(const CannyParams& params);

/// BT.601 luma: 0.299 R + 0.587 G + 0.114 B.
GrayImage to_grayscale(const RgbImage& img);

/// Separable Gaussian convolution. Kernel is normalized to sum 1; borders are
/// handled by edge-clamp replication, so dimensions are preserved.
GrayImage gaussian_blur(const GrayImage& img, double sigma, int radius);

/// 3x3 Sobel gradient with edge-clamp replication at the borders.
GradientField sobel_gradient(const GrayImage& img);

/// Bilinear resize (used to bring frames to the working resolution).
GrayImage resize_bilinear(const GrayImage& img, int new_width, int new_height);

/// Full Canny pipeline: blur, Sobel, non-maximum suppression over four
/// quantized directions, double-threshold hysteresis with 8-connectivity.
EdgeMap canny_edges(const GrayImage& img, const CannyParams& params);

}  // namespace landmarker
