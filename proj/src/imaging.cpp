#include "landmarker/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "landmarker/errors.hpp"

namespace landmarker {

namespace {

int clamp_coord(int v, int limit) { return std::clamp(v, 0, limit - 1); }

std::vector<double> gaussian_kernel(double sigma, int radius) {
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double v = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        kernel[i + radius] = v;
        sum += v;
    }
    for (double& v : kernel) v /= sum;
    return kernel;
}

void require_gray(const GrayImage& img, int min_dim = 1) {
    if (img.width < min_dim || img.height < min_dim) {
        throw PreconditionError("image must be at least " + std::to_string(min_dim) + "x" +
                                std::to_string(min_dim));
    }
    if (img.data.size() != static_cast<std::size_t>(img.width) * img.height) {
        throw PreconditionError("gray image data size does not match dimensions");
    }
}

// Quantizes a gradient vector into one of four direction bins and returns the
// pixel offset to step along. Uses tan(pi/8) comparisons on |gx|, |gy| rather
// than the angle, so the bin assignment rotates exactly with the image.
struct NmsOffset {
    int dx;
    int dy;
};

NmsOffset nms_offset(double gx, double gy) {
    static const double kTanPi8 = std::sqrt(2.0) - 1.0;  // tan(22.5 deg)
    const double ax = std::abs(gx);
    const double ay = std::abs(gy);
    if (ay <= kTanPi8 * ax) return {1, 0};   // near-horizontal gradient
    if (ax <= kTanPi8 * ay) return {0, 1};   // near-vertical gradient
    if (gx * gy > 0) return {1, 1};          // 45 deg diagonal
    return {1, -1};                          // 135 deg diagonal
}

}  // namespace

void validate(const CannyParams& params) {
    if (!(params.gaussian_sigma > 0.0)) {
        throw PreconditionError("canny: gaussian_sigma must be > 0");
    }
    if (params.kernel_radius < static_cast<int>(std::ceil(2.0 * params.gaussian_sigma))) {
        throw PreconditionError("canny: kernel_radius must be >= ceil(2*sigma)");
    }
    if (params.low_threshold < 0.0 || !(params.high_threshold > 0.0) ||
        !(params.low_threshold < params.high_threshold)) {
        throw PreconditionError("canny: thresholds must satisfy 0 <= low < high");
    }
}

GrayImage to_grayscale(const RgbImage& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.data.size() != img.pixel_count() * 3) {
        throw PreconditionError("rgb image data size does not match dimensions");
    }
    GrayImage out;
    out.width = img.width;
    out.height = img.height;
    out.data.resize(img.pixel_count());
    const std::uint8_t* p = img.data.data();
    for (std::size_t i = 0; i < out.data.size(); ++i, p += 3) {
        out.data[i] = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    }
    return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma, int radius) {
    if (!(sigma > 0.0)) throw PreconditionError("gaussian_blur: sigma must be > 0");
    if (radius < 1) throw PreconditionError("gaussian_blur: radius must be >= 1");
    require_gray(img);

    const std::vector<double> kernel = gaussian_kernel(sigma, radius);
    const int w = img.width;
    const int h = img.height;

    GrayImage tmp;
    tmp.width = w;
    tmp.height = h;
    tmp.data.resize(img.data.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -radius; d <= radius; ++d) {
                acc += kernel[d + radius] * img.at(clamp_coord(x + d, w), y);
            }
            tmp.at(x, y) = acc;
        }
    }

    GrayImage out;
    out.width = w;
    out.height = h;
    out.data.resize(img.data.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int d = -radius; d <= radius; ++d) {
                acc += kernel[d + radius] * tmp.at(x, clamp_coord(y + d, h));
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

GradientField sobel_gradient(const GrayImage& img) {
    require_gray(img, 3);
    static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
    static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};

    const int w = img.width;
    const int h = img.height;
    GradientField out;
    out.width = w;
    out.height = h;
    out.magnitude.resize(img.data.size());
    out.direction.resize(img.data.size());
    out.gx.resize(img.data.size());
    out.gy.resize(img.data.size());

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double gx = 0.0;
            double gy = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const double v = img.at(clamp_coord(x + dx, w), clamp_coord(y + dy, h));
                    gx += kx[dy + 1][dx + 1] * v;
                    gy += ky[dy + 1][dx + 1] * v;
                }
            }
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            out.gx[i] = gx;
            out.gy[i] = gy;
            out.magnitude[i] = std::sqrt(gx * gx + gy * gy);
            double dir = std::atan2(gy, gx);
            if (dir <= -std::numbers::pi) dir = std::numbers::pi;
            out.direction[i] = dir;
        }
    }
    return out;
}

GrayImage resize_bilinear(const GrayImage& img, int new_width, int new_height) {
    require_gray(img);
    if (new_width < 1 || new_height < 1) {
        throw PreconditionError("resize: target dimensions must be positive");
    }
    if (new_width == img.width && new_height == img.height) return img;

    GrayImage out;
    out.width = new_width;
    out.height = new_height;
    out.data.resize(static_cast<std::size_t>(new_width) * new_height);
    const double sx = static_cast<double>(img.width) / new_width;
    const double sy = static_cast<double>(img.height) / new_height;
    for (int y = 0; y < new_height; ++y) {
        const double fy = std::max(0.0, (y + 0.5) * sy - 0.5);
        const int y0 = clamp_coord(static_cast<int>(fy), img.height);
        const int y1 = clamp_coord(y0 + 1, img.height);
        const double wy = fy - y0;
        for (int x = 0; x < new_width; ++x) {
            const double fx = std::max(0.0, (x + 0.5) * sx - 0.5);
            const int x0 = clamp_coord(static_cast<int>(fx), img.width);
            const int x1 = clamp_coord(x0 + 1, img.width);
            const double wx = fx - x0;
            const double top = img.at(x0, y0) * (1.0 - wx) + img.at(x1, y0) * wx;
            const double bot = img.at(x0, y1) * (1.0 - wx) + img.at(x1, y1) * wx;
            out.at(x, y) = top * (1.0 - wy) + bot * wy;
        }
    }
    return out;
}

EdgeMap canny_edges(const GrayImage& img, const CannyParams& params) {
    validate(params);
    require_gray(img, 3);

    const GrayImage blurred = gaussian_blur(img, params.gaussian_sigma, params.kernel_radius);
    const GradientField grad = sobel_gradient(blurred);
    const int w = img.width;
    const int h = img.height;

    // Non-maximum suppression. The comparison is strict against the "before"
    // neighbor and non-strict against the "after" neighbor, which thins an
    // exactly tied ridge to a single pixel.
    std::vector<std::uint8_t> survives(grad.magnitude.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            const double m = grad.magnitude[i];
            if (m <= params.low_threshold) continue;
            const NmsOffset off = nms_offset(grad.gx[i], grad.gy[i]);
            const double before =
                grad.magnitude[static_cast<std::size_t>(clamp_coord(y - off.dy, h)) * w +
                               clamp_coord(x - off.dx, w)];
            const double after =
                grad.magnitude[static_cast<std::size_t>(clamp_coord(y + off.dy, h)) * w +
                               clamp_coord(x + off.dx, w)];
            if (m > before && m >= after) survives[i] = 1;
        }
    }

    // Hysteresis: strong pixels seed a flood fill over 8-connected weak pixels.
    EdgeMap out;
    out.width = w;
    out.height = h;
    out.mask.assign(grad.magnitude.size(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < survives.size(); ++i) {
        if (survives[i] && grad.magnitude[i] > params.high_threshold) {
            out.mask[i] = 1;
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(i % w);
        const int y = static_cast<int>(i / w);
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx;
                const int ny = y + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
                if (!out.mask[j] && survives[j]) {
                    out.mask[j] = 1;
                    stack.push_back(j);
                }
            }
        }
    }

    out.edge_count = std::count(out.mask.begin(), out.mask.end(), std::uint8_t{1});
    return out;
}

}  // namespace landmarker
