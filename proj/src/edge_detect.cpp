#include "edge_detect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "error.hpp"

namespace segreg {

namespace {

// One-dimensional Gaussian taps, normalized; radius covers 3 sigma.
std::vector<double> gaussian_kernel(double sigma) {
    const int radius = std::max(1, int(std::ceil(3.0 * sigma)));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-(double(i) * i) / (2.0 * sigma * sigma));
        k[i + radius] = w;
        sum += w;
    }
    for (double& w : k) w /= sum;
    return k;
}

// Separable convolution with edge-replication padding.
std::vector<double> gaussian_blur(const std::vector<double>& src, int w, int h,
                                  double sigma) {
    const std::vector<double> k = gaussian_kernel(sigma);
    const int radius = int(k.size() / 2);

    std::vector<double> tmp(src.size());
    for (int y = 0; y < h; ++y) {
        const double* row = src.data() + std::size_t(y) * w;
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * row[std::clamp(x + i, 0, w - 1)];
            tmp[std::size_t(y) * w + x] = acc;
        }
    }
    std::vector<double> out(src.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += k[i + radius] * tmp[std::size_t(std::clamp(y + i, 0, h - 1)) * w + x];
            out[std::size_t(y) * w + x] = acc;
        }
    }
    return out;
}

// Quantize the gradient direction to one of four sectors, returned as a
// step vector oriented toward positive x (positive y when vertical).
void gradient_sector(double gx, double gy, int* dx, int* dy) {
    const double ax = std::fabs(gx);
    const double ay = std::fabs(gy);
    // tan(22.5 deg), tan(67.5 deg)
    if (ay <= 0.41421356237309503 * ax) {
        *dx = 1;
        *dy = 0;
    } else if (ay >= 2.414213562373095 * ax) {
        *dx = 0;
        *dy = 1;
    } else if ((gx > 0) == (gy > 0)) {
        *dx = 1;
        *dy = 1;
    } else {
        *dx = 1;
        *dy = -1;
    }
}

}  // namespace

void validate(const DetectorParams& params) {
    if (!(params.gaussian_sigma > 0.0))
        raise(ErrorCode::InvalidArgument, "gaussian_sigma must be positive");
    if (!(params.low_threshold > 0.0 && params.low_threshold < 1.0))
        raise(ErrorCode::InvalidArgument, "low_threshold must be in (0,1)");
    if (!(params.high_threshold > 0.0 && params.high_threshold < 1.0))
        raise(ErrorCode::InvalidArgument, "high_threshold must be in (0,1)");
    if (!(params.low_threshold < params.high_threshold))
        raise(ErrorCode::InvalidArgument,
              "low_threshold must be below high_threshold");
}

EdgeMap detect_edges(const GrayImage& img, const DetectorParams& params) {
    validate(params);
    if (img.width < 1 || img.height < 1)
        raise(ErrorCode::EmptyImage, "cannot detect edges in an empty image");

    const int w = img.width;
    const int h = img.height;
    const std::size_t n = std::size_t(w) * h;

    EdgeMap out;
    out.width = w;
    out.height = h;
    out.data.assign(n, 0.0f);

    // The gradient carries no DC information. Working relative to the
    // minimum keeps images that differ only by a constant luminance shift
    // on the identical floating-point path.
    const std::uint8_t base = *std::min_element(img.data.begin(), img.data.end());
    std::vector<double> src(n);
    for (std::size_t i = 0; i < n; ++i) src[i] = double(img.data[i] - base);

    const std::vector<double> smooth = gaussian_blur(src, w, h, params.gaussian_sigma);

    auto sample = [&](int x, int y) {
        return smooth[std::size_t(std::clamp(y, 0, h - 1)) * w + std::clamp(x, 0, w - 1)];
    };

    std::vector<double> gx(n), gy(n), mag(n);
    double max_mag = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double tl = sample(x - 1, y - 1), tc = sample(x, y - 1), tr = sample(x + 1, y - 1);
            const double ml = sample(x - 1, y), mr = sample(x + 1, y);
            const double bl = sample(x - 1, y + 1), bc = sample(x, y + 1), br = sample(x + 1, y + 1);
            const std::size_t p = std::size_t(y) * w + x;
            gx[p] = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            gy[p] = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            mag[p] = std::hypot(gx[p], gy[p]);
            max_mag = std::max(max_mag, mag[p]);
        }
    }
    if (max_mag == 0.0) return out;

    // Non-maximum suppression. Strict comparison toward +d so that on a
    // magnitude plateau exactly one of two equal neighbors survives.
    std::vector<std::uint8_t> keep(n, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t p = std::size_t(y) * w + x;
            if (mag[p] <= 0.0) continue;
            int dx = 0, dy = 0;
            gradient_sector(gx[p], gy[p], &dx, &dy);
            auto mag_at = [&](int xx, int yy) {
                if (xx < 0 || yy < 0 || xx >= w || yy >= h) return 0.0;
                return mag[std::size_t(yy) * w + xx];
            };
            if (mag[p] > mag_at(x + dx, y + dy) && mag[p] >= mag_at(x - dx, y - dy))
                keep[p] = 1;
        }
    }

    // Double-threshold hysteresis over the suppressed magnitudes.
    const double t_low = params.low_threshold * max_mag;
    const double t_high = params.high_threshold * max_mag;
    std::vector<std::uint8_t> edge(n, 0);
    std::vector<std::size_t> stack;
    for (std::size_t p = 0; p < n; ++p) {
        if (keep[p] && mag[p] >= t_high) {
            edge[p] = 1;
            stack.push_back(p);
        }
    }
    while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        const int x = int(p % w);
        const int y = int(p / w);
        for (int oy = -1; oy <= 1; ++oy) {
            for (int ox = -1; ox <= 1; ++ox) {
                if (ox == 0 && oy == 0) continue;
                const int xx = x + ox, yy = y + oy;
                if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
                const std::size_t q = std::size_t(yy) * w + xx;
                if (!edge[q] && keep[q] && mag[q] >= t_low) {
                    edge[q] = 1;
                    stack.push_back(q);
                }
            }
        }
    }

    for (std::size_t p = 0; p < n; ++p)
        if (edge[p]) out.data[p] = 1.0f;
    return out;
}

EdgeMap import_edge_map(const std::string& path, int expected_width,
                        int expected_height) {
    GrayImage g = load_gray_png(path);
    if (g.width != expected_width || g.height != expected_height)
        raise(ErrorCode::DimensionMismatch,
              path + ": expected " + std::to_string(expected_width) + "x" +
                  std::to_string(expected_height) + ", got " +
                  std::to_string(g.width) + "x" + std::to_string(g.height));
    EdgeMap map;
    map.width = g.width;
    map.height = g.height;
    map.data.resize(g.data.size());
    for (std::size_t i = 0; i < g.data.size(); ++i)
        map.data[i] = float(g.data[i]) / 255.0f;
    return map;
}

void export_edge_map(const EdgeMap& map, const std::string& path) {
    if (map.width < 1 || map.height < 1)
        raise(ErrorCode::EmptyImage, "refusing to export an empty edge map");
    std::vector<std::uint8_t> bytes(map.data.size());
    for (std::size_t i = 0; i < map.data.size(); ++i) {
        long v = std::lround(double(map.data[i]) * 255.0);
        bytes[i] = std::uint8_t(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
    write_gray_png(map.width, map.height, bytes.data(), path);
}

}  // namespace segreg
