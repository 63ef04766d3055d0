#pragma once

#include <string>
#include <vector>

#include "image.hpp"

namespace segreg {

/// Edge-strength map in [0,1] with the dimensions of its source image.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    float at(int x, int y) const {
        return data[std::size_t(y) * width + x];
    }
};

struct DetectorParams {
    double gaussian_sigma = 1.4;
    // fractions of the maximum gradient magnitude, 0 < low < high < 1
    double low_threshold = 0.1;
    double high_threshold = 0.3;
};

void validate(const DetectorParams& params);

/// Gradient edge detector: Gaussian smoothing, Sobel gradient magnitude,
/// non-maximum suppression along the gradient direction, double-threshold
/// hysteresis with 8-connected weak-to-strong linking. Every output value
/// is exactly 0.0 or 1.0.
EdgeMap detect_edges(const GrayImage& img, const DetectorParams& params);

/// Read an externally produced edge-probability map from an 8-bit
/// grayscale PNG; each stored value v maps to strength v/255.
EdgeMap import_edge_map(const std::string& path, int expected_width,
                        int expected_height);

/// Write an edge map as an 8-bit grayscale PNG, value = round(strength*255).
void export_edge_map(const EdgeMap& map, const std::string& path);

}  // namespace segreg
