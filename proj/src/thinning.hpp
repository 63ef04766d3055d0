#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edge_detect.hpp"

namespace segreg {

/// Binary edge image; every value is exactly 0 or 1 (1 = edge pixel).
struct BinaryEdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int x, int y) const {
        return data[std::size_t(y) * width + x];
    }
};

/// pixel = 1 iff strength >= threshold; threshold must lie in (0,1).
BinaryEdgeMap binarize(const EdgeMap& map, double threshold);

/// Zhang-Suen thinning, iterated until a full pass removes no pixel.
/// Deletions flagged by each subiteration are applied in raster order with
/// the crossing-number condition re-checked against the live image, so the
/// 8-connected foreground component count is preserved (the simultaneous
/// form erases isolated 2x2 squares).
BinaryEdgeMap thin(const BinaryEdgeMap& map);

/// Write as 8-bit grayscale PNG, foreground = 255, background = 0.
void export_binary_map(const BinaryEdgeMap& map, const std::string& path);

}  // namespace segreg
