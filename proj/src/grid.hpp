#pragma once

#include <cstdint>
#include <vector>

#include "thinning.hpp"

namespace segreg {

struct GridSpec {
    int rows = 7;
    int cols = 7;
};

/// Per-cell edge lengths (foreground pixel counts), row-major over the
/// grid cells.
struct CellLengths {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint64_t> y;
};

struct CropExtent {
    int width = 0;
    int height = 0;
};

/// Largest top-left-anchored region divisible into rows x cols equal
/// cells: width' = cols*floor(width/cols), height' = rows*floor(height/rows).
CropExtent crop_to_grid(int width, int height, const GridSpec& grid);

/// Crop per crop_to_grid, partition into equal cells, count foreground
/// pixels per cell. The counts sum to the cropped region's foreground
/// total.
CellLengths split_and_measure(const BinaryEdgeMap& map, const GridSpec& grid);

}  // namespace segreg
