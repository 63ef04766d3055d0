#include "grid.hpp"

#include <string>

#include "error.hpp"

namespace segreg {

CropExtent crop_to_grid(int width, int height, const GridSpec& grid) {
    if (grid.rows < 1 || grid.cols < 1)
        raise(ErrorCode::InvalidArgument, "grid must have at least 1 row and 1 column");
    if (width < grid.cols || height < grid.rows)
        raise(ErrorCode::GridTooFine,
              "grid " + std::to_string(grid.rows) + "x" + std::to_string(grid.cols) +
                  " does not fit a " + std::to_string(width) + "x" +
                  std::to_string(height) + " image");
    return {grid.cols * (width / grid.cols), grid.rows * (height / grid.rows)};
}

CellLengths split_and_measure(const BinaryEdgeMap& map, const GridSpec& grid) {
    if (map.width < 1 || map.height < 1)
        raise(ErrorCode::EmptyImage, "cannot measure an empty map");
    const CropExtent crop = crop_to_grid(map.width, map.height, grid);
    const int cell_w = crop.width / grid.cols;
    const int cell_h = crop.height / grid.rows;

    CellLengths cells;
    cells.rows = grid.rows;
    cells.cols = grid.cols;
    cells.y.assign(std::size_t(grid.rows) * grid.cols, 0);
    for (int y = 0; y < crop.height; ++y) {
        const int cell_row = y / cell_h;
        for (int x = 0; x < crop.width; ++x) {
            if (map.at(x, y))
                ++cells.y[std::size_t(cell_row) * grid.cols + x / cell_w];
        }
    }
    return cells;
}

}  // namespace segreg
