#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edge_detect.hpp"
#include "grid.hpp"
#include "image.hpp"

namespace segreg {

struct SegregationReport {
    GridSpec grid;
    double index = 0.0;
    CellLengths cell_lengths;
    std::uint64_t total_edge_pixels = 0;
};

/// Index per grid (rows, cols), 1-based on both axes. Grids whose region
/// holds no edge pixels carry no value.
struct SweepTable {
    int max_rows = 0;
    int max_cols = 0;
    std::vector<std::optional<double>> values;

    std::optional<double> at(int rows, int cols) const {
        return values[std::size_t(rows - 1) * max_cols + (cols - 1)];
    }
};

/// Segregation index of a per-cell edge-length vector, built on the Gini
/// coefficient: sort y ascending, then
///   index = (n + 1 - 2 * sum((n+1-i) * y_i) / sum(y_i)) / (n - 1)
/// with i running 1..n. 0 when all entries are equal, 1 when exactly one
/// entry is nonzero; n = 1 yields 0 by definition. Both sums are carried
/// in exact integer arithmetic with a single final division, so the result
/// is independent of summation order.
///
/// Throws NoEdges when the entries sum to zero; the index is undefined
/// there and callers report that state distinctly, never as 0.
double gini_index(std::span<const std::uint64_t> y);
double gini_index(const CellLengths& cells);

/// Full pipeline on a grayscale image: detect edges, binarize, thin,
/// split into the grid, index.
SegregationReport evaluate(const GrayImage& img, const GridSpec& grid,
                           const DetectorParams& params, double binarize_threshold);

/// Same pipeline from an already-computed edge map (e.g. an imported one).
SegregationReport evaluate(const EdgeMap& edges, const GridSpec& grid,
                           double binarize_threshold);

/// Index over every grid (1..max_rows) x (1..max_cols). Detection,
/// binarization and thinning run once and are shared by all grids, so each
/// entry equals the corresponding single-grid evaluate() result.
SweepTable sweep(const GrayImage& img, int max_rows, int max_cols,
                 const DetectorParams& params, double binarize_threshold);
SweepTable sweep(const EdgeMap& edges, int max_rows, int max_cols,
                 double binarize_threshold);

}  // namespace segreg
