#include "segregation.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"
#include "thinning.hpp"

namespace segreg {

double gini_index(std::span<const std::uint64_t> y) {
    if (y.empty())
        raise(ErrorCode::InvalidArgument, "cell-length vector is empty");

    unsigned __int128 total = 0;
    for (const std::uint64_t v : y) total += v;
    if (total == 0)
        raise(ErrorCode::NoEdges,
              "all cell edge lengths are zero; the index is undefined");

    const std::size_t n = y.size();
    if (n == 1) return 0.0;

    std::vector<std::uint64_t> sorted(y.begin(), y.end());
    std::sort(sorted.begin(), sorted.end());

    // rank weight (n+1-i) for the i-th smallest entry, i = 1..n
    unsigned __int128 weighted = 0;
    for (std::size_t i = 0; i < n; ++i)
        weighted += (unsigned __int128)(n - i) * sorted[i];

    const unsigned __int128 num = (unsigned __int128)(n + 1) * total - 2 * weighted;
    const unsigned __int128 den = (unsigned __int128)(n - 1) * total;
    return double(num) / double(den);
}

double gini_index(const CellLengths& cells) {
    return gini_index(std::span<const std::uint64_t>(cells.y));
}

namespace {

std::uint64_t sum_lengths(const CellLengths& cells) {
    return std::accumulate(cells.y.begin(), cells.y.end(), std::uint64_t(0));
}

}  // namespace

SegregationReport evaluate(const EdgeMap& edges, const GridSpec& grid,
                           double binarize_threshold) {
    const BinaryEdgeMap thinned = thin(binarize(edges, binarize_threshold));
    CellLengths cells = split_and_measure(thinned, grid);
    const std::uint64_t total = sum_lengths(cells);
    if (total == 0)
        raise(ErrorCode::NoEdges,
              "no edge pixels survive thinning within the grid region");
    SegregationReport report;
    report.grid = grid;
    report.index = gini_index(cells);
    report.cell_lengths = std::move(cells);
    report.total_edge_pixels = total;
    return report;
}

SegregationReport evaluate(const GrayImage& img, const GridSpec& grid,
                           const DetectorParams& params, double binarize_threshold) {
    return evaluate(detect_edges(img, params), grid, binarize_threshold);
}

SweepTable sweep(const EdgeMap& edges, int max_rows, int max_cols,
                 double binarize_threshold) {
    if (max_rows < 1 || max_cols < 1)
        raise(ErrorCode::InvalidArgument, "sweep bounds must be at least 1");
    // One shared detection product for every grid.
    const BinaryEdgeMap thinned = thin(binarize(edges, binarize_threshold));

    SweepTable table;
    table.max_rows = max_rows;
    table.max_cols = max_cols;
    table.values.assign(std::size_t(max_rows) * max_cols, std::nullopt);
    for (int r = 1; r <= max_rows; ++r) {
        for (int c = 1; c <= max_cols; ++c) {
            const CellLengths cells = split_and_measure(thinned, GridSpec{r, c});
            if (sum_lengths(cells) == 0) continue;  // stays marked, not zeroed
            table.values[std::size_t(r - 1) * max_cols + (c - 1)] = gini_index(cells);
        }
    }
    return table;
}

SweepTable sweep(const GrayImage& img, int max_rows, int max_cols,
                 const DetectorParams& params, double binarize_threshold) {
    return sweep(detect_edges(img, params), max_rows, max_cols, binarize_threshold);
}

}  // namespace segreg
