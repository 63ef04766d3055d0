#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "error.hpp"
#include "oracles.hpp"
#include "segregation.hpp"

using segreg::BinaryEdgeMap;
using segreg::EdgeMap;
using segreg::ErrorCode;
using segreg::GridSpec;
using segreg::SegError;
using segreg::SegregationReport;
using segreg::SweepTable;

namespace {

using Vec = std::vector<std::uint64_t>;

Vec random_vector(std::mt19937& rng, std::size_t max_len, std::uint64_t max_entry) {
    Vec y(1 + rng() % max_len);
    std::uint64_t sum = 0;
    do {
        sum = 0;
        for (auto& v : y) {
            v = rng() % (max_entry + 1);
            sum += v;
        }
    } while (sum == 0);
    return y;
}

}  // namespace

TEST_CASE("gini_index boundary and spot values") {
    CHECK(segreg::gini_index(Vec{1, 1, 1, 1}) == 0.0);
    CHECK(segreg::gini_index(Vec{0, 0, 0, 7}) == 1.0);
    CHECK(segreg::gini_index(Vec{5}) == 0.0);
    CHECK(segreg::gini_index(Vec{1, 2, 3, 4}) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("gini_index error states") {
    CHECK_THROWS_AS(segreg::gini_index(Vec{}), SegError);
    try {
        segreg::gini_index(Vec{0, 0, 0});
        FAIL("expected NoEdges");
    } catch (const SegError& e) {
        CHECK(e.code() == ErrorCode::NoEdges);
    }
}

TEST_CASE("gini_index equals the mean-absolute-difference oracle") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec y = random_vector(rng, 12, 100);
        const double lib = segreg::gini_index(y);
        const double ref = oracle::gini(y);
        CAPTURE(trial);
        CHECK(std::fabs(lib - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
    }
}

TEST_CASE("gini_index is permutation invariant") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        Vec y = random_vector(rng, 16, 1000);
        const double base = segreg::gini_index(y);
        std::shuffle(y.begin(), y.end(), rng);
        CHECK(segreg::gini_index(y) == base);
    }
}

TEST_CASE("gini_index is scale invariant for integer factors") {
    std::mt19937 rng(78);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec y = random_vector(rng, 16, 1000);
        const double base = segreg::gini_index(y);
        for (std::uint64_t c = 2; c <= 10; ++c) {
            Vec scaled = y;
            for (auto& v : scaled) v *= c;
            CHECK(segreg::gini_index(scaled) == base);
        }
    }
}

TEST_CASE("gini_index stays within [0, 1]") {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec y = random_vector(rng, 20, 1u << 20);
        const double v = segreg::gini_index(y);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("transfers toward equality never raise the index") {
    std::mt19937 rng(80);
    int transfers = 0;
    while (transfers < 500) {
        Vec y = random_vector(rng, 12, 50);
        const std::size_t i = rng() % y.size();
        const std::size_t j = rng() % y.size();
        if (y[i] < y[j] + 2) continue;  // need a gap so the entries do not cross
        const double before = segreg::gini_index(y);
        y[i] -= 1;
        y[j] += 1;
        const double after = segreg::gini_index(y);
        CHECK(after <= before);
        ++transfers;
    }
}

TEST_CASE("evaluate composes the pipeline") {
    SUBCASE("constant image raises NoEdges") {
        const segreg::GrayImage img = segreg::make_gray(64, 64, 200);
        try {
            segreg::evaluate(img, GridSpec{4, 4}, segreg::DetectorParams{}, 0.5);
            FAIL("expected NoEdges");
        } catch (const SegError& e) {
            CHECK(e.code() == ErrorCode::NoEdges);
        }
    }

    SUBCASE("edges confined to one cell give index 1") {
        EdgeMap map;
        map.width = 8;
        map.height = 8;
        map.data.assign(64, 0.0f);
        // A short horizontal stroke inside the top-left 4x4 cell.
        map.data[std::size_t(1) * 8 + 1] = 1.0f;
        map.data[std::size_t(1) * 8 + 2] = 1.0f;
        const SegregationReport report = segreg::evaluate(map, GridSpec{2, 2}, 0.5);
        CHECK(report.index == 1.0);
        CHECK(report.total_edge_pixels == 2);
        CHECK(report.cell_lengths.y == std::vector<std::uint64_t>{2, 0, 0, 0});
    }

    SUBCASE("report totals match the cells") {
        std::mt19937 rng(90);
        EdgeMap map;
        map.width = 40;
        map.height = 40;
        map.data.resize(1600);
        for (auto& v : map.data) v = (rng() % 5) == 0 ? 1.0f : 0.0f;
        const SegregationReport report = segreg::evaluate(map, GridSpec{5, 5}, 0.5);
        const std::uint64_t sum = std::accumulate(report.cell_lengths.y.begin(),
                                                  report.cell_lengths.y.end(),
                                                  std::uint64_t{0});
        CHECK(report.total_edge_pixels == sum);
        CHECK(report.grid.rows == 5);
        CHECK(report.grid.cols == 5);
        CHECK(report.index >= 0.0);
        CHECK(report.index <= 1.0);
    }
}

TEST_CASE("sweep matches per-grid evaluation exactly") {
    std::mt19937 rng(91);
    EdgeMap map;
    map.width = 48;
    map.height = 36;
    map.data.resize(std::size_t(48) * 36);
    for (auto& v : map.data) v = (rng() % 6) == 0 ? 1.0f : 0.0f;

    const SweepTable table = segreg::sweep(map, 8, 8, 0.5);
    REQUIRE(table.max_rows == 8);
    REQUIRE(table.max_cols == 8);
    REQUIRE(table.values.size() == 64);

    for (int r = 1; r <= 8; ++r) {
        for (int c = 1; c <= 8; ++c) {
            const auto entry = table.at(r, c);
            REQUIRE(entry.has_value());
            const SegregationReport report = segreg::evaluate(map, GridSpec{r, c}, 0.5);
            CHECK(*entry == report.index);
        }
    }
    CHECK(*table.at(1, 1) == 0.0);
}

TEST_CASE("sweep marks empty grids instead of zeroing them") {
    EdgeMap map;
    map.width = 10;
    map.height = 10;
    map.data.assign(100, 0.0f);
    const SweepTable table = segreg::sweep(map, 3, 3, 0.5);
    for (const auto& entry : table.values) CHECK_FALSE(entry.has_value());
}

TEST_CASE("sweep validates its bounds") {
    EdgeMap map;
    map.width = 10;
    map.height = 10;
    map.data.assign(100, 1.0f);
    CHECK_THROWS_AS(segreg::sweep(map, 0, 3, 0.5), SegError);
    CHECK_THROWS_AS(segreg::sweep(map, 3, 0, 0.5), SegError);
}
