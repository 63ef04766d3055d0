#include <doctest.h>

#include <algorithm>

#include "error.hpp"
#include "oracles.hpp"
#include "synth.hpp"

using segreg::ErrorCode;
using segreg::GrayImage;
using segreg::Layout;
using segreg::SegError;
using segreg::SynthSpec;

namespace {

ErrorCode generate_code(const SynthSpec& spec) {
    try {
        segreg::generate(spec);
    } catch (const SegError& e) {
        return e.code();
    }
    FAIL("expected a SegError");
    return ErrorCode::Io;
}

segreg::BinaryEdgeMap particle_mask(const GrayImage& img, std::uint8_t level) {
    segreg::BinaryEdgeMap mask;
    mask.width = img.width;
    mask.height = img.height;
    mask.data.resize(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i)
        mask.data[i] = img.data[i] == level ? 1 : 0;
    return mask;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
    SynthSpec spec;
    spec.seed = 987654321;
    const GrayImage a = segreg::generate(spec);
    const GrayImage b = segreg::generate(spec);
    CHECK(a.data == b.data);

    spec.seed = 987654322;
    const GrayImage c = segreg::generate(spec);
    CHECK(a.data != c.data);
}

TEST_CASE("each layout is deterministic") {
    for (const Layout layout : {Layout::Uniform, Layout::Clustered, Layout::Separated}) {
        SynthSpec spec;
        spec.layout = layout;
        spec.seed = 5150;
        CHECK(segreg::generate(spec).data == segreg::generate(spec).data);
    }
}

TEST_CASE("a single particle draws one disk") {
    SynthSpec spec;
    spec.width = 64;
    spec.height = 64;
    spec.particle_count = 1;
    spec.radius_min = 5;
    spec.radius_max = 5;
    spec.seed = 3;

    const GrayImage img = segreg::generate(spec);
    const segreg::BinaryEdgeMap mask =
        particle_mask(img, std::uint8_t(spec.particle_level));
    const std::uint64_t area =
        std::count(mask.data.begin(), mask.data.end(), std::uint8_t(1));
    CHECK(area > 0);
    // A full radius-5 disk holds 81 pixels; clipping can only shrink it.
    CHECK(area <= 81);
    CHECK(oracle::count_components8(mask) == 1);
}

TEST_CASE("invalid specs are rejected with InvalidSpec") {
    SynthSpec spec;

    SUBCASE("radius_min above radius_max") {
        spec.radius_min = 9;
        spec.radius_max = 3;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
    }
    SUBCASE("zero particles") {
        spec.particle_count = 0;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
    }
    SUBCASE("empty image") {
        spec.width = 0;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
    }
    SUBCASE("particle too large for the image") {
        spec.width = 16;
        spec.height = 16;
        spec.radius_max = 8;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
    }
    SUBCASE("insufficient contrast") {
        spec.background_level = 128;
        spec.particle_level = 100;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
    }
    SUBCASE("clustered layout needs clusters and spread") {
        spec.layout = Layout::Clustered;
        spec.cluster_count = 0;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
        spec.cluster_count = 2;
        spec.cluster_spread = 0.0;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
    }
    SUBCASE("separated fraction must be interior") {
        spec.layout = Layout::Separated;
        spec.species_fraction = 0.0;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
        spec.species_fraction = 1.0;
        CHECK(generate_code(spec) == ErrorCode::InvalidSpec);
    }
}

TEST_CASE("separated layout puts the large species on the right") {
    SynthSpec spec;
    spec.layout = Layout::Separated;
    spec.width = 512;
    spec.height = 512;
    spec.particle_count = 100;
    spec.radius_min = 3;
    spec.radius_max = 9;
    spec.species_fraction = 0.5;
    spec.seed = 42;

    const GrayImage img = segreg::generate(spec);
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (img.at(x, y) != spec.particle_level) continue;
            (x < img.width / 2 ? left : right) += 1;
        }
    }
    CHECK(left > 0);
    CHECK(right > 0);
    // Same particle counts per side, radius 9 disks dwarf radius 3 disks.
    CHECK(right > 3 * left);
}

TEST_CASE("a tight single cluster stays inside a bounded box") {
    SynthSpec spec;
    spec.layout = Layout::Clustered;
    spec.width = 512;
    spec.height = 512;
    spec.particle_count = 50;
    spec.cluster_count = 1;
    spec.cluster_spread = 5.0;
    spec.seed = 7;

    const GrayImage img = segreg::generate(spec);
    int min_x = img.width;
    int max_x = -1;
    int min_y = img.height;
    int max_y = -1;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (img.at(x, y) != spec.particle_level) continue;
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    REQUIRE(max_x >= 0);
    // Centers sit within a few spreads of one anchor; radii add at most
    // radius_max per side.
    CHECK(max_x - min_x < 120);
    CHECK(max_y - min_y < 120);
}

TEST_CASE("background and particle levels are the only values") {
    SynthSpec spec;
    spec.seed = 31;
    const GrayImage img = segreg::generate(spec);
    for (const std::uint8_t v : img.data)
        CHECK((v == spec.background_level || v == spec.particle_level));
}
