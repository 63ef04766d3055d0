#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"

namespace segreg {

namespace {

/// Deterministic draws on top of mt19937_64. The distribution mappings
/// are spelled out here because std::uniform_int_distribution and
/// friends are not required to produce the same stream across standard
/// library implementations.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
        int v = lo + static_cast<int>(unit() * span);
        return std::min(v, hi);
    }

    /// Standard normal via Box-Muller; one value per call, the second
    /// is discarded to keep the stream layout simple.
    double gaussian() {
        double u1 = unit();
        while (u1 == 0.0) u1 = unit();
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
    }
};

void draw_disk(GrayImage& img, int cx, int cy, int r, std::uint8_t level) {
    const int x0 = std::max(0, cx - r);
    const int x1 = std::min(img.width - 1, cx + r);
    const int y0 = std::max(0, cy - r);
    const int y1 = std::min(img.height - 1, cy + r);
    const long rr = static_cast<long>(r) * r;
    for (int y = y0; y <= y1; ++y) {
        const long dy = y - cy;
        for (int x = x0; x <= x1; ++x) {
            const long dx = x - cx;
            if (dx * dx + dy * dy <= rr) img.at(x, y) = level;
        }
    }
}

struct Particle {
    int cx;
    int cy;
    int r;
};

std::vector<Particle> place_uniform(const SynthSpec& spec, Rng& rng) {
    std::vector<Particle> out;
    out.reserve(static_cast<std::size_t>(spec.particle_count));
    for (int i = 0; i < spec.particle_count; ++i) {
        const int r = rng.uniform_int(spec.radius_min, spec.radius_max);
        const int cx = rng.uniform_int(0, spec.width - 1);
        const int cy = rng.uniform_int(0, spec.height - 1);
        out.push_back({cx, cy, r});
    }
    return out;
}

std::vector<Particle> place_clustered(const SynthSpec& spec, Rng& rng) {
    struct Anchor {
        int x;
        int y;
    };
    std::vector<Anchor> anchors;
    anchors.reserve(static_cast<std::size_t>(spec.cluster_count));
    for (int k = 0; k < spec.cluster_count; ++k) {
        anchors.push_back({rng.uniform_int(0, spec.width - 1),
                           rng.uniform_int(0, spec.height - 1)});
    }

    std::vector<Particle> out;
    out.reserve(static_cast<std::size_t>(spec.particle_count));
    for (int i = 0; i < spec.particle_count; ++i) {
        const int r = rng.uniform_int(spec.radius_min, spec.radius_max);
        const Anchor& a = anchors[static_cast<std::size_t>(i % spec.cluster_count)];
        int cx = 0;
        int cy = 0;
        bool placed = false;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            cx = static_cast<int>(std::lround(a.x + rng.gaussian() * spec.cluster_spread));
            cy = static_cast<int>(std::lround(a.y + rng.gaussian() * spec.cluster_spread));
            if (cx >= 0 && cx < spec.width && cy >= 0 && cy < spec.height) {
                placed = true;
                break;
            }
        }
        if (!placed) {
            cx = std::clamp(cx, 0, spec.width - 1);
            cy = std::clamp(cy, 0, spec.height - 1);
        }
        out.push_back({cx, cy, r});
    }
    return out;
}

std::vector<Particle> place_separated(const SynthSpec& spec, Rng& rng) {
    const long small_raw = std::lround(spec.species_fraction * spec.particle_count);
    const int small_count = static_cast<int>(
        std::clamp(small_raw, 1L, static_cast<long>(spec.particle_count - 1)));
    const int half = spec.width / 2;

    std::vector<Particle> out;
    out.reserve(static_cast<std::size_t>(spec.particle_count));
    for (int i = 0; i < spec.particle_count; ++i) {
        const bool small = i < small_count;
        const int r = small ? spec.radius_min : spec.radius_max;
        const int cx = small ? rng.uniform_int(0, half - 1)
                             : rng.uniform_int(half, spec.width - 1);
        const int cy = rng.uniform_int(0, spec.height - 1);
        out.push_back({cx, cy, r});
    }
    return out;
}

}  // namespace

void validate(const SynthSpec& spec) {
    if (spec.width < 1 || spec.height < 1)
        raise(ErrorCode::InvalidSpec, "image dimensions must be at least 1x1");
    if (spec.particle_count < 1)
        raise(ErrorCode::InvalidSpec, "particle_count must be at least 1");
    if (spec.radius_min < 1)
        raise(ErrorCode::InvalidSpec, "radius_min must be at least 1");
    if (spec.radius_max < spec.radius_min)
        raise(ErrorCode::InvalidSpec, "radius_max must be at least radius_min");
    if (2 * spec.radius_max >= std::min(spec.width, spec.height))
        raise(ErrorCode::InvalidSpec,
              "particle diameter must be smaller than the image's short side");
    if (spec.background_level < 0 || spec.background_level > 255 ||
        spec.particle_level < 0 || spec.particle_level > 255)
        raise(ErrorCode::InvalidSpec, "pixel levels must be in [0, 255]");
    if (std::abs(spec.background_level - spec.particle_level) < 64)
        raise(ErrorCode::InvalidSpec,
              "background and particle levels must differ by at least 64");
    if (spec.layout == Layout::Clustered) {
        if (spec.cluster_count < 1)
            raise(ErrorCode::InvalidSpec, "cluster_count must be at least 1");
        if (!(spec.cluster_spread > 0.0))
            raise(ErrorCode::InvalidSpec, "cluster_spread must be positive");
    }
    if (spec.layout == Layout::Separated) {
        if (spec.particle_count < 2)
            raise(ErrorCode::InvalidSpec,
                  "separated layout needs at least 2 particles");
        if (!(spec.species_fraction > 0.0 && spec.species_fraction < 1.0))
            raise(ErrorCode::InvalidSpec,
                  "species_fraction must be strictly between 0 and 1");
    }
}

GrayImage generate(const SynthSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);

    std::vector<Particle> particles;
    switch (spec.layout) {
        case Layout::Uniform:
            particles = place_uniform(spec, rng);
            break;
        case Layout::Clustered:
            particles = place_clustered(spec, rng);
            break;
        case Layout::Separated:
            particles = place_separated(spec, rng);
            break;
    }

    GrayImage img = make_gray(spec.width, spec.height,
                              static_cast<std::uint8_t>(spec.background_level));
    const auto level = static_cast<std::uint8_t>(spec.particle_level);
    for (const Particle& p : particles) draw_disk(img, p.cx, p.cy, p.r, level);
    return img;
}

}  // namespace segreg
