#pragma once

#include <cstdint>

#include "image.hpp"

namespace segreg {

enum class Layout { Uniform, Clustered, Separated };

/// Recipe for a synthetic particle image: filled disks on a flat
/// background, fully determined by the seed.
struct SynthSpec {
    int width = 512;
    int height = 512;
    int particle_count = 100;
    int radius_min = 4;
    int radius_max = 8;
    Layout layout = Layout::Uniform;
    int cluster_count = 1;         // Clustered
    double cluster_spread = 15.0;  // Clustered: std dev around each anchor
    double species_fraction = 0.5; // Separated: share of small-radius particles
    std::uint64_t seed = 0;
    int background_level = 220;
    int particle_level = 70;
};

/// Throws InvalidSpec naming the violated constraint.
void validate(const SynthSpec& spec);

/// Uniform: centers i.i.d. over the image. Clustered: centers Gaussian
/// around round-robin anchor points, resampled while outside the image.
/// Separated: radius_min particles on the left half, radius_max on the
/// right. Disks are drawn in generation order, later over earlier.
GrayImage generate(const SynthSpec& spec);

}  // namespace segreg
