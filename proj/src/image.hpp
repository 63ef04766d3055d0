#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace segreg {

/// Single-channel 8-bit image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int x, int y) const {
        return data[std::size_t(y) * width + x];
    }
    std::uint8_t& at(int x, int y) {
        return data[std::size_t(y) * width + x];
    }
};

GrayImage make_gray(int width, int height, std::uint8_t fill = 0);

/// Rec. 601 luma of an RGB triple, rounded to the nearest integer.
/// Channels outside [0,255] are clamped first.
std::uint8_t to_grayscale(int r, int g, int b);

/// Decode a PNG or JPEG file to grayscale. Color PNG pixels go through
/// to_grayscale with the alpha plane dropped; JPEGs decode straight to
/// their luminance channel.
GrayImage load_image(const std::string& path);

/// Read an 8-bit grayscale PNG without color conversion (stored gray
/// values pass through exactly).
GrayImage load_gray_png(const std::string& path);

/// Write 8-bit single-channel PNG.
void write_gray_png(int width, int height, const std::uint8_t* data,
                    const std::string& path);
void write_gray_png(const GrayImage& img, const std::string& path);

}  // namespace segreg
