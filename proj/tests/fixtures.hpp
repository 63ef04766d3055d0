#pragma once

// Image-file fixtures encoded directly with libpng/libjpeg so the
// library's readers are tested against independently produced files.

#include <jpeglib.h>
#include <png.h>

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures {

/// Writes an RGB PNG from row-major r,g,b triples.
inline void write_rgb_png(const std::string& path, int width, int height,
                          const std::vector<std::uint8_t>& rgb) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = png_uint_32(width);
    image.height = png_uint_32(height);
    image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&image, path.c_str(), 0, rgb.data(), 0, nullptr))
        throw std::runtime_error(path + ": png write failed");
}

inline void write_solid_rgb_png(const std::string& path, int width, int height,
                                std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    std::vector<std::uint8_t> rgb(std::size_t(width) * height * 3);
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = r;
        rgb[i + 1] = g;
        rgb[i + 2] = b;
    }
    write_rgb_png(path, width, height, rgb);
}

/// Writes an RGB JPEG at the given quality from row-major r,g,b triples.
inline void write_rgb_jpeg(const std::string& path, int width, int height,
                           const std::vector<std::uint8_t>& rgb, int quality) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error(path + ": cannot open for writing");

    jpeg_compress_struct cinfo;
    jpeg_error_mgr jerr;
    cinfo.err = jpeg_std_error(&jerr);
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, fp);
    cinfo.image_width = JDIMENSION(width);
    cinfo.image_height = JDIMENSION(height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    std::vector<std::uint8_t> row(std::size_t(width) * 3);
    while (cinfo.next_scanline < cinfo.image_height) {
        std::memcpy(row.data(), rgb.data() + std::size_t(cinfo.next_scanline) * width * 3,
                    row.size());
        JSAMPROW rows[1] = {row.data()};
        jpeg_write_scanlines(&cinfo, rows, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
    std::fclose(fp);
}

inline void write_solid_rgb_jpeg(const std::string& path, int width, int height,
                                 std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    std::vector<std::uint8_t> rgb(std::size_t(width) * height * 3);
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = r;
        rgb[i + 1] = g;
        rgb[i + 2] = b;
    }
    write_rgb_jpeg(path, width, height, rgb, 100);
}

}  // namespace fixtures
