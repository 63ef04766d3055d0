#include "image.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>

#include "error.hpp"

#include <jpeglib.h>

namespace segreg {

namespace {

enum class FileKind { Png, Jpeg, Other };

FileKind sniff_file(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) raise(ErrorCode::Io, path + ": cannot open for reading");
    unsigned char magic[4] = {0, 0, 0, 0};
    std::size_t got = std::fread(magic, 1, sizeof magic, fp);
    std::fclose(fp);
    if (got >= 4 && magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' &&
        magic[3] == 'G')
        return FileKind::Png;
    if (got >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF)
        return FileKind::Jpeg;
    return FileKind::Other;
}

void require_exists(const std::string& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) ||
        std::filesystem::is_directory(path, ec))
        raise(ErrorCode::FileNotFound, path + ": no such file");
}

GrayImage load_png_color(const std::string& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        raise(ErrorCode::CorruptImage, path + ": " + image.message);
    image.format = PNG_FORMAT_RGBA;
    std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr))
        raise(ErrorCode::CorruptImage, path + ": " + image.message);

    GrayImage img = make_gray(int(image.width), int(image.height));
    const std::size_t n = img.data.size();
    for (std::size_t i = 0; i < n; ++i)
        img.data[i] = to_grayscale(rgba[4 * i], rgba[4 * i + 1], rgba[4 * i + 2]);
    return img;
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf unwind;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit_hook(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->unwind, 1);
}

GrayImage load_jpeg_gray(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) raise(ErrorCode::Io, path + ": cannot open for reading");

    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    std::memset(&cinfo, 0, sizeof cinfo);
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit_hook;
    jerr.message[0] = '\0';

    // libjpeg reports errors with longjmp; only plain buffers may live
    // across it.
    unsigned char* volatile pixels = nullptr;
    if (setjmp(jerr.unwind)) {
        std::string msg = jerr.message;
        jpeg_destroy_decompress(&cinfo);
        std::fclose(fp);
        std::free(pixels);
        raise(ErrorCode::CorruptImage, path + ": " + msg);
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, fp);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_GRAYSCALE;
    jpeg_start_decompress(&cinfo);

    const int w = int(cinfo.output_width);
    const int h = int(cinfo.output_height);
    pixels = static_cast<unsigned char*>(std::malloc(std::size_t(w) * h));
    if (!pixels) {
        jpeg_destroy_decompress(&cinfo);
        std::fclose(fp);
        throw std::bad_alloc();
    }
    while (cinfo.output_scanline < cinfo.output_height) {
        unsigned char* row = pixels + std::size_t(cinfo.output_scanline) * w;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    std::fclose(fp);

    GrayImage img = make_gray(w, h);
    std::memcpy(img.data.data(), pixels, img.data.size());
    std::free(pixels);
    return img;
}

}  // namespace

GrayImage make_gray(int width, int height, std::uint8_t fill) {
    if (width < 1 || height < 1)
        raise(ErrorCode::EmptyImage, "image dimensions must be at least 1x1");
    GrayImage img;
    img.width = width;
    img.height = height;
    img.data.assign(std::size_t(width) * height, fill);
    return img;
}

std::uint8_t to_grayscale(int r, int g, int b) {
    auto clamp8 = [](int v) { return v < 0 ? 0 : (v > 255 ? 255 : v); };
    r = clamp8(r);
    g = clamp8(g);
    b = clamp8(b);
    long y = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
    return std::uint8_t(y < 0 ? 0 : (y > 255 ? 255 : y));
}

GrayImage load_image(const std::string& path) {
    require_exists(path);
    switch (sniff_file(path)) {
        case FileKind::Png:
            return load_png_color(path);
        case FileKind::Jpeg:
            return load_jpeg_gray(path);
        case FileKind::Other:
            break;
    }
    raise(ErrorCode::UnsupportedFormat, path + ": not a PNG or JPEG file");
}

GrayImage load_gray_png(const std::string& path) {
    require_exists(path);
    if (sniff_file(path) != FileKind::Png)
        raise(ErrorCode::UnsupportedFormat, path + ": not a PNG file");

    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        raise(ErrorCode::CorruptImage, path + ": " + image.message);
    image.format = PNG_FORMAT_GRAY;
    GrayImage img = make_gray(int(image.width), int(image.height));
    if (!png_image_finish_read(&image, nullptr, img.data.data(), 0, nullptr))
        raise(ErrorCode::CorruptImage, path + ": " + image.message);
    return img;
}

void write_gray_png(int width, int height, const std::uint8_t* data,
                    const std::string& path) {
    if (width < 1 || height < 1)
        raise(ErrorCode::EmptyImage, "refusing to write an empty image");
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = png_uint_32(width);
    image.height = png_uint_32(height);
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr))
        raise(ErrorCode::Io, path + ": " + image.message);
}

void write_gray_png(const GrayImage& img, const std::string& path) {
    write_gray_png(img.width, img.height, img.data.data(), path);
}

}  // namespace segreg
