#include <doctest.h>

#include <functional>
#include <random>

#include "error.hpp"
#include "fixtures.hpp"
#include "image.hpp"
#include "testutil.hpp"

using segreg::ErrorCode;
using segreg::SegError;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const SegError& e) {
        return e.code();
    }
    FAIL("expected a SegError");
    return ErrorCode::Io;
}

}  // namespace

TEST_CASE("to_grayscale matches the luma weights") {
    CHECK(segreg::to_grayscale(0, 0, 0) == 0);
    CHECK(segreg::to_grayscale(255, 255, 255) == 255);
    CHECK(segreg::to_grayscale(255, 0, 0) == 76);
    CHECK(segreg::to_grayscale(0, 255, 0) == 150);
    CHECK(segreg::to_grayscale(0, 0, 255) == 29);
    CHECK(segreg::to_grayscale(128, 128, 128) == 128);
}

TEST_CASE("to_grayscale is monotone in each channel") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> channel(0, 254);
    for (int trial = 0; trial < 500; ++trial) {
        const int r = channel(rng);
        const int g = channel(rng);
        const int b = channel(rng);
        const int base = segreg::to_grayscale(r, g, b);
        CHECK(segreg::to_grayscale(r + 1, g, b) >= base);
        CHECK(segreg::to_grayscale(r, g + 1, b) >= base);
        CHECK(segreg::to_grayscale(r, g, b + 1) >= base);
    }
}

TEST_CASE("make_gray rejects empty dimensions") {
    CHECK(code_of([] { segreg::make_gray(0, 5); }) == ErrorCode::EmptyImage);
    CHECK(code_of([] { segreg::make_gray(5, 0); }) == ErrorCode::EmptyImage);
}

TEST_CASE("white RGB PNG loads as all 255") {
    testutil::TempDir dir;
    const std::string path = dir.file("white.png");
    fixtures::write_solid_rgb_png(path, 10, 10, 255, 255, 255);

    const segreg::GrayImage img = segreg::load_image(path);
    REQUIRE(img.width == 10);
    REQUIRE(img.height == 10);
    for (const std::uint8_t v : img.data) CHECK(v == 255);
}

TEST_CASE("1x1 black PNG loads as 0") {
    testutil::TempDir dir;
    const std::string path = dir.file("black.png");
    fixtures::write_solid_rgb_png(path, 1, 1, 0, 0, 0);

    const segreg::GrayImage img = segreg::load_image(path);
    REQUIRE(img.width == 1);
    REQUIRE(img.height == 1);
    CHECK(img.data[0] == 0);
}

TEST_CASE("solid red JPEG loads as the red luma everywhere") {
    testutil::TempDir dir;
    const std::string path = dir.file("red.jpg");
    fixtures::write_solid_rgb_jpeg(path, 4, 3, 255, 0, 0);

    const segreg::GrayImage img = segreg::load_image(path);
    REQUIRE(img.width == 4);
    REQUIRE(img.height == 3);
    for (const std::uint8_t v : img.data) CHECK(int(v) == 76);
}

TEST_CASE("grayscale PNG round-trips stored values") {
    testutil::TempDir dir;
    const std::string path = dir.file("gray.png");
    segreg::GrayImage img = segreg::make_gray(13, 9);
    std::mt19937 rng(99);
    for (auto& v : img.data) v = std::uint8_t(rng() & 0xFF);
    segreg::write_gray_png(img, path);

    const segreg::GrayImage back = segreg::load_image(path);
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    CHECK(back.data == img.data);
}

TEST_CASE("load_image error modes carry the path") {
    testutil::TempDir dir;

    SUBCASE("missing file") {
        try {
            segreg::load_image(dir.file("absent.png"));
            FAIL("expected FileNotFound");
        } catch (const SegError& e) {
            CHECK(e.code() == ErrorCode::FileNotFound);
            CHECK(std::string(e.what()).find("absent.png") != std::string::npos);
        }
    }

    SUBCASE("unsupported format") {
        const std::string path = dir.file("notes.txt");
        testutil::write_file(path, "plain text, not an image\n");
        CHECK(code_of([&] { segreg::load_image(path); }) ==
              ErrorCode::UnsupportedFormat);
    }

    SUBCASE("corrupt PNG") {
        const std::string path = dir.file("broken.png");
        testutil::write_file(path, std::string("\x89PNG\r\n\x1a\n", 8) + "garbage");
        CHECK(code_of([&] { segreg::load_image(path); }) == ErrorCode::CorruptImage);
    }

    SUBCASE("corrupt JPEG") {
        const std::string path = dir.file("broken.jpg");
        testutil::write_file(path, std::string("\xFF\xD8\xFF\xE0", 4) + "garbage");
        CHECK(code_of([&] { segreg::load_image(path); }) == ErrorCode::CorruptImage);
    }
}

TEST_CASE("alpha channel is dropped, not composited") {
    // A half-transparent gray pixel must load as its own gray value.
    testutil::TempDir dir;
    const std::string path = dir.file("alpha.png");
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = 2;
    image.height = 1;
    image.format = PNG_FORMAT_RGBA;
    const std::uint8_t rgba[8] = {100, 100, 100, 128, 200, 200, 200, 0};
    REQUIRE(png_image_write_to_file(&image, path.c_str(), 0, rgba, 0, nullptr));

    const segreg::GrayImage img = segreg::load_image(path);
    CHECK(img.data[0] == 100);
    CHECK(img.data[1] == 200);
}
