#include <doctest.h>

#include "tonguetrace/preprocess.hpp"
#include "tonguetrace/rng.hpp"

using namespace tonguetrace;

namespace {
GrayImage ramp(int w, int h) {
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            pixels[static_cast<std::size_t>(y) * w + x] = static_cast<std::uint8_t>((y * w + x) % 256);
    return GrayImage(w, h, std::move(pixels));
}
} // namespace

TEST_CASE("crop copies the rectangle verbatim") {
    const GrayImage img = ramp(4, 4);
    const GrayImage out = crop(img, {1, 1, 2, 2});
    CHECK(out.width == 2);
    CHECK(out.height == 2);
    CHECK((out.pixels == std::vector<std::uint8_t>{5, 6, 9, 10}));

    CHECK_THROWS_AS(crop(img, {130, 0, 10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(crop(img, {0, 0, 5, 2}), std::invalid_argument);
    CHECK_THROWS_AS(crop(img, {0, 0, 0, 2}), std::invalid_argument);
}

TEST_CASE("centered crop of 136 to 128 anchors at (4,4)") {
    const CropRect rect = centered_crop(136, 136, 128, 128);
    CHECK(rect.x0 == 4);
    CHECK(rect.y0 == 4);
    CHECK(rect.width == 128);
    CHECK(rect.height == 128);
}

TEST_CASE("crop composed with crop equals crop of the composed rectangle") {
    const GrayImage img = ramp(16, 16);
    const GrayImage two_step = crop(crop(img, {2, 3, 10, 9}), {1, 2, 5, 4});
    const GrayImage one_step = crop(img, {3, 5, 5, 4});
    CHECK(two_step == one_step);
}

TEST_CASE("equalize maps the documented examples") {
    const GrayImage constant(3, 3, 77);
    CHECK(equalize(constant) == constant);

    const GrayImage two(2, 1, {10, 200});
    CHECK((equalize(two).pixels == std::vector<std::uint8_t>{0, 255}));
}

TEST_CASE("equalize is the identity on a uniform full-range histogram") {
    std::vector<std::uint8_t> pixels(256);
    for (int i = 0; i < 256; ++i) pixels[i] = static_cast<std::uint8_t>(i);
    const GrayImage img(16, 16, pixels);
    CHECK(equalize(img) == img);
}

TEST_CASE("equalization lut is monotone for random images") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> pixels(64);
        for (auto& p : pixels) p = static_cast<std::uint8_t>(rng.next_below(256));
        const auto lut = equalize_lut(GrayImage(8, 8, pixels));
        for (int v = 1; v < 256; ++v) CHECK(lut[v - 1] <= lut[v]);
    }
}

TEST_CASE("equalization is idempotent within one level") {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::uint8_t> pixels(32 * 32);
        for (auto& p : pixels) p = static_cast<std::uint8_t>(rng.next_below(trial % 2 ? 256 : 40));
        const GrayImage once = equalize(GrayImage(32, 32, pixels));
        const GrayImage twice = equalize(once);
        for (std::size_t i = 0; i < pixels.size(); ++i) {
            const int drift = std::abs(static_cast<int>(once.pixels[i]) - static_cast<int>(twice.pixels[i]));
            CHECK(drift <= 1);
        }
    }
}
