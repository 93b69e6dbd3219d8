#include <doctest.h>

#include <array>

#include "tonguetrace/overlay.hpp"
#include "tonguetrace/pgm.hpp"

using namespace tonguetrace;

namespace {
std::array<std::uint8_t, 3> px(const RgbImage& img, int x, int y) {
    const std::size_t i = (static_cast<std::size_t>(y) * img.width + x) * 3;
    return {img.pixels[i], img.pixels[i + 1], img.pixels[i + 2]};
}
} // namespace

TEST_CASE("overlay paints prediction red and truth blue") {
    const GrayImage image(4, 4, 100);
    const Contour pred{{{0, 0}, {1, 0}}};
    const RgbImage only_pred = overlay(image, nullptr, &pred);
    CHECK((px(only_pred, 0, 0) == std::array<std::uint8_t, 3>{255, 0, 0}));
    CHECK((px(only_pred, 1, 0) == std::array<std::uint8_t, 3>{255, 0, 0}));
    CHECK((px(only_pred, 2, 2) == std::array<std::uint8_t, 3>{100, 100, 100}));

    const Contour truth{{{2, 2}, {3, 2}}};
    const RgbImage both = overlay(image, &truth, &pred);
    CHECK((px(both, 2, 2) == std::array<std::uint8_t, 3>{0, 0, 255}));
}

TEST_CASE("coinciding contours render purple") {
    const GrayImage image(4, 4, 10);
    const Contour c{{{1, 1}, {2, 1}, {3, 2}}};
    const RgbImage out = overlay(image, &c, &c);
    for (const PixelPoint& p : c.points)
        CHECK((px(out, p.x, p.y) == std::array<std::uint8_t, 3>{255, 0, 255}));
}

TEST_CASE("disjoint contours account for every painted pixel") {
    const GrayImage image(8, 8, 0);
    const Contour truth{{{0, 0}, {3, 0}}};
    const Contour pred{{{0, 5}, {3, 5}}};
    const RgbImage out = overlay(image, &truth, &pred);
    int red = 0, blue = 0, purple = 0;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            const auto c = px(out, x, y);
            if (c == std::array<std::uint8_t, 3>{255, 0, 0}) ++red;
            if (c == std::array<std::uint8_t, 3>{0, 0, 255}) ++blue;
            if (c == std::array<std::uint8_t, 3>{255, 0, 255}) ++purple;
        }
    CHECK(purple == 0);
    CHECK(red + blue == static_cast<int>(truth.points.size() + pred.points.size()));
}

TEST_CASE("overlay never changes non-contour luminance") {
    GrayImage image(6, 6);
    for (int i = 0; i < 36; ++i) image.pixels[i] = static_cast<std::uint8_t>(i * 7);
    const Contour pred{{{1, 1}, {2, 2}}};
    const RgbImage out = overlay(image, nullptr, &pred);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 6; ++x) {
            if ((x == 1 && y == 1) || (x == 2 && y == 2)) continue;
            const auto c = px(out, x, y);
            CHECK((c == std::array<std::uint8_t, 3>{image(x, y), image(x, y), image(x, y)}));
        }
}

TEST_CASE("overlay rejects out-of-bounds contours") {
    const GrayImage image(4, 4, 0);
    const Contour bad{{{0, 0}, {4, 0}}};
    CHECK_THROWS_AS(overlay(image, nullptr, &bad), std::out_of_range);
}
