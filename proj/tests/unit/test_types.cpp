#include <doctest.h>

#include <cstring>

#include "tonguetrace/preprocess.hpp"
#include "tonguetrace/rng.hpp"
#include "tonguetrace/types.hpp"

using namespace tonguetrace;

TEST_CASE("get_pixel returns row-major elements and checks bounds") {
    const GrayImage img(2, 2, {10, 20, 30, 40});
    CHECK(img.at({0, 0}) == 10);
    CHECK(img.at({1, 1}) == 40);
    CHECK(img.at({1, 0}) == 20);
    CHECK_THROWS_AS(img.at({2, 0}), std::out_of_range);
    CHECK_THROWS_AS(img.at({0, -1}), std::out_of_range);
}

TEST_CASE("set then get round-trips for random in-bounds points") {
    GrayImage img(17, 9);
    ProbMap map(17, 9);
    SplitMix64 rng(42);
    for (int i = 0; i < 200; ++i) {
        const PixelPoint p{static_cast<int>(rng.next_below(17)), static_cast<int>(rng.next_below(9))};
        const auto v = static_cast<std::uint8_t>(rng.next_below(256));
        img.set(p, v);
        CHECK(img.at(p) == v);
        const double q = rng.next_double();
        map.set(p, q);
        CHECK(map.at(p) == q);
    }
}

TEST_CASE("grid constructors reject mismatched buffers and bad values") {
    CHECK_THROWS_AS(GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ProbMap(1, 2, std::vector<double>{0.5, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(ProbMap(1, 1, std::vector<double>{-0.1}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMask(1, 2, std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(GrayImage(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(WeightMap(2, 1, std::vector<double>{0.5, -1.0}), std::invalid_argument);
}

TEST_CASE("pixel spacing comes from FOV over acquisition resolution") {
    CHECK(pixel_spacing(ImageMeta{192.0, 136}) == doctest::Approx(1.4117647058823530).epsilon(1e-12));
    CHECK(pixel_spacing(ImageMeta{100.0, 100}) == 1.0);
    CHECK_THROWS_AS(pixel_spacing(ImageMeta{192.0, 0}), std::invalid_argument);
}

TEST_CASE("pixel spacing is bit-identical before and after cropping") {
    const ImageMeta meta{192.0, 136};
    const double before = meta.pixel_spacing_mm();
    GrayImage img(136, 136);
    const GrayImage cropped = crop(img, centered_crop(136, 136, 128, 128));
    CHECK(cropped.width == 128);
    const double after = meta.pixel_spacing_mm(); // the crop cannot touch acquisition geometry
    CHECK(std::memcmp(&before, &after, sizeof before) == 0);
}

TEST_CASE("contour invariants") {
    Contour ok{{{0, 0}, {1, 0}, {2, 1}}};
    CHECK_NOTHROW(ok.validate());

    Contour single{{{5, 5}}};
    CHECK_THROWS_AS(single.validate(), std::invalid_argument);

    Contour dup{{{0, 0}, {0, 0}, {1, 0}}};
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

    Contour closed{{{0, 0}, {1, 0}, {1, 1}, {0, 0}}};
    CHECK_THROWS_AS(closed.validate(), std::invalid_argument);
}

TEST_CASE("pixel point ordering is row-major") {
    CHECK((PixelPoint{5, 1} < PixelPoint{0, 2}));
    CHECK((PixelPoint{1, 3} < PixelPoint{2, 3}));
    CHECK_FALSE(PixelPoint{2, 3} < PixelPoint{2, 3});
    CHECK(sq_dist({0, 0}, {3, 4}) == 25);
}
