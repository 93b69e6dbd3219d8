#ifndef TONGUETRACE_PREPROCESS_HPP
#define TONGUETRACE_PREPROCESS_HPP

#include <array>

#include "tonguetrace/types.hpp"

namespace tonguetrace {

struct CropRect {
    int x0 = 0;
    int y0 = 0;
    int width = 1;
    int height = 1;
};

// Centered rectangle of the given extent, e.g. 136x136 -> 128x128 at (4,4).
CropRect centered_crop(int src_width, int src_height, int out_width, int out_height);

// Copies the rectangle; throws std::invalid_argument when it leaves the image.
GrayImage crop(const GrayImage& image, const CropRect& rect);

// 256-entry level mapping for classical histogram equalization:
//   map(v) = round((cdf(v) - cdf_min) / (N - cdf_min) * 255)
// where cdf(v) counts pixels <= v and cdf_min is the smallest nonzero cdf
// value. A constant image maps to itself (the formula is 0/0 there).
// The mapping is monotone non-decreasing.
std::array<std::uint8_t, 256> equalize_lut(const GrayImage& image);

GrayImage equalize(const GrayImage& image);

} // namespace tonguetrace

#endif
