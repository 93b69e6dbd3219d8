#ifndef TONGUETRACE_RASTERIZE_HPP
#define TONGUETRACE_RASTERIZE_HPP

#include "tonguetrace/types.hpp"

namespace tonguetrace {

// Class weights for the unbalanced contour/non-contour pixel populations.
struct LossWeights {
    double w_contour = 0.8;
    double w_background = 0.2;
};

// All-octant integer Bresenham chain from a to b, endpoints included.
std::vector<PixelPoint> bresenham(PixelPoint a, PixelPoint b);

// 1-pixel-wide binary mask of the polyline; segments drawn with Bresenham,
// so the set of 1-pixels is 8-connected. Out-of-bounds points throw
// std::out_of_range.
BinaryMask rasterize_contour(const Contour& contour, int width, int height);

// w_contour where the label is 1, w_background where it is 0.
WeightMap weight_map(const BinaryMask& mask, const LossWeights& weights = {});

// Mean over all pixels of w(y) * (-y*ln(p) - (1-y)*ln(1-p)) with p clamped
// to [1e-7, 1 - 1e-7]. Dimension mismatch throws std::invalid_argument.
double weighted_bce(const ProbMap& prob, const BinaryMask& mask, const LossWeights& weights = {});

} // namespace tonguetrace

#endif
