#include "tonguetrace/rasterize.hpp"

#include <cmath>
#include <cstdlib>

namespace tonguetrace {

std::vector<PixelPoint> bresenham(PixelPoint a, PixelPoint b) {
    std::vector<PixelPoint> chain;
    const int dx = std::abs(b.x - a.x);
    const int dy = -std::abs(b.y - a.y);
    const int sx = a.x < b.x ? 1 : -1;
    const int sy = a.y < b.y ? 1 : -1;
    int err = dx + dy;
    int x = a.x, y = a.y;
    chain.reserve(static_cast<std::size_t>(std::max(dx, -dy)) + 1);
    while (true) {
        chain.push_back({x, y});
        if (x == b.x && y == b.y) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
    }
    return chain;
}

BinaryMask rasterize_contour(const Contour& contour, int width, int height) {
    contour.validate();
    BinaryMask mask(width, height);
    for (const PixelPoint& p : contour.points)
        if (!mask.in_bounds(p))
            throw std::out_of_range("rasterize_contour: point (" + std::to_string(p.x) + "," +
                                    std::to_string(p.y) + ") outside " + std::to_string(width) + "x" +
                                    std::to_string(height));
    for (std::size_t i = 1; i < contour.points.size(); ++i)
        for (const PixelPoint& p : bresenham(contour.points[i - 1], contour.points[i]))
            mask.labels[static_cast<std::size_t>(p.y) * width + p.x] = 1;
    return mask;
}

WeightMap weight_map(const BinaryMask& mask, const LossWeights& weights) {
    if (weights.w_contour < 0.0 || weights.w_background < 0.0 ||
        (weights.w_contour == 0.0 && weights.w_background == 0.0))
        throw std::invalid_argument("weight_map: weights must be non-negative and not both zero");
    std::vector<double> out(mask.labels.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = mask.labels[i] ? weights.w_contour : weights.w_background;
    return WeightMap(mask.width, mask.height, std::move(out));
}

double weighted_bce(const ProbMap& prob, const BinaryMask& mask, const LossWeights& weights) {
    if (prob.width != mask.width || prob.height != mask.height)
        throw std::invalid_argument("weighted_bce: probability map and mask dimensions differ");
    constexpr double kEps = 1e-7;
    double sum = 0.0;
    for (std::size_t i = 0; i < prob.values.size(); ++i) {
        const double p = std::clamp(prob.values[i], kEps, 1.0 - kEps);
        if (mask.labels[i])
            sum += weights.w_contour * -std::log(p);
        else
            sum += weights.w_background * -std::log(1.0 - p);
    }
    return sum / static_cast<double>(prob.values.size());
}

} // namespace tonguetrace
