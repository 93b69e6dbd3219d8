#include "tonguetrace/overlay.hpp"

#include <vector>

namespace tonguetrace {

RgbImage overlay(const GrayImage& image, const Contour* truth, const Contour* predicted) {
    auto check = [&](const Contour* contour, const char* name) {
        if (!contour) return;
        for (const PixelPoint& p : contour->points)
            if (!image.in_bounds(p))
                throw std::out_of_range(std::string("overlay: ") + name + " contour point outside the image");
    };
    check(truth, "truth");
    check(predicted, "predicted");

    RgbImage out(image.width, image.height);
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x) {
            const std::uint8_t g = image(x, y);
            out.set(x, y, g, g, g);
        }

    std::vector<std::uint8_t> on_truth(image.pixels.size(), 0);
    if (truth)
        for (const PixelPoint& p : truth->points) {
            out.set(p.x, p.y, 0, 0, 255);
            on_truth[static_cast<std::size_t>(p.y) * image.width + p.x] = 1;
        }
    if (predicted)
        for (const PixelPoint& p : predicted->points) {
            const bool both = on_truth[static_cast<std::size_t>(p.y) * image.width + p.x] != 0;
            out.set(p.x, p.y, 255, 0, static_cast<std::uint8_t>(both ? 255 : 0));
        }
    return out;
}

} // namespace tonguetrace
