#include "tonguetrace/preprocess.hpp"

#include <cmath>
#include <numeric>

namespace tonguetrace {

CropRect centered_crop(int src_width, int src_height, int out_width, int out_height) {
    if (out_width < 1 || out_height < 1 || out_width > src_width || out_height > src_height)
        throw std::invalid_argument("centered_crop: output extent must fit inside the source");
    return CropRect{(src_width - out_width) / 2, (src_height - out_height) / 2, out_width, out_height};
}

GrayImage crop(const GrayImage& image, const CropRect& rect) {
    if (rect.width < 1 || rect.height < 1 || rect.x0 < 0 || rect.y0 < 0 ||
        rect.x0 + rect.width > image.width || rect.y0 + rect.height > image.height)
        throw std::invalid_argument("crop: rectangle outside image bounds");
    std::vector<std::uint8_t> out(static_cast<std::size_t>(rect.width) * rect.height);
    for (int j = 0; j < rect.height; ++j) {
        const std::uint8_t* src = image.pixels.data() + static_cast<std::size_t>(rect.y0 + j) * image.width + rect.x0;
        std::copy(src, src + rect.width, out.begin() + static_cast<std::size_t>(j) * rect.width);
    }
    return GrayImage(rect.width, rect.height, std::move(out));
}

std::array<std::uint8_t, 256> equalize_lut(const GrayImage& image) {
    std::array<std::size_t, 256> hist{};
    for (std::uint8_t v : image.pixels) ++hist[v];

    std::array<std::size_t, 256> cdf{};
    std::partial_sum(hist.begin(), hist.end(), cdf.begin());

    std::size_t cdf_min = 0;
    for (std::size_t c : cdf)
        if (c > 0) { cdf_min = c; break; }

    const std::size_t n = image.pixels.size();
    std::array<std::uint8_t, 256> lut{};
    if (n == cdf_min) {
        // Constant image: defined passthrough.
        for (int v = 0; v < 256; ++v) lut[v] = static_cast<std::uint8_t>(v);
        return lut;
    }
    for (int v = 0; v < 256; ++v) {
        const double num = cdf[v] > cdf_min ? static_cast<double>(cdf[v] - cdf_min) : 0.0;
        const double mapped = std::round(num / static_cast<double>(n - cdf_min) * 255.0);
        lut[v] = static_cast<std::uint8_t>(mapped);
    }
    return lut;
}

GrayImage equalize(const GrayImage& image) {
    const auto lut = equalize_lut(image);
    std::vector<std::uint8_t> out(image.pixels.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = lut[image.pixels[i]];
    return GrayImage(image.width, image.height, std::move(out));
}

} // namespace tonguetrace
