#ifndef TONGUETRACE_TYPES_HPP
#define TONGUETRACE_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tonguetrace {

// Grid coordinate convention: x = column (rightward), y = row (downward),
// origin at the top-left pixel. All buffers are row-major.
struct PixelPoint {
    int x = 0;
    int y = 0;

    friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// Row-major (scanline) order; this is the canonical total order used for
// deterministic tie-breaking throughout the extraction pipeline.
inline bool operator<(const PixelPoint& a, const PixelPoint& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

inline std::int64_t sq_dist(const PixelPoint& a, const PixelPoint& b) {
    const std::int64_t dx = a.x - b.x;
    const std::int64_t dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double dist(const PixelPoint& a, const PixelPoint& b) {
    return std::sqrt(static_cast<double>(sq_dist(a, b)));
}

namespace detail {

inline void check_dims(int width, int height, std::size_t buffer_size, const char* what) {
    if (width < 1 || height < 1)
        throw std::invalid_argument(std::string(what) + ": dimensions must be at least 1x1");
    if (buffer_size != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument(std::string(what) + ": buffer length does not match width*height");
}

[[noreturn]] inline void out_of_bounds(const PixelPoint& p, int width, int height, const char* what) {
    throw std::out_of_range(std::string(what) + ": point (" + std::to_string(p.x) + "," +
                            std::to_string(p.y) + ") outside " + std::to_string(width) + "x" +
                            std::to_string(height));
}

} // namespace detail

// 8-bit grayscale raster.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), pixels(checked_size(w, h, "GrayImage"), fill) {}
    GrayImage(int w, int h, std::vector<std::uint8_t> data) : width(w), height(h), pixels(std::move(data)) {
        detail::check_dims(w, h, pixels.size(), "GrayImage");
    }

    bool in_bounds(const PixelPoint& p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    }
    std::uint8_t at(const PixelPoint& p) const {
        if (!in_bounds(p)) detail::out_of_bounds(p, width, height, "GrayImage");
        return pixels[static_cast<std::size_t>(p.y) * width + p.x];
    }
    void set(const PixelPoint& p, std::uint8_t v) {
        if (!in_bounds(p)) detail::out_of_bounds(p, width, height, "GrayImage");
        pixels[static_cast<std::size_t>(p.y) * width + p.x] = v;
    }
    std::uint8_t operator()(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    static std::size_t checked_size(int w, int h, const char* what) {
        detail::check_dims(w, h, static_cast<std::size_t>(w > 0 ? w : 0) * (h > 0 ? h : 0), what);
        return static_cast<std::size_t>(w) * h;
    }
};

// Per-pixel contour probabilities in [0,1].
struct ProbMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    ProbMap() = default;
    ProbMap(int w, int h, double fill = 0.0) : width(w), height(h) {
        detail::check_dims(w, h, static_cast<std::size_t>(w > 0 ? w : 0) * (h > 0 ? h : 0), "ProbMap");
        values.assign(static_cast<std::size_t>(w) * h, fill);
        check_range(fill);
    }
    ProbMap(int w, int h, std::vector<double> data) : width(w), height(h), values(std::move(data)) {
        detail::check_dims(w, h, values.size(), "ProbMap");
        for (double v : values) check_range(v);
    }

    bool in_bounds(const PixelPoint& p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    }
    double at(const PixelPoint& p) const {
        if (!in_bounds(p)) detail::out_of_bounds(p, width, height, "ProbMap");
        return values[static_cast<std::size_t>(p.y) * width + p.x];
    }
    void set(const PixelPoint& p, double v) {
        if (!in_bounds(p)) detail::out_of_bounds(p, width, height, "ProbMap");
        check_range(v);
        values[static_cast<std::size_t>(p.y) * width + p.x] = v;
    }
    double operator()(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }

private:
    static void check_range(double v) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("ProbMap: value outside [0,1]");
    }
};

// Per-pixel class labels, 1 = contour, 0 = non-contour.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> labels;

    BinaryMask() = default;
    BinaryMask(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
        detail::check_dims(w, h, static_cast<std::size_t>(w > 0 ? w : 0) * (h > 0 ? h : 0), "BinaryMask");
        check_label(fill);
        labels.assign(static_cast<std::size_t>(w) * h, fill);
    }
    BinaryMask(int w, int h, std::vector<std::uint8_t> data) : width(w), height(h), labels(std::move(data)) {
        detail::check_dims(w, h, labels.size(), "BinaryMask");
        for (std::uint8_t v : labels) check_label(v);
    }

    bool in_bounds(const PixelPoint& p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    }
    std::uint8_t at(const PixelPoint& p) const {
        if (!in_bounds(p)) detail::out_of_bounds(p, width, height, "BinaryMask");
        return labels[static_cast<std::size_t>(p.y) * width + p.x];
    }
    void set(const PixelPoint& p, std::uint8_t v) {
        if (!in_bounds(p)) detail::out_of_bounds(p, width, height, "BinaryMask");
        check_label(v);
        labels[static_cast<std::size_t>(p.y) * width + p.x] = v;
    }
    std::uint8_t operator()(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    static void check_label(std::uint8_t v) {
        if (v > 1) throw std::invalid_argument("BinaryMask: label must be 0 or 1");
    }
};

// Per-pixel loss weights.
struct WeightMap {
    int width = 0;
    int height = 0;
    std::vector<double> weights;

    WeightMap() = default;
    WeightMap(int w, int h, std::vector<double> data) : width(w), height(h), weights(std::move(data)) {
        detail::check_dims(w, h, weights.size(), "WeightMap");
        for (double v : weights)
            if (!(v >= 0.0)) throw std::invalid_argument("WeightMap: weights must be non-negative");
    }

    double operator()(int x, int y) const { return weights[static_cast<std::size_t>(y) * width + x]; }
};

// Interleaved RGB raster, used for QC overlays.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 3 bytes per pixel, row-major

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h) {
        detail::check_dims(w, h, static_cast<std::size_t>(w > 0 ? w : 0) * (h > 0 ? h : 0), "RgbImage");
        pixels.assign(static_cast<std::size_t>(w) * h * 3, 0);
    }
    RgbImage(int w, int h, std::vector<std::uint8_t> data) : width(w), height(h), pixels(std::move(data)) {
        if (w < 1 || h < 1) throw std::invalid_argument("RgbImage: dimensions must be at least 1x1");
        if (pixels.size() != static_cast<std::size_t>(w) * h * 3)
            throw std::invalid_argument("RgbImage: buffer length does not match width*height*3");
    }

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
        pixels[i] = r;
        pixels[i + 1] = g;
        pixels[i + 2] = b;
    }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Acquisition geometry; the single source of the pixel-to-millimetre factor.
// Cropping never changes the spacing: it is fixed by the scanner's field of
// view and acquisition matrix, not by the network input size.
struct ImageMeta {
    double fov_mm = 192.0;
    int acq_resolution = 136;

    double pixel_spacing_mm() const {
        if (acq_resolution < 1) throw std::invalid_argument("ImageMeta: acq_resolution must be >= 1");
        if (!(fov_mm > 0.0)) throw std::invalid_argument("ImageMeta: fov_mm must be positive");
        return fov_mm / acq_resolution;
    }
};

inline double pixel_spacing(const ImageMeta& meta) { return meta.pixel_spacing_mm(); }

// Ordered open polyline on the pixel grid. Both ground truth annotations and
// extraction output use this representation.
struct Contour {
    std::vector<PixelPoint> points;

    // Throws std::invalid_argument when any invariant is broken:
    // at least 2 points, no duplicate consecutive points, first != last.
    void validate() const {
        if (points.size() < 2) throw std::invalid_argument("Contour: fewer than 2 points");
        for (std::size_t i = 1; i < points.size(); ++i)
            if (points[i] == points[i - 1])
                throw std::invalid_argument("Contour: duplicate consecutive point at index " + std::to_string(i));
        if (points.front() == points.back())
            throw std::invalid_argument("Contour: closed polyline (first point equals last)");
    }

    friend bool operator==(const Contour&, const Contour&) = default;
};

} // namespace tonguetrace

#endif
