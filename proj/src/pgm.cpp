#include "tonguetrace/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace tonguetrace {

namespace {

[[noreturn]] void fail(const char* what, std::size_t offset) {
    throw FormatError(std::string(what) + " at byte offset " + std::to_string(offset));
}

// Netpbm header scanner: skips whitespace and '#' comments between tokens.
struct HeaderScanner {
    std::string_view bytes;
    std::size_t pos = 0;

    void skip_separators() {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f') {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const char* what) {
        skip_separators();
        if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9') fail(what, pos);
        long value = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1000000) fail("implausibly large header value", pos);
            ++pos;
        }
        return value;
    }
};

std::size_t parse_header(std::string_view bytes, char magic, int& width, int& height, long& maxval) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != magic)
        fail("missing Netpbm magic number", 0);
    HeaderScanner scan{bytes, 2};
    width = static_cast<int>(scan.next_int("malformed width"));
    height = static_cast<int>(scan.next_int("malformed height"));
    maxval = scan.next_int("malformed maxval");
    if (width < 1 || height < 1) fail("degenerate dimensions", scan.pos);
    // Exactly one whitespace byte separates the maxval from the payload.
    if (scan.pos >= bytes.size() || !(bytes[scan.pos] == '\n' || bytes[scan.pos] == ' ' ||
                                      bytes[scan.pos] == '\t' || bytes[scan.pos] == '\r'))
        fail("missing whitespace after maxval", scan.pos);
    return scan.pos + 1;
}

} // namespace

std::variant<GrayImage, ProbMap> read_pgm(std::string_view bytes) {
    int width = 0, height = 0;
    long maxval = 0;
    const std::size_t payload = parse_header(bytes, '5', width, height, maxval);
    const std::size_t count = static_cast<std::size_t>(width) * height;

    if (maxval == 255) {
        if (bytes.size() - payload < count) fail("truncated 8-bit payload", bytes.size());
        std::vector<std::uint8_t> pixels(count);
        for (std::size_t i = 0; i < count; ++i) pixels[i] = static_cast<std::uint8_t>(bytes[payload + i]);
        return GrayImage(width, height, std::move(pixels));
    }
    if (maxval == 65535) {
        if (bytes.size() - payload < count * 2) fail("truncated 16-bit payload", bytes.size());
        std::vector<double> values(count);
        for (std::size_t i = 0; i < count; ++i) {
            const auto hi = static_cast<std::uint8_t>(bytes[payload + 2 * i]);
            const auto lo = static_cast<std::uint8_t>(bytes[payload + 2 * i + 1]);
            values[i] = static_cast<double>((hi << 8) | lo) / 65535.0;
        }
        return ProbMap(width, height, std::move(values));
    }
    fail("unsupported maxval (expected 255 or 65535)", payload);
}

GrayImage read_pgm_gray(std::string_view bytes) {
    auto any = read_pgm(bytes);
    if (auto* img = std::get_if<GrayImage>(&any)) return std::move(*img);
    throw FormatError("expected an 8-bit PGM, found a 16-bit probability map");
}

ProbMap read_pgm_prob(std::string_view bytes) {
    auto any = read_pgm(bytes);
    if (auto* map = std::get_if<ProbMap>(&any)) return std::move(*map);
    throw FormatError("expected a 16-bit probability PGM, found an 8-bit image");
}

std::string write_pgm(const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.reserve(out.size() + image.pixels.size());
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

std::string write_pgm(const ProbMap& map) {
    std::string out = "P5\n" + std::to_string(map.width) + " " + std::to_string(map.height) + "\n65535\n";
    out.reserve(out.size() + map.values.size() * 2);
    for (double v : map.values) {
        const auto q = static_cast<std::uint16_t>(std::lround(v * 65535.0));
        out.push_back(static_cast<char>(q >> 8));
        out.push_back(static_cast<char>(q & 0xFF));
    }
    return out;
}

RgbImage read_ppm(std::string_view bytes) {
    int width = 0, height = 0;
    long maxval = 0;
    const std::size_t payload = parse_header(bytes, '6', width, height, maxval);
    if (maxval != 255) fail("unsupported PPM maxval (expected 255)", payload);
    const std::size_t count = static_cast<std::size_t>(width) * height * 3;
    if (bytes.size() - payload < count) fail("truncated PPM payload", bytes.size());
    std::vector<std::uint8_t> pixels(count);
    for (std::size_t i = 0; i < count; ++i) pixels[i] = static_cast<std::uint8_t>(bytes[payload + i]);
    return RgbImage(width, height, std::move(pixels));
}

std::string write_ppm(const RgbImage& image) {
    std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    out.reserve(out.size() + image.pixels.size());
    out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
    return out;
}

std::string load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error("read failure: " + path);
    return std::move(buf).str();
}

void save_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create file: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) throw std::runtime_error("write failure: " + path);
}

} // namespace tonguetrace
