#ifndef TONGUETRACE_PGM_HPP
#define TONGUETRACE_PGM_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "tonguetrace/types.hpp"

namespace tonguetrace {

// Malformed or truncated raster/CSV/manifest input. The message carries the
// byte offset (PGM/PPM) or line number (CSV) of the first offending byte.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Binary PGM ("P5"). maxval 255 decodes to a GrayImage, maxval 65535 to a
// ProbMap with value = sample / 65535 (16-bit samples are big-endian).
std::variant<GrayImage, ProbMap> read_pgm(std::string_view bytes);

GrayImage read_pgm_gray(std::string_view bytes); // FormatError on a 16-bit file
ProbMap read_pgm_prob(std::string_view bytes);   // FormatError on an 8-bit file

// Header is "P5\n<w> <h>\n<maxval>\n" followed by the raw payload; probability
// values are quantized as round(p * 65535). Round-trips are bit-exact.
std::string write_pgm(const GrayImage& image);
std::string write_pgm(const ProbMap& map);

// Binary PPM ("P6"), maxval 255, used for overlay output.
RgbImage read_ppm(std::string_view bytes);
std::string write_ppm(const RgbImage& image);

// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string load_file(const std::string& path);
void save_file(const std::string& path, std::string_view bytes);

} // namespace tonguetrace

#endif
