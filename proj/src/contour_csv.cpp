#include "tonguetrace/contour_csv.hpp"

#include <charconv>

namespace tonguetrace {

namespace {

int parse_int(std::string_view field, long line) {
    int value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw FormatError("non-integer field '" + std::string(field) + "' at line " + std::to_string(line));
    return value;
}

} // namespace

Contour read_contour_csv(std::string_view text) {
    Contour contour;
    long line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;

        if (line_no == 1) {
            if (line != "x,y") throw FormatError("expected header \"x,y\" at line 1");
        } else if (!line.empty()) {
            const std::size_t comma = line.find(',');
            if (comma == std::string_view::npos)
                throw FormatError("missing comma at line " + std::to_string(line_no));
            PixelPoint p{parse_int(line.substr(0, comma), line_no),
                         parse_int(line.substr(comma + 1), line_no)};
            if (!contour.points.empty() && contour.points.back() == p)
                throw FormatError("duplicate consecutive point at line " + std::to_string(line_no));
            contour.points.push_back(p);
        }

        if (eol == text.size()) break;
        pos = eol + 1;
    }
    if (contour.points.size() < 2) throw FormatError("contour has fewer than 2 points");
    if (contour.points.front() == contour.points.back())
        throw FormatError("closed contour (first point equals last)");
    return contour;
}

std::string write_contour_csv(const Contour& contour) {
    contour.validate();
    std::string out = "x,y\n";
    for (const PixelPoint& p : contour.points)
        out += std::to_string(p.x) + "," + std::to_string(p.y) + "\n";
    return out;
}

} // namespace tonguetrace
