#ifndef TONGUETRACE_CONTOUR_CSV_HPP
#define TONGUETRACE_CONTOUR_CSV_HPP

#include <string>
#include <string_view>

#include "tonguetrace/pgm.hpp" // FormatError
#include "tonguetrace/types.hpp"

namespace tonguetrace {

// Contour CSV: UTF-8, LF line endings, header "x,y", then one integer pair
// per line in curve order. Errors carry the 1-based line number.
Contour read_contour_csv(std::string_view text);
std::string write_contour_csv(const Contour& contour);

} // namespace tonguetrace

#endif
