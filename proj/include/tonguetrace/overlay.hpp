#ifndef TONGUETRACE_OVERLAY_HPP
#define TONGUETRACE_OVERLAY_HPP

#include "tonguetrace/types.hpp"

namespace tonguetrace {

// QC rendering: the grayscale frame promoted to RGB with predicted contour
// points painted red, ground-truth points blue, coinciding points purple.
// Either contour may be null. Out-of-bounds points throw std::out_of_range.
RgbImage overlay(const GrayImage& image, const Contour* truth, const Contour* predicted);

} // namespace tonguetrace

#endif
