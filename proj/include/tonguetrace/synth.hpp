#ifndef TONGUETRACE_SYNTH_HPP
#define TONGUETRACE_SYNTH_HPP

#include "tonguetrace/types.hpp"

namespace tonguetrace {

// Generator knobs. (seed, params) fully determine every output byte; all
// randomness comes from SplitMix64 streams derived from the seed (see
// rng.hpp for the generator contract).
struct SynthParams {
    std::uint64_t seed = 0;
    int image_size = 128;
    double blur_sigma = 0.0;
    int gap_count = 0;
    int gap_length_px = 1;
    int spur_count = 0;
    int spur_size_px = 1;
    double spur_min_dist_px = 15.0;
    double noise_amplitude = 0.0; // uniform additive noise in [0, amplitude)
};

// Seeded arc-like open curve: random center, radius and angular span in
// [120, 300] degrees, sampled at 1-pixel arc steps, quantized to the grid,
// consecutive duplicates removed. Spans at least half the image extent and
// keeps a 4-pixel border margin.
Contour gen_curve(const SynthParams& params);

// Normalized 1-D Gaussian taps (centre at index radius, radius = ceil(3*sigma),
// sums to 1). Exposed so the normalization can be checked directly.
std::vector<double> gaussian_kernel(double sigma);

// What corrupt() did to the mask, for tests that need the injected defects.
struct CorruptResult {
    ProbMap map;
    std::vector<PixelPoint> gap_pixels;  // curve pixels that were cut to 0
    std::vector<PixelPoint> spur_pixels; // cluster pixels that were set to 1
};

// Degrades a ground-truth mask into a plausible prediction map:
//  1. cut gap_count runs of gap_length_px consecutive curve pixels to 0,
//  2. add spur_count clusters of spur_size_px pixels at >= spur_min_dist_px
//     from the curve, value 1,
//  3. Gaussian blur (ridge-normalized: an interior straight 1-px ridge keeps
//     value 1.0, so any ridge stays >= 0.8 for sigma <= 1),
//  4. additive uniform noise in [0, noise_amplitude),
//  5. clamp to [0, 1].
// With all-zero parameters the output equals the mask exactly.
CorruptResult corrupt_detailed(const BinaryMask& mask, const SynthParams& params);
ProbMap corrupt(const BinaryMask& mask, const SynthParams& params);

// Orders the pixels of a thin 8-connected mask by walking from an endpoint;
// used to pick "consecutive curve pixels" for gap cutting.
std::vector<PixelPoint> trace_chain(const BinaryMask& mask);

} // namespace tonguetrace

#endif
