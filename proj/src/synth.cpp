#include "tonguetrace/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "tonguetrace/extract.hpp"
#include "tonguetrace/rasterize.hpp"
#include "tonguetrace/rng.hpp"

namespace tonguetrace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Stream-separation tag so corrupt() never replays gen_curve() draws for the
// same seed. Arbitrary constant, part of the reproducibility contract.
constexpr std::uint64_t kCorruptStream = 0xA24BAED4963EE407ULL;

} // namespace

Contour gen_curve(const SynthParams& params) {
    const int size = params.image_size;
    if (size < 32) throw std::invalid_argument("gen_curve: image_size must be at least 32");
    constexpr int kMargin = 4;

    SplitMix64 rng(params.seed);
    for (int attempt = 0; attempt < 20000; ++attempt) {
        const double span = (120.0 + rng.next_double() * 180.0) * std::numbers::pi / 180.0;
        const double radius = size * rng.next_in(0.30, 0.45);
        const double cx = size * rng.next_in(0.25, 0.75);
        const double cy = size * rng.next_in(0.25, 0.75);
        const double theta0 = rng.next_double() * kTwoPi;

        const int steps = std::max(2, static_cast<int>(std::lround(radius * span)));
        std::vector<PixelPoint> pts;
        pts.reserve(steps + 1);
        bool inside = true;
        int min_x = size, max_x = -1, min_y = size, max_y = -1;
        for (int i = 0; i <= steps && inside; ++i) {
            const double theta = theta0 + span * i / steps;
            const PixelPoint p{static_cast<int>(std::lround(cx + radius * std::cos(theta))),
                               static_cast<int>(std::lround(cy + radius * std::sin(theta)))};
            if (p.x < kMargin || p.x > size - 1 - kMargin || p.y < kMargin || p.y > size - 1 - kMargin) {
                inside = false;
                break;
            }
            if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
        if (!inside || pts.size() < 2) continue;
        if (std::max(max_x - min_x, max_y - min_y) < size / 2) continue;
        if (pts.front() == pts.back()) continue;

        Contour contour{std::move(pts)};
        contour.validate();
        return contour;
    }
    throw std::runtime_error("gen_curve: no arc fits the image after 20000 attempts");
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be positive");
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> taps(2 * radius + 1);
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        taps[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
        sum += taps[k + radius];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

std::vector<PixelPoint> trace_chain(const BinaryMask& mask) {
    std::vector<PixelPoint> pixels = mask_to_points(mask);
    if (pixels.empty()) return pixels;

    std::set<PixelPoint> remaining(pixels.begin(), pixels.end());
    auto neighbour_count = [&](const PixelPoint& p) {
        int count = 0;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                if (remaining.count({p.x + dx, p.y + dy})) ++count;
            }
        return count;
    };

    // Endpoints have one neighbour; start there (row-major tie-break).
    PixelPoint start = pixels[0];
    int best = neighbour_count(start);
    for (const PixelPoint& p : pixels) {
        const int c = neighbour_count(p);
        if (c < best) {
            best = c;
            start = p;
        }
    }

    std::vector<PixelPoint> chain;
    chain.reserve(pixels.size());
    PixelPoint current = start;
    remaining.erase(current);
    chain.push_back(current);
    while (!remaining.empty()) {
        // Prefer 4-adjacent continuations, then diagonals, row-major within each.
        PixelPoint next{};
        bool found = false;
        for (int pass = 0; pass < 2 && !found; ++pass) {
            for (int dy = -1; dy <= 1 && !found; ++dy)
                for (int dx = -1; dx <= 1 && !found; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if ((std::abs(dx) + std::abs(dy) == 1) != (pass == 0)) continue;
                    const PixelPoint cand{current.x + dx, current.y + dy};
                    if (remaining.count(cand)) {
                        next = cand;
                        found = true;
                    }
                }
        }
        if (!found) next = *remaining.begin(); // stranded: restart at the first leftover
        remaining.erase(next);
        chain.push_back(next);
        current = next;
    }
    return chain;
}

namespace {

struct AngularCover {
    double gx = 0.0, gy = 0.0;
    double gap_lo = 0.0;  // angle of the point that starts the largest gap
    double gap_hi = 0.0;  // angle of the point that ends it
    double gap_width = 0.0;

    // Circular margin (radians) between theta and the uncovered interval.
    double margin_to_gap(double theta) const {
        auto wrap = [](double a) {
            while (a < 0.0) a += kTwoPi;
            while (a >= kTwoPi) a -= kTwoPi;
            return a;
        };
        const double from_lo = wrap(theta - gap_lo);   // 0 at gap start, grows into the gap
        if (from_lo < gap_width) return 0.0;           // inside the gap
        return std::min(wrap(theta - gap_hi), wrap(gap_lo - theta));
    }
};

AngularCover angular_cover(const std::vector<PixelPoint>& pts) {
    AngularCover cover;
    for (const PixelPoint& p : pts) {
        cover.gx += p.x;
        cover.gy += p.y;
    }
    cover.gx /= static_cast<double>(pts.size());
    cover.gy /= static_cast<double>(pts.size());

    std::vector<double> angles;
    angles.reserve(pts.size());
    for (const PixelPoint& p : pts) {
        const double dx = p.x - cover.gx, dy = p.y - cover.gy;
        if (dx == 0.0 && dy == 0.0) continue;
        angles.push_back(std::atan2(dy, dx));
    }
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const std::size_t j = (i + 1) % angles.size();
        const double gap = angles[j] - angles[i] + (j == 0 ? kTwoPi : 0.0);
        if (gap > cover.gap_width) {
            cover.gap_width = gap;
            cover.gap_lo = angles[i];
            cover.gap_hi = angles[j];
        }
    }
    return cover;
}

// Compact deterministic blob: grow from the seed pixel by (distance from
// seed, row-major) order until `size` pixels are collected.
std::vector<PixelPoint> cluster_shape(PixelPoint seed, int size) {
    std::vector<PixelPoint> cluster{seed};
    std::set<PixelPoint> taken{seed};
    while (static_cast<int>(cluster.size()) < size) {
        PixelPoint best{};
        std::int64_t best_d = -1;
        for (const PixelPoint& p : cluster)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const PixelPoint cand{p.x + dx, p.y + dy};
                    if (taken.count(cand)) continue;
                    const std::int64_t d = sq_dist(cand, seed);
                    if (best_d < 0 || d < best_d || (d == best_d && cand < best)) {
                        best_d = d;
                        best = cand;
                    }
                }
        cluster.push_back(best);
        taken.insert(best);
    }
    return cluster;
}

} // namespace

CorruptResult corrupt_detailed(const BinaryMask& mask, const SynthParams& params) {
    if (params.gap_count < 0 || params.gap_length_px < 1 || params.spur_count < 0 ||
        params.spur_size_px < 1 || params.noise_amplitude < 0.0 || params.noise_amplitude >= 1.0 ||
        params.blur_sigma < 0.0)
        throw std::invalid_argument("corrupt: invalid parameters");

    SplitMix64 rng(params.seed ^ kCorruptStream);
    const int w = mask.width, h = mask.height;
    std::vector<double> raw(mask.labels.begin(), mask.labels.end());

    CorruptResult result;
    const std::vector<PixelPoint> chain = trace_chain(mask);
    const auto chain_len = static_cast<long>(chain.size());

    // (1) gaps: disjoint runs of consecutive curve pixels set to 0.
    if (params.gap_count > 0) {
        const long total_cut = static_cast<long>(params.gap_count) * params.gap_length_px;
        if (total_cut >= chain_len)
            throw std::invalid_argument("corrupt: gaps exceed the curve length");
        const long end_margin = std::min<long>(chain_len / 8, 20);
        std::vector<std::pair<long, long>> runs; // [start, end)
        for (int g = 0; g < params.gap_count; ++g) {
            bool placed = false;
            for (int separation : {12, 6, 1, 0}) {
                for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
                    const long lo = end_margin;
                    const long hi = chain_len - params.gap_length_px - end_margin;
                    if (hi < lo) break;
                    const long start = lo + static_cast<long>(rng.next_below(hi - lo + 1));
                    const long end = start + params.gap_length_px;
                    bool clash = false;
                    for (const auto& [s, e] : runs)
                        if (start < e + separation && s < end + separation) clash = true;
                    if (!clash) {
                        runs.emplace_back(start, end);
                        placed = true;
                    }
                }
                if (placed) break;
            }
            if (!placed) throw std::invalid_argument("corrupt: cannot place disjoint gaps on this curve");
        }
        for (const auto& [s, e] : runs)
            for (long k = s; k < e; ++k) {
                const PixelPoint& p = chain[k];
                raw[static_cast<std::size_t>(p.y) * w + p.x] = 0.0;
                result.gap_pixels.push_back(p);
            }
    }

    // (2) spurs: compact value-1 clusters away from the curve. Placement is
    // restricted to directions the curve already covers (as seen from its
    // gravity center) so a spur models a stray cloud beside the contour body
    // rather than an artificial third endpoint.
    if (params.spur_count > 0 && !chain.empty()) {
        const AngularCover cover = angular_cover(chain);
        auto min_dist_to_curve = [&](const PixelPoint& q) {
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (const PixelPoint& p : chain) best = std::min(best, sq_dist(p, q));
            return std::sqrt(static_cast<double>(best));
        };
        for (int s = 0; s < params.spur_count; ++s) {
            bool placed = false;
            for (double margin_deg : {25.0, 15.0, 8.0, 4.0}) {
                const double margin = margin_deg * std::numbers::pi / 180.0;
                for (int attempt = 0; attempt < 400 && !placed; ++attempt) {
                    const PixelPoint seed{static_cast<int>(2 + rng.next_below(w - 4)),
                                          static_cast<int>(2 + rng.next_below(h - 4))};
                    const double d = min_dist_to_curve(seed);
                    if (d < params.spur_min_dist_px || d > params.spur_min_dist_px + 20.0) continue;
                    const double theta = std::atan2(seed.y - cover.gy, seed.x - cover.gx);
                    if (cover.margin_to_gap(theta) < margin) continue;
                    std::vector<PixelPoint> cluster = cluster_shape(seed, params.spur_size_px);
                    bool valid = true;
                    for (const PixelPoint& p : cluster) {
                        if (p.x < 1 || p.x >= w - 1 || p.y < 1 || p.y >= h - 1 ||
                            min_dist_to_curve(p) < params.spur_min_dist_px) {
                            valid = false;
                            break;
                        }
                    }
                    if (!valid) continue;
                    for (const PixelPoint& p : cluster) {
                        raw[static_cast<std::size_t>(p.y) * w + p.x] = 1.0;
                        result.spur_pixels.push_back(p);
                    }
                    placed = true;
                }
                if (placed) break;
            }
            if (!placed) throw std::runtime_error("corrupt: no admissible spur position found");
        }
    }

    // (3) ridge-normalized separable Gaussian blur.
    if (params.blur_sigma > 0.0) {
        const std::vector<double> taps = gaussian_kernel(params.blur_sigma);
        const int radius = static_cast<int>(taps.size() / 2);
        std::vector<double> tmp(raw.size(), 0.0);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    const int xx = x + k;
                    if (xx >= 0 && xx < w) acc += taps[k + radius] * raw[static_cast<std::size_t>(y) * w + xx];
                }
                tmp[static_cast<std::size_t>(y) * w + x] = acc;
            }
        // Scale against the sparsest digital ridge (the diagonal, whose chain
        // pixels are sqrt(2) apart): response there is sum of squared taps.
        // Axis-aligned ridges land above 1 and clamp; every interior ridge
        // orientation keeps at least 1.0 before noise for sigma <= 1.
        double diag_response = 0.0;
        for (double t : taps) diag_response += t * t;
        const double ridge_scale = 1.0 / diag_response;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    const int yy = y + k;
                    if (yy >= 0 && yy < h) acc += taps[k + radius] * tmp[static_cast<std::size_t>(yy) * w + x];
                }
                raw[static_cast<std::size_t>(y) * w + x] = acc * ridge_scale;
            }
    }

    // (4) additive uniform noise, (5) clamp.
    for (double& v : raw) {
        if (params.noise_amplitude > 0.0) v += params.noise_amplitude * rng.next_double();
        v = std::clamp(v, 0.0, 1.0);
    }

    result.map = ProbMap(w, h, std::move(raw));
    return result;
}

ProbMap corrupt(const BinaryMask& mask, const SynthParams& params) {
    return corrupt_detailed(mask, params).map;
}

} // namespace tonguetrace
