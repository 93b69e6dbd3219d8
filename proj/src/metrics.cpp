#include "tonguetrace/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tonguetrace {

namespace {

double directed_sum(const std::vector<PixelPoint>& from, const std::vector<PixelPoint>& to) {
    double total = 0.0;
    for (const PixelPoint& p : from) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (const PixelPoint& q : to) best = std::min(best, sq_dist(p, q));
        total += std::sqrt(static_cast<double>(best));
    }
    return total;
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

MeanStd mean_sample_std(const std::vector<double>& values) {
    MeanStd out;
    const auto n = static_cast<double>(values.size());
    for (double v : values) out.mean += v;
    out.mean /= n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

} // namespace

double msd(const Contour& u, const Contour& v, double spacing_mm_per_px) {
    if (u.points.empty() || v.points.empty())
        throw std::invalid_argument("msd: empty contour");
    if (!(spacing_mm_per_px > 0.0))
        throw std::invalid_argument("msd: spacing must be positive");
    const double n = static_cast<double>(u.points.size() + v.points.size());
    // spacing multiplies last so scaling by the spacing is bit-exact
    return spacing_mm_per_px * ((directed_sum(u.points, v.points) + directed_sum(v.points, u.points)) / n);
}

FoldReport aggregate_fold(const std::vector<EvalRecord>& records, int fold_index) {
    std::vector<double> ok_values;
    int failures = 0;
    for (const EvalRecord& r : records) {
        if (r.status == RecordStatus::ok)
            ok_values.push_back(r.msd_mm);
        else
            ++failures;
    }
    if (ok_values.empty()) throw std::invalid_argument("aggregate_fold: no successful records");
    const MeanStd stats = mean_sample_std(ok_values);
    return FoldReport{fold_index, stats.mean, stats.std, static_cast<int>(ok_values.size()), failures};
}

OverallSummary aggregate_overall(const std::vector<FoldReport>& reports,
                                 const std::vector<EvalRecord>& records) {
    std::vector<double> ok_values;
    OverallSummary out;
    for (const EvalRecord& r : records) {
        if (r.status == RecordStatus::ok)
            ok_values.push_back(r.msd_mm);
        else
            ++out.failures;
    }
    if (ok_values.empty()) throw std::invalid_argument("aggregate_overall: no successful records");

    const MeanStd pooled = mean_sample_std(ok_values);
    out.mean_mm = pooled.mean;
    out.std_mm = pooled.std;
    out.count = static_cast<int>(ok_values.size());

    // Same statistics with the single worst record excluded.
    const auto worst = std::max_element(ok_values.begin(), ok_values.end());
    out.worst_mm = *worst;
    std::vector<double> trimmed(ok_values);
    trimmed.erase(trimmed.begin() + (worst - ok_values.begin()));
    if (trimmed.empty()) {
        out.mean_excl_worst_mm = pooled.mean;
        out.std_excl_worst_mm = pooled.std;
    } else {
        const MeanStd excl = mean_sample_std(trimmed);
        out.mean_excl_worst_mm = excl.mean;
        out.std_excl_worst_mm = excl.std;
    }

    if (!reports.empty()) {
        double sum = 0.0;
        for (const FoldReport& r : reports) sum += r.mean_mm;
        out.mean_of_fold_means_mm = sum / static_cast<double>(reports.size());
    }
    return out;
}

std::string format_mean_std(double mean, double std) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f ± %.2f", mean, std);
    return buf;
}

} // namespace tonguetrace
