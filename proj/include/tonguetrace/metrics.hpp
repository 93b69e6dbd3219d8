#ifndef TONGUETRACE_METRICS_HPP
#define TONGUETRACE_METRICS_HPP

#include <string>
#include <vector>

#include "tonguetrace/types.hpp"

namespace tonguetrace {

// Mean Sum of Distance between two curves, in millimetres:
//   spacing / (n1 + n2) * (sum_i min_j |u_i - v_j| + sum_j min_i |v_j - u_i|)
// Point-to-curve distance is the minimum over the curve's discrete points.
double msd(const Contour& u, const Contour& v, double spacing_mm_per_px);

enum class RecordStatus { ok, extraction_failed };

struct EvalRecord {
    std::string id;
    RecordStatus status = RecordStatus::extraction_failed;
    double msd_px = 0.0; // valid only when status == ok
    double msd_mm = 0.0;
    std::string reason; // failure detail, empty when ok

    static EvalRecord success(std::string id, double msd_px, double spacing_mm_per_px) {
        return EvalRecord{std::move(id), RecordStatus::ok, msd_px, msd_px * spacing_mm_per_px, {}};
    }
    static EvalRecord failure(std::string id, std::string reason) {
        return EvalRecord{std::move(id), RecordStatus::extraction_failed, 0.0, 0.0, std::move(reason)};
    }
};

struct FoldReport {
    int fold_index = 0;
    double mean_mm = 0.0;
    double std_mm = 0.0; // sample standard deviation (n-1), 0 for a single record
    int count = 0;       // ok records only
    int failures = 0;
};

// Mean and sample std over ok records; failures counted separately.
// Throws std::invalid_argument when no record is ok.
FoldReport aggregate_fold(const std::vector<EvalRecord>& records, int fold_index);

struct OverallSummary {
    double mean_mm = 0.0; // pooled over every ok record
    double std_mm = 0.0;
    int count = 0;
    int failures = 0;
    double worst_mm = 0.0;          // the excluded record's value
    double mean_excl_worst_mm = 0.0; // statistics with the single worst record removed
    double std_excl_worst_mm = 0.0;
    double mean_of_fold_means_mm = 0.0;
};

OverallSummary aggregate_overall(const std::vector<FoldReport>& reports,
                                 const std::vector<EvalRecord>& records);

// Table-style cell, e.g. format_mean_std(1.0, 0.7071) == "1.00 ± 0.71".
std::string format_mean_std(double mean, double std);

} // namespace tonguetrace

#endif
