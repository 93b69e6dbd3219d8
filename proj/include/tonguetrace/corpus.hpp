#ifndef TONGUETRACE_CORPUS_HPP
#define TONGUETRACE_CORPUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tonguetrace/extract.hpp"
#include "tonguetrace/manifest.hpp"
#include "tonguetrace/metrics.hpp"

namespace tonguetrace {

struct FoldAssignment {
    int fold_index = 0;
    std::map<std::string, Split> id_to_split;
};

enum class FoldMode {
    rotating,    // one seeded shuffle, test window rotated across folds:
                 // the n_folds test sets partition the corpus
    independent, // fresh seeded shuffle per fold; coverage not guaranteed
};

// Seeded train/valid/test partitions in a 4:1:1 ratio (exact 400/100/100 for
// 600 entries and 6 folds; window boundaries at floor(k*n/n_folds) otherwise,
// remainder to train). Deterministic for a given (ids order, seed).
std::vector<FoldAssignment> split_folds(const std::vector<std::string>& ids, int n_folds = 6,
                                        std::uint64_t seed = 0, FoldMode mode = FoldMode::rotating);

struct BatchOptions {
    int worker_count = 1;
    int fold_index = 0;
    std::string base_dir = "."; // manifest-relative paths resolve against this
};

struct BatchResult {
    std::vector<EvalRecord> records;            // manifest order
    std::optional<FoldReport> report;           // absent when no record succeeded
};

// Evaluates every test/unassigned manifest entry: load probability map,
// extract the contour, score MSD against the ground truth. Failures are
// captured per record and never abort the batch; the result is independent
// of worker scheduling.
BatchResult run_batch(const std::vector<ManifestEntry>& entries, const ExtractConfig& config,
                      const ImageMeta& meta, const BatchOptions& options = {});

// Report serializations (stable across worker counts and platforms).
std::string records_csv(const std::vector<EvalRecord>& records);
std::string summary_text(const BatchResult& result);

} // namespace tonguetrace

#endif
