#include "tonguetrace/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "tonguetrace/contour_csv.hpp"
#include "tonguetrace/pgm.hpp"
#include "tonguetrace/rng.hpp"

namespace tonguetrace {

std::vector<FoldAssignment> split_folds(const std::vector<std::string>& ids, int n_folds,
                                        std::uint64_t seed, FoldMode mode) {
    if (n_folds < 2) throw std::invalid_argument("split_folds: need at least 2 folds");
    const auto n = static_cast<long>(ids.size());
    if (n < n_folds) throw std::invalid_argument("split_folds: fewer entries than folds");

    auto shuffled_ids = [&](SplitMix64& rng) {
        std::vector<std::string> order(ids);
        for (long i = n - 1; i > 0; --i) {
            const auto j = static_cast<long>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(order[i], order[j]);
        }
        return order;
    };
    auto window = [&](int k) { return static_cast<long>(k) * n / n_folds; };

    SplitMix64 rng(seed);
    std::vector<FoldAssignment> folds;
    folds.reserve(n_folds);
    std::vector<std::string> rotating_order;
    if (mode == FoldMode::rotating) rotating_order = shuffled_ids(rng);

    for (int fold = 0; fold < n_folds; ++fold) {
        FoldAssignment assignment;
        assignment.fold_index = fold;
        if (mode == FoldMode::rotating) {
            // Test window k, validation window k+1 (wrapping), train the rest.
            const int valid_fold = (fold + 1) % n_folds;
            for (int k = 0; k < n_folds; ++k) {
                const Split split =
                    k == fold ? Split::test : (k == valid_fold ? Split::valid : Split::train);
                for (long i = window(k); i < window(k + 1); ++i)
                    assignment.id_to_split[rotating_order[i]] = split;
            }
        } else {
            const std::vector<std::string> order = shuffled_ids(rng);
            const long test_end = window(1);
            const long valid_end = window(2);
            for (long i = 0; i < n; ++i)
                assignment.id_to_split[order[i]] =
                    i < test_end ? Split::test : (i < valid_end ? Split::valid : Split::train);
        }
        folds.push_back(std::move(assignment));
    }
    return folds;
}

namespace {

EvalRecord evaluate_entry(const ManifestEntry& entry, const ExtractConfig& config,
                          double spacing_mm, const std::string& base_dir) {
    if (!entry.prob_path) return EvalRecord::failure(entry.id, "missing prob_path");
    if (!entry.truth_contour_path) return EvalRecord::failure(entry.id, "missing truth_contour_path");
    try {
        namespace fs = std::filesystem;
        const ProbMap prob = read_pgm_prob(load_file((fs::path(base_dir) / *entry.prob_path).string()));
        const Contour truth =
            read_contour_csv(load_file((fs::path(base_dir) / *entry.truth_contour_path).string()));
        const Contour predicted = extract_contour(prob, config);
        const double msd_px = msd(predicted, truth, 1.0);
        return EvalRecord::success(entry.id, msd_px, spacing_mm);
    } catch (const std::exception& e) {
        return EvalRecord::failure(entry.id, e.what());
    }
}

} // namespace

BatchResult run_batch(const std::vector<ManifestEntry>& entries, const ExtractConfig& config,
                      const ImageMeta& meta, const BatchOptions& options) {
    if (options.worker_count < 1) throw std::invalid_argument("run_batch: worker_count must be >= 1");
    const double spacing_mm = meta.pixel_spacing_mm();

    std::vector<const ManifestEntry*> eligible;
    for (const ManifestEntry& entry : entries)
        if (entry.split == Split::test || entry.split == Split::unassigned) eligible.push_back(&entry);

    BatchResult result;
    result.records.resize(eligible.size());
    if (!eligible.empty()) {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= eligible.size()) break;
                result.records[i] = evaluate_entry(*eligible[i], config, spacing_mm, options.base_dir);
            }
        };
        const int threads = std::min<int>(options.worker_count, static_cast<int>(eligible.size()));
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
        }
    }

    const bool any_ok = std::any_of(result.records.begin(), result.records.end(),
                                    [](const EvalRecord& r) { return r.status == RecordStatus::ok; });
    if (any_ok) result.report = aggregate_fold(result.records, options.fold_index);
    return result;
}

std::string records_csv(const std::vector<EvalRecord>& records) {
    std::string out = "id,status,msd_px,msd_mm\n";
    char buf[256];
    for (const EvalRecord& r : records) {
        if (r.status == RecordStatus::ok) {
            std::snprintf(buf, sizeof buf, "%s,ok,%.6f,%.6f\n", r.id.c_str(), r.msd_px, r.msd_mm);
        } else {
            std::snprintf(buf, sizeof buf, "%s,extraction_failed,,\n", r.id.c_str());
        }
        out += buf;
    }
    return out;
}

std::string summary_text(const BatchResult& result) {
    std::string out;
    char buf[256];
    if (result.report) {
        const FoldReport& fold = *result.report;
        std::snprintf(buf, sizeof buf, "fold %d  MSD %s mm  (n=%d, failures=%d)\n", fold.fold_index,
                      format_mean_std(fold.mean_mm, fold.std_mm).c_str(), fold.count, fold.failures);
        out += buf;
        const OverallSummary overall = aggregate_overall({fold}, result.records);
        std::snprintf(buf, sizeof buf, "overall %s mm over %d records\n",
                      format_mean_std(overall.mean_mm, overall.std_mm).c_str(), overall.count);
        out += buf;
        std::snprintf(buf, sizeof buf, "excluding worst %s mm (worst %.2f mm)\n",
                      format_mean_std(overall.mean_excl_worst_mm, overall.std_excl_worst_mm).c_str(),
                      overall.worst_mm);
        out += buf;
    } else {
        std::snprintf(buf, sizeof buf, "no successful records (%zu failures)\n", result.records.size());
        out += buf;
    }
    return out;
}

} // namespace tonguetrace
