// tonguetrace: probability-map post-processing, synthetic corpus generation
// and MSD evaluation as a single batch-friendly binary.
//
// Exit codes: 0 ok, 1 usage error, 2 data/processing failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tonguetrace/contour_csv.hpp"
#include "tonguetrace/corpus.hpp"
#include "tonguetrace/extract.hpp"
#include "tonguetrace/manifest.hpp"
#include "tonguetrace/metrics.hpp"
#include "tonguetrace/overlay.hpp"
#include "tonguetrace/pgm.hpp"
#include "tonguetrace/preprocess.hpp"
#include "tonguetrace/rasterize.hpp"
#include "tonguetrace/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tonguetrace;

namespace {

// The optional JSON config file mirrors the long flag names (without the
// leading dashes); values given on the command line win over the file.
json preload_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc)
            path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            path = arg.substr(9);
        if (!path.empty()) {
            json cfg = json::parse(load_file(path));
            if (!cfg.is_object()) throw std::runtime_error("config file must hold a JSON object");
            return cfg;
        }
    }
    return json::object();
}

template <typename T>
void from_cfg(const json& cfg, const char* key, T& var) {
    if (cfg.contains(key)) var = cfg.at(key).get<T>();
}

void write_sidecar(const std::string& anchor, const json& effective) {
    save_file(anchor + ".config.json", effective.dump(2) + "\n");
}

struct ExtractFlags {
    double threshold = 0.4;
    int min_component = 3;
    double rel_component = 0.05;
    double radius = 0.0; // 0 = automatic (extremity distance minus 1)
    bool thin = false;

    void load(const json& cfg) {
        from_cfg(cfg, "threshold", threshold);
        from_cfg(cfg, "min-component", min_component);
        from_cfg(cfg, "rel-component", rel_component);
        from_cfg(cfg, "radius", radius);
        from_cfg(cfg, "thin", thin);
    }
    void add_to(CLI::App& app) {
        app.add_option("--threshold", threshold, "Decision threshold in (0,1)")->capture_default_str();
        app.add_option("--min-component", min_component, "Absolute component size floor")
            ->capture_default_str();
        app.add_option("--rel-component", rel_component,
                       "Component size floor relative to the largest component")
            ->capture_default_str();
        app.add_option("--radius", radius, "Graph connection radius in pixels (0 = automatic)")
            ->capture_default_str();
        app.add_flag("--thin", thin, "Thin the thresholded set before filtering");
    }
    ExtractConfig config() const {
        ExtractConfig out;
        out.threshold = threshold;
        out.min_component_size = min_component;
        out.rel_component_size = rel_component;
        if (radius > 0.0) out.connection_radius_override = radius;
        out.enable_thinning = thin;
        return out;
    }
    json to_json() const {
        return {{"threshold", threshold},
                {"min-component", min_component},
                {"rel-component", rel_component},
                {"radius", radius},
                {"thin", thin}};
    }
};

struct MetaFlags {
    double fov_mm = 192.0;
    int resolution = 136;

    void load(const json& cfg) {
        from_cfg(cfg, "fov-mm", fov_mm);
        from_cfg(cfg, "resolution", resolution);
    }
    void add_to(CLI::App& app) {
        app.add_option("--fov-mm", fov_mm, "Field of view in millimetres")->capture_default_str();
        app.add_option("--resolution", resolution, "Acquisition matrix side in pixels")
            ->capture_default_str();
    }
    ImageMeta meta() const { return ImageMeta{fov_mm, resolution}; }
    json to_json() const { return {{"fov-mm", fov_mm}, {"resolution", resolution}}; }
};

int run_preprocess(const std::string& in, const std::string& out, int crop_w, int crop_h, int crop_x0,
                   int crop_y0, bool no_crop, bool no_equalize, const json& effective) {
    GrayImage image = read_pgm_gray(load_file(in));
    if (!no_crop) {
        CropRect rect = crop_x0 >= 0 && crop_y0 >= 0
                            ? CropRect{crop_x0, crop_y0, crop_w, crop_h}
                            : centered_crop(image.width, image.height, crop_w, crop_h);
        image = crop(image, rect);
    }
    if (!no_equalize) image = equalize(image);
    save_file(out, write_pgm(image));
    write_sidecar(out, effective);
    std::cout << json{{"out", out}, {"width", image.width}, {"height", image.height}}.dump() << "\n";
    return 0;
}

int run_rasterize(const std::string& in, const std::string& out, int width, int height,
                  const json& effective) {
    const Contour contour = read_contour_csv(load_file(in));
    const BinaryMask mask = rasterize_contour(contour, width, height);
    GrayImage image(width, height);
    for (std::size_t i = 0; i < mask.labels.size(); ++i) image.pixels[i] = mask.labels[i] ? 255 : 0;
    save_file(out, write_pgm(image));
    write_sidecar(out, effective);
    std::cout << json{{"out", out}, {"points", contour.points.size()}}.dump() << "\n";
    return 0;
}

int run_extract(const std::string& in, const std::string& out, const ExtractFlags& flags,
                const json& effective) {
    const ProbMap prob = read_pgm_prob(load_file(in));
    const Contour contour = extract_contour(prob, flags.config());
    save_file(out, write_contour_csv(contour));
    write_sidecar(out, effective);
    std::cout << json{{"out", out}, {"points", contour.points.size()}}.dump() << "\n";
    return 0;
}

int run_eval(const std::string& pred, const std::string& truth, const MetaFlags& meta) {
    const Contour a = read_contour_csv(load_file(pred));
    const Contour b = read_contour_csv(load_file(truth));
    const double px = msd(a, b, 1.0);
    const double mm = px * meta.meta().pixel_spacing_mm();
    std::cout << json{{"msd_px", px}, {"msd_mm", mm}}.dump() << "\n";
    return 0;
}

int run_synth(const std::string& out_dir, int count, std::uint64_t seed, SynthParams base,
              const json& effective) {
    fs::create_directories(out_dir);
    std::vector<ManifestEntry> entries;
    for (int i = 0; i < count; ++i) {
        SynthParams params = base;
        params.seed = seed + static_cast<std::uint64_t>(i);
        const Contour truth = gen_curve(params);
        const BinaryMask mask = rasterize_contour(truth, params.image_size, params.image_size);
        const ProbMap prob = corrupt(mask, params);

        char stem[32];
        std::snprintf(stem, sizeof stem, "%04d", i);
        const std::string mask_name = std::string(stem) + "_mask.pgm";
        const std::string prob_name = std::string(stem) + "_prob.pgm";
        const std::string truth_name = std::string(stem) + "_truth.csv";
        GrayImage mask_img(mask.width, mask.height);
        for (std::size_t k = 0; k < mask.labels.size(); ++k) mask_img.pixels[k] = mask.labels[k] ? 255 : 0;
        save_file((fs::path(out_dir) / mask_name).string(), write_pgm(mask_img));
        save_file((fs::path(out_dir) / prob_name).string(), write_pgm(prob));
        save_file((fs::path(out_dir) / truth_name).string(), write_contour_csv(truth));

        ManifestEntry entry;
        entry.id = std::string("synth-") + stem;
        entry.image_path = mask_name;
        entry.prob_path = prob_name;
        entry.truth_contour_path = truth_name;
        entry.speaker = "synthetic";
        entries.push_back(std::move(entry));
    }
    const std::string manifest_path = (fs::path(out_dir) / "manifest.json").string();
    save_file(manifest_path, write_manifest(entries));
    write_sidecar((fs::path(out_dir) / "run").string(), effective);
    std::cout << json{{"manifest", manifest_path}, {"count", count}}.dump() << "\n";
    return 0;
}

int run_batch(const std::string& manifest_path, const std::string& out_dir, int workers,
              const ExtractFlags& flags, const MetaFlags& meta, int folds, std::uint64_t fold_seed,
              int fold_index, const std::string& splits_out, const json& effective) {
    std::vector<ManifestEntry> entries = read_manifest(load_file(manifest_path));
    const std::string base_dir = fs::path(manifest_path).parent_path().string();

    if (folds > 0) {
        std::vector<std::string> ids;
        ids.reserve(entries.size());
        for (const ManifestEntry& e : entries) ids.push_back(e.id);
        const auto assignments = split_folds(ids, folds, fold_seed);
        if (!splits_out.empty()) {
            json out = json::array();
            for (const FoldAssignment& fold : assignments) {
                json splits = json::object();
                for (const auto& [id, split] : fold.id_to_split) splits[id] = to_string(split);
                out.push_back({{"fold", fold.fold_index}, {"splits", splits}});
            }
            save_file(splits_out, out.dump(2) + "\n");
        }
        if (fold_index < 0 || fold_index >= folds)
            throw std::runtime_error("fold-index outside [0, folds)");
        for (ManifestEntry& e : entries) e.split = assignments[fold_index].id_to_split.at(e.id);
    }

    BatchOptions options;
    options.worker_count = workers;
    options.fold_index = folds > 0 ? fold_index : 0;
    options.base_dir = base_dir.empty() ? "." : base_dir;
    const BatchResult result = run_batch(entries, flags.config(), meta.meta(), options);

    fs::create_directories(out_dir);
    save_file((fs::path(out_dir) / "records.csv").string(), records_csv(result.records));
    save_file((fs::path(out_dir) / "summary.txt").string(), summary_text(result));
    write_sidecar((fs::path(out_dir) / "run").string(), effective);

    int failures = 0;
    for (const EvalRecord& r : result.records)
        if (r.status != RecordStatus::ok) ++failures;
    json summary{{"records", result.records.size()}, {"failures", failures}};
    if (result.report) {
        summary["mean_mm"] = result.report->mean_mm;
        summary["std_mm"] = result.report->std_mm;
    }
    std::cout << summary.dump() << "\n";
    return failures == 0 ? 0 : 2;
}

int run_overlay(const std::string& image_path, const std::string& truth_path,
                const std::string& pred_path, const std::string& out, const json& effective) {
    const GrayImage image = read_pgm_gray(load_file(image_path));
    std::optional<Contour> truth, predicted;
    if (!truth_path.empty()) truth = read_contour_csv(load_file(truth_path));
    if (!pred_path.empty()) predicted = read_contour_csv(load_file(pred_path));
    const RgbImage rendered =
        overlay(image, truth ? &*truth : nullptr, predicted ? &*predicted : nullptr);
    save_file(out, write_ppm(rendered));
    write_sidecar(out, effective);
    std::cout << json{{"out", out}}.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tongue contour toolkit: probability-map post-processing and MSD evaluation"};
    app.require_subcommand(1);

    json cfg;
    try {
        cfg = preload_config(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    int exit_code = 0;
    std::string config_path; // consumed by preload_config; declared so --config parses

    // preprocess
    auto* pre = app.add_subcommand("preprocess", "Crop and histogram-equalize an image");
    std::string pre_in, pre_out;
    int crop_w = 128, crop_h = 128, crop_x0 = -1, crop_y0 = -1;
    bool no_crop = false, no_equalize = false;
    from_cfg(cfg, "crop-width", crop_w);
    from_cfg(cfg, "crop-height", crop_h);
    from_cfg(cfg, "crop-x0", crop_x0);
    from_cfg(cfg, "crop-y0", crop_y0);
    from_cfg(cfg, "no-crop", no_crop);
    from_cfg(cfg, "no-equalize", no_equalize);
    pre->add_option("--in", pre_in, "Input 8-bit PGM")->required();
    pre->add_option("--out", pre_out, "Output 8-bit PGM")->required();
    pre->add_option("--crop-width", crop_w, "Crop width")->capture_default_str();
    pre->add_option("--crop-height", crop_h, "Crop height")->capture_default_str();
    pre->add_option("--crop-x0", crop_x0, "Crop anchor x (negative = centered)")->capture_default_str();
    pre->add_option("--crop-y0", crop_y0, "Crop anchor y (negative = centered)")->capture_default_str();
    pre->add_flag("--no-crop", no_crop, "Skip cropping");
    pre->add_flag("--no-equalize", no_equalize, "Skip histogram equalization");
    pre->add_option("--config", config_path, "JSON config file mirroring the flag names");
    pre->callback([&] {
        exit_code = run_preprocess(pre_in, pre_out, crop_w, crop_h, crop_x0, crop_y0, no_crop,
                                   no_equalize,
                                   json{{"subcommand", "preprocess"},
                                        {"in", pre_in},
                                        {"out", pre_out},
                                        {"crop-width", crop_w},
                                        {"crop-height", crop_h},
                                        {"crop-x0", crop_x0},
                                        {"crop-y0", crop_y0},
                                        {"no-crop", no_crop},
                                        {"no-equalize", no_equalize}});
    });

    // rasterize
    auto* ras = app.add_subcommand("rasterize", "Render a contour CSV into a binary mask PGM");
    std::string ras_in, ras_out;
    int ras_w = 128, ras_h = 128;
    from_cfg(cfg, "width", ras_w);
    from_cfg(cfg, "height", ras_h);
    ras->add_option("--in", ras_in, "Input contour CSV")->required();
    ras->add_option("--out", ras_out, "Output mask PGM")->required();
    ras->add_option("--width", ras_w, "Mask width")->capture_default_str();
    ras->add_option("--height", ras_h, "Mask height")->capture_default_str();
    ras->add_option("--config", config_path, "JSON config file mirroring the flag names");
    ras->callback([&] {
        exit_code = run_rasterize(ras_in, ras_out, ras_w, ras_h,
                                  json{{"subcommand", "rasterize"},
                                       {"in", ras_in},
                                       {"out", ras_out},
                                       {"width", ras_w},
                                       {"height", ras_h}});
    });

    // extract
    auto* ext = app.add_subcommand("extract", "Turn a probability map into an ordered contour");
    std::string ext_in, ext_out;
    ExtractFlags ext_flags;
    ext_flags.load(cfg);
    ext->add_option("--in", ext_in, "Input 16-bit probability PGM")->required();
    ext->add_option("--out", ext_out, "Output contour CSV")->required();
    ext_flags.add_to(*ext);
    ext->add_option("--config", config_path, "JSON config file mirroring the flag names");
    ext->callback([&] {
        json effective = ext_flags.to_json();
        effective["subcommand"] = "extract";
        effective["in"] = ext_in;
        effective["out"] = ext_out;
        exit_code = run_extract(ext_in, ext_out, ext_flags, effective);
    });

    // eval
    auto* ev = app.add_subcommand("eval", "MSD between two contour CSVs");
    std::string ev_pred, ev_truth;
    MetaFlags ev_meta;
    ev_meta.load(cfg);
    ev->add_option("--pred", ev_pred, "Predicted contour CSV")->required();
    ev->add_option("--truth", ev_truth, "Ground-truth contour CSV")->required();
    ev_meta.add_to(*ev);
    ev->add_option("--config", config_path, "JSON config file mirroring the flag names");
    ev->callback([&] { exit_code = run_eval(ev_pred, ev_truth, ev_meta); });

    // synth
    auto* syn = app.add_subcommand("synth", "Generate a synthetic corpus with known ground truth");
    std::string syn_dir = "synth_out";
    int syn_count = 10;
    std::uint64_t syn_seed = 0;
    SynthParams syn_params;
    from_cfg(cfg, "out-dir", syn_dir);
    from_cfg(cfg, "count", syn_count);
    from_cfg(cfg, "seed", syn_seed);
    from_cfg(cfg, "image-size", syn_params.image_size);
    from_cfg(cfg, "blur-sigma", syn_params.blur_sigma);
    from_cfg(cfg, "gap-count", syn_params.gap_count);
    from_cfg(cfg, "gap-length", syn_params.gap_length_px);
    from_cfg(cfg, "spur-count", syn_params.spur_count);
    from_cfg(cfg, "spur-size", syn_params.spur_size_px);
    from_cfg(cfg, "spur-min-dist", syn_params.spur_min_dist_px);
    from_cfg(cfg, "noise", syn_params.noise_amplitude);
    syn->add_option("--out-dir", syn_dir, "Output directory")->capture_default_str();
    syn->add_option("--count", syn_count, "Number of images")->capture_default_str();
    syn->add_option("--seed", syn_seed, "Base seed; image i uses seed+i")->capture_default_str();
    syn->add_option("--image-size", syn_params.image_size, "Square image side")->capture_default_str();
    syn->add_option("--blur-sigma", syn_params.blur_sigma, "Gaussian blur sigma")->capture_default_str();
    syn->add_option("--gap-count", syn_params.gap_count, "Gaps cut into the curve")->capture_default_str();
    syn->add_option("--gap-length", syn_params.gap_length_px, "Gap length in pixels")->capture_default_str();
    syn->add_option("--spur-count", syn_params.spur_count, "Spurious clusters")->capture_default_str();
    syn->add_option("--spur-size", syn_params.spur_size_px, "Cluster size in pixels")->capture_default_str();
    syn->add_option("--spur-min-dist", syn_params.spur_min_dist_px, "Minimum cluster distance from the curve")
        ->capture_default_str();
    syn->add_option("--noise", syn_params.noise_amplitude, "Uniform noise amplitude")->capture_default_str();
    syn->add_option("--config", config_path, "JSON config file mirroring the flag names");
    syn->callback([&] {
        exit_code = run_synth(syn_dir, syn_count, syn_seed, syn_params,
                              json{{"subcommand", "synth"},
                                   {"out-dir", syn_dir},
                                   {"count", syn_count},
                                   {"seed", syn_seed},
                                   {"image-size", syn_params.image_size},
                                   {"blur-sigma", syn_params.blur_sigma},
                                   {"gap-count", syn_params.gap_count},
                                   {"gap-length", syn_params.gap_length_px},
                                   {"spur-count", syn_params.spur_count},
                                   {"spur-size", syn_params.spur_size_px},
                                   {"spur-min-dist", syn_params.spur_min_dist_px},
                                   {"noise", syn_params.noise_amplitude}});
    });

    // batch
    auto* bat = app.add_subcommand("batch", "Evaluate every manifest entry and write reports");
    std::string bat_manifest, bat_dir = "batch_out", bat_splits;
    int bat_workers = 1, bat_folds = 0, bat_fold_index = 0;
    std::uint64_t bat_fold_seed = 0;
    ExtractFlags bat_flags;
    MetaFlags bat_meta;
    bat_flags.load(cfg);
    bat_meta.load(cfg);
    from_cfg(cfg, "out-dir", bat_dir);
    from_cfg(cfg, "workers", bat_workers);
    from_cfg(cfg, "folds", bat_folds);
    from_cfg(cfg, "fold-seed", bat_fold_seed);
    from_cfg(cfg, "fold-index", bat_fold_index);
    bat->add_option("--manifest", bat_manifest, "Manifest JSON")->required();
    bat->add_option("--out-dir", bat_dir, "Report directory")->capture_default_str();
    bat->add_option("--workers", bat_workers, "Worker threads")->capture_default_str();
    bat_flags.add_to(*bat);
    bat_meta.add_to(*bat);
    bat->add_option("--folds", bat_folds, "Cross-validation folds (0 = evaluate everything)")
        ->capture_default_str();
    bat->add_option("--fold-seed", bat_fold_seed, "Fold shuffle seed")->capture_default_str();
    bat->add_option("--fold-index", bat_fold_index, "Which fold's test set to evaluate")
        ->capture_default_str();
    bat->add_option("--splits-out", bat_splits, "Write all fold assignments to this JSON file");
    bat->add_option("--config", config_path, "JSON config file mirroring the flag names");
    bat->callback([&] {
        json effective = bat_flags.to_json();
        for (auto& [k, v] : bat_meta.to_json().items()) effective[k] = v;
        effective["subcommand"] = "batch";
        effective["manifest"] = bat_manifest;
        effective["out-dir"] = bat_dir;
        effective["workers"] = bat_workers;
        effective["folds"] = bat_folds;
        effective["fold-seed"] = bat_fold_seed;
        effective["fold-index"] = bat_fold_index;
        exit_code = run_batch(bat_manifest, bat_dir, bat_workers, bat_flags, bat_meta, bat_folds,
                              bat_fold_seed, bat_fold_index, bat_splits, effective);
    });

    // overlay
    auto* ovl = app.add_subcommand("overlay", "Render contours over an image as a PPM");
    std::string ovl_image, ovl_truth, ovl_pred, ovl_out;
    ovl->add_option("--image", ovl_image, "Background 8-bit PGM")->required();
    ovl->add_option("--truth", ovl_truth, "Ground-truth contour CSV (blue)");
    ovl->add_option("--pred", ovl_pred, "Predicted contour CSV (red)");
    ovl->add_option("--out", ovl_out, "Output PPM")->required();
    ovl->add_option("--config", config_path, "JSON config file mirroring the flag names");
    ovl->callback([&] {
        exit_code = run_overlay(ovl_image, ovl_truth, ovl_pred, ovl_out,
                                json{{"subcommand", "overlay"},
                                     {"image", ovl_image},
                                     {"truth", ovl_truth},
                                     {"pred", ovl_pred},
                                     {"out", ovl_out}});
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
