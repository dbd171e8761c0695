// Command-line front end: texture extraction, map training, prediction,
// cross-validated comparison, and synthetic data generation. Settings come
// from flags, a key=value config file, and built-in defaults, in that order
// of precedence; all randomness flows from one global seed.

#include <CLI11.hpp>

#include <texsom/dataset.hpp>
#include <texsom/eval.hpp>
#include <texsom/features.hpp>
#include <texsom/isom.hpp>
#include <texsom/kv_config.hpp>
#include <texsom/model_io.hpp>
#include <texsom/som.hpp>
#include <texsom/types.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace texsom;

const std::set<std::string> kKnownKeys = {
    "seed",
    // extraction pipeline
    "sn", "m_blocs", "l_clusters", "kmeans_seed", "kmeans_max_iter",
    "glcm_levels", "glcm_distance", "crop_rows", "crop_cols",
    // training
    "model", "map_rows", "map_cols", "map_sizes", "epochs", "eta0", "radius0",
    "shuffle", "match_rule", "increment_rule", "reset_wcc_each_epoch",
    // evaluation
    "folds",
    // synthetic data
    "synth_n", "synth_dim", "synth_separation", "synth_spread",
};

// Config file contents plus flag-over-file precedence: a value bound to an
// option that was actually given on the command line wins over the file.
struct KvView {
    std::map<std::string, std::string> kv;

    long long geti(const CLI::Option* o, long long flagv, const std::string& key,
                   long long def) const {
        if (o != nullptr && o->count() > 0) return flagv;
        return kv_get_int(kv, key, def);
    }
    double getd(const CLI::Option* o, double flagv, const std::string& key,
                double def) const {
        if (o != nullptr && o->count() > 0) return flagv;
        return kv_get_double(kv, key, def);
    }
    bool getb(const CLI::Option* o, bool flagv, const std::string& key, bool def) const {
        if (o != nullptr && o->count() > 0) return flagv;
        return kv_get_bool(kv, key, def);
    }
    std::uint64_t getu(const CLI::Option* o, std::uint64_t flagv, const std::string& key,
                       std::uint64_t def) const {
        if (o != nullptr && o->count() > 0) return flagv;
        return kv_get_u64(kv, key, def);
    }
    std::string gets(const CLI::Option* o, const std::string& flagv,
                     const std::string& key, const std::string& def) const {
        if (o != nullptr && o->count() > 0) return flagv;
        return kv_get(kv, key, def);
    }
};

KvView load_kv(const std::string& path) {
    KvView view;
    if (path.empty()) return view;
    view.kv = parse_kv_file(path);
    for (const auto& [key, value] : view.kv) {
        if (kKnownKeys.count(key) == 0) {
            throw ConfigError(path + ": unknown config key '" + key + "'");
        }
    }
    return view;
}

std::string fmt9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string class_name(int cls) {
    if (cls == 0 || cls == 1) return kClassNames[cls];
    return "class" + std::to_string(cls);
}

MatchRule parse_match_rule(const std::string& s) {
    if (s == "instance") return MatchRule::Instance;
    if (s == "bmu") return MatchRule::Bmu;
    throw ConfigError("match_rule must be 'instance' or 'bmu', got '" + s + "'");
}

IncrementRule parse_increment_rule(const std::string& s) {
    if (s == "selected") return IncrementRule::Selected;
    if (s == "bmu_only") return IncrementRule::BmuOnly;
    throw ConfigError("increment_rule must be 'selected' or 'bmu_only', got '" + s + "'");
}

std::vector<GridSize> parse_map_sizes(const std::string& spec) {
    std::vector<GridSize> sizes;
    std::istringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) {
        const std::size_t x = token.find_first_of("xX");
        GridSize g;
        try {
            if (x == std::string::npos) throw std::invalid_argument("no separator");
            std::size_t used_r = 0;
            std::size_t used_c = 0;
            g.rows = std::stoi(token.substr(0, x), &used_r);
            g.cols = std::stoi(token.substr(x + 1), &used_c);
            if (used_r != x || used_c != token.size() - x - 1) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw ConfigError("map_sizes entry '" + token + "' is not of the form RxC");
        }
        if (g.rows < 1 || g.cols < 1) {
            throw ConfigError("map_sizes entry '" + token + "' must be at least 1x1");
        }
        sizes.push_back(g);
    }
    if (sizes.empty()) throw ConfigError("map_sizes is empty");
    return sizes;
}

std::string ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
    return out_dir;
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

std::string class_count_summary(const TabularDataset& ds) {
    std::string s;
    const std::vector<long> counts = ds.class_counts();
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (!s.empty()) s += " ";
        s += class_name(int(c)) + "=" + std::to_string(counts[c]);
    }
    return s.empty() ? "none" : s;
}

// ---------------------------------------------------------------------------
// extract: PGM directory + label table -> one transaction per image

struct ExtractArgs {
    std::string images_dir;
    std::string labels_path;
    long long sn = 0, m_blocs = 0, l_clusters = 0, kmeans_max_iter = 0;
    long long glcm_levels = 0, glcm_distance = 0;
    long long crop_rows = 0, crop_cols = 0;
    std::uint64_t kmeans_seed = 0;
    CLI::Option *o_sn = nullptr, *o_m = nullptr, *o_l = nullptr, *o_kiter = nullptr;
    CLI::Option *o_glevels = nullptr, *o_gdist = nullptr;
    CLI::Option *o_crows = nullptr, *o_ccols = nullptr, *o_kseed = nullptr;
};

void cmd_extract(const ExtractArgs& a, const KvView& kv, std::uint64_t seed,
                 const std::string& out_dir) {
    PipelineConfig cfg;
    cfg.sn = int(kv.geti(a.o_sn, a.sn, "sn", cfg.sn));
    cfg.m_blocs = int(kv.geti(a.o_m, a.m_blocs, "m_blocs", cfg.m_blocs));
    cfg.l_clusters = int(kv.geti(a.o_l, a.l_clusters, "l_clusters", cfg.l_clusters));
    cfg.kmeans_seed = kv.getu(a.o_kseed, a.kmeans_seed, "kmeans_seed", seed);
    cfg.kmeans_max_iter =
        int(kv.geti(a.o_kiter, a.kmeans_max_iter, "kmeans_max_iter", cfg.kmeans_max_iter));
    cfg.glcm.levels = int(kv.geti(a.o_glevels, a.glcm_levels, "glcm_levels", cfg.glcm.levels));
    cfg.glcm.distance =
        int(kv.geti(a.o_gdist, a.glcm_distance, "glcm_distance", cfg.glcm.distance));
    cfg.validate();

    const int crop_rows = int(kv.geti(a.o_crows, a.crop_rows, "crop_rows", 0));
    const int crop_cols = int(kv.geti(a.o_ccols, a.crop_cols, "crop_cols", 0));
    if ((crop_rows == 0) != (crop_cols == 0)) {
        throw ConfigError("crop_rows and crop_cols must be set together");
    }
    if (crop_rows < 0 || crop_cols < 0) {
        throw ConfigError("crop_rows and crop_cols must be non-negative");
    }

    const std::map<std::string, int> labels = load_labels(a.labels_path);
    const std::vector<LabeledImage> images = list_labeled_images(a.images_dir, labels);
    if (images.empty()) {
        throw DataError("no labeled .pgm images found in " + a.images_dir);
    }

    std::cout << "settings: sn=" << cfg.sn << " m_blocs=" << cfg.m_blocs
              << " l_clusters=" << cfg.l_clusters << " glcm_levels=" << cfg.glcm.levels
              << " glcm_distance=" << cfg.glcm.distance
              << " kmeans_seed=" << cfg.kmeans_seed
              << " kmeans_max_iter=" << cfg.kmeans_max_iter;
    if (crop_rows > 0) std::cout << " crop=" << crop_rows << "x" << crop_cols;
    std::cout << "\n";

    TabularDataset ds;
    int failures = 0;
    for (const LabeledImage& li : images) {
        try {
            GrayImage img = load_pgm(li.path);
            if (crop_rows > 0) img = center_crop(img, crop_rows, crop_cols);
            ds.items.push_back(build_transaction(img, li.label, cfg, li.id));
        } catch (const Error& e) {
            std::cerr << "extract: " << li.id << ": " << e.what() << "\n";
            ++failures;
        }
    }
    if (ds.empty()) {
        throw DataError("all " + std::to_string(images.size()) + " images failed to extract");
    }

    ensure_out_dir(out_dir);
    const std::string csv = out_path(out_dir, "features.csv");
    save_features(ds, csv);
    std::cout << "extracted " << ds.size() << " of " << images.size()
              << " images, dim " << cfg.transaction_dim() << " (sn " << cfg.sn << " x l "
              << cfg.l_clusters << " x 4), classes: " << class_count_summary(ds) << " -> "
              << csv << "\n";
    if (failures > 0) {
        throw DataError(std::to_string(failures) + " of " + std::to_string(images.size()) +
                        " images failed to extract; " + csv + " holds the rest");
    }
}

// ---------------------------------------------------------------------------
// synth: Gaussian two-class feature table

struct SynthArgs {
    long long n = 0, dim = 0;
    double separation = 0.0, spread = 0.0;
    CLI::Option *o_n = nullptr, *o_dim = nullptr, *o_sep = nullptr, *o_spread = nullptr;
};

void cmd_synth(const SynthArgs& a, const KvView& kv, std::uint64_t seed,
               const std::string& out_dir) {
    const int n = int(kv.geti(a.o_n, a.n, "synth_n", 100));
    const int dim = int(kv.geti(a.o_dim, a.dim, "synth_dim", 8));
    const double separation = kv.getd(a.o_sep, a.separation, "synth_separation", 6.0);
    const double spread = kv.getd(a.o_spread, a.spread, "synth_spread", 1.0);

    const TabularDataset ds = synth_blobs(n, dim, separation, spread, seed);
    if (separation == 0.0) {
        std::cerr << "warning: separation is 0; the two classes fully overlap\n";
    }

    ensure_out_dir(out_dir);
    const std::string csv = out_path(out_dir, "features.csv");
    save_features(ds, csv);
    std::cout << "generated " << ds.size() << " instances, dim " << dim
              << " (separation " << fmt9(separation) << ", spread " << fmt9(spread)
              << "), classes: " << class_count_summary(ds) << " -> " << csv << "\n";
}

// ---------------------------------------------------------------------------
// shared training settings

struct TrainFlags {
    std::string model;
    long long map_rows = 0, map_cols = 0, epochs = 0;
    double eta0 = 0.0, radius0 = 0.0;
    bool shuffle = true, reset_wcc = true;
    std::string match_rule, increment_rule;
    CLI::Option *o_model = nullptr, *o_rows = nullptr, *o_cols = nullptr;
    CLI::Option *o_epochs = nullptr, *o_eta0 = nullptr, *o_radius0 = nullptr;
    CLI::Option *o_shuffle = nullptr, *o_reset = nullptr;
    CLI::Option *o_match = nullptr, *o_increment = nullptr;
};

IsomTrainConfig resolve_train_config(const TrainFlags& f, const KvView& kv,
                                     std::uint64_t seed) {
    IsomTrainConfig cfg;
    cfg.epochs = int(kv.geti(f.o_epochs, f.epochs, "epochs", cfg.epochs));
    cfg.eta0 = kv.getd(f.o_eta0, f.eta0, "eta0", cfg.eta0);
    cfg.radius0 = kv.getd(f.o_radius0, f.radius0, "radius0", cfg.radius0);
    cfg.shuffle = kv.getb(f.o_shuffle, f.shuffle, "shuffle", cfg.shuffle);
    cfg.seed = seed;
    cfg.match_rule = parse_match_rule(kv.gets(f.o_match, f.match_rule, "match_rule", "instance"));
    cfg.increment_rule =
        parse_increment_rule(kv.gets(f.o_increment, f.increment_rule, "increment_rule", "selected"));
    cfg.reset_wcc_each_epoch =
        kv.getb(f.o_reset, f.reset_wcc, "reset_wcc_each_epoch", cfg.reset_wcc_each_epoch);
    cfg.validate();
    return cfg;
}

std::string training_settings_line(const std::string& model, int rows, int cols,
                                   const IsomTrainConfig& cfg) {
    std::ostringstream s;
    s << "settings: model=" << model << " map=" << rows << "x" << cols
      << " epochs=" << cfg.epochs << " eta0=" << fmt9(cfg.eta0)
      << " radius0=" << fmt9(cfg.resolved_radius(rows, cols))
      << " shuffle=" << (cfg.shuffle ? "true" : "false") << " seed=" << cfg.seed;
    if (model != "som") {
        s << " match_rule=" << (cfg.match_rule == MatchRule::Instance ? "instance" : "bmu")
          << " increment_rule="
          << (cfg.increment_rule == IncrementRule::Selected ? "selected" : "bmu_only")
          << " reset_wcc_each_epoch=" << (cfg.reset_wcc_each_epoch ? "true" : "false");
    }
    return s.str();
}

// ---------------------------------------------------------------------------
// train: features -> persisted model + training log

struct TrainArgs {
    std::string features_path;
    TrainFlags flags;
};

void cmd_train(const TrainArgs& a, const KvView& kv, std::uint64_t seed,
               const std::string& out_dir) {
    const std::string model_kind = kv.gets(a.flags.o_model, a.flags.model, "model", "isom");
    if (model_kind != "som" && model_kind != "isom") {
        throw ConfigError("model must be 'som' or 'isom', got '" + model_kind + "'");
    }
    const int rows = int(kv.geti(a.flags.o_rows, a.flags.map_rows, "map_rows", 10));
    const int cols = int(kv.geti(a.flags.o_cols, a.flags.map_cols, "map_cols", 10));
    if (rows < 1 || cols < 1) throw ConfigError("map_rows and map_cols must be at least 1");
    const IsomTrainConfig cfg = resolve_train_config(a.flags, kv, seed);

    TabularDataset ds = load_features(a.features_path);
    ds.validate_for_training();

    std::cout << training_settings_line(model_kind, rows, cols, cfg) << "\n";

    auto [scaled, scaler] = normalize_dataset(ds.items);
    TabularDataset train;
    train.items = std::move(scaled);

    Model model;
    TrainResult result;
    if (model_kind == "som") {
        SomGrid grid = init_grid(rows, cols, int(train.dim()), seed);
        result = train_som(grid, train, cfg);
        std::vector<int> node_labels = label_nodes(grid, train);
        model = SomModel{std::move(grid), std::move(node_labels), train.num_classes(), scaler};
    } else {
        IsomGrid grid = init_isom_grid(rows, cols, int(train.dim()), train.num_classes(), seed);
        result = train_isom(grid, train, cfg);
        model = IsomModel{std::move(grid), scaler};
    }

    ensure_out_dir(out_dir);
    const std::string model_path = out_path(out_dir, "model.txt");
    save_model(model, model_path);

    std::ostringstream log;
    log << "# epoch quantization_error weight_updates\n";
    for (std::size_t e = 0; e < result.qe_per_epoch.size(); ++e) {
        log << (e + 1) << " " << fmt9(result.qe_per_epoch[e]) << " "
            << result.stats.updates_per_epoch[e] << "\n";
    }
    log << "# total_weight_updates " << result.stats.weight_updates << "\n";
    if (model_kind == "isom") {
        log << "# counter_increments " << result.stats.counter_increments << "\n";
    }
    const std::string log_path = out_path(out_dir, "train_log.txt");
    spit(log_path, log.str());

    std::cout << "trained " << model_kind << " " << rows << "x" << cols << " on "
              << train.size() << " instances (dim " << train.dim() << "), final QE "
              << fmt9(result.qe_per_epoch.back()) << ", weight updates "
              << result.stats.weight_updates << " -> " << model_path << "\n";
}

// ---------------------------------------------------------------------------
// predict: persisted model + features -> per-instance predictions

struct PredictArgs {
    std::string model_path;
    std::string features_path;
};

void cmd_predict(const PredictArgs& a, const std::string& out_dir) {
    const Model model = load_model(a.model_path);
    const TabularDataset ds = load_features(a.features_path);
    if (int(ds.dim()) != model_dim(model)) {
        throw DataError("model expects dim " + std::to_string(model_dim(model)) +
                        " but features have dim " + std::to_string(ds.dim()));
    }

    const bool truth_known =
        std::all_of(ds.items.begin(), ds.items.end(),
                    [](const Transaction& t) { return t.label >= 0; });

    std::vector<int> predicted;
    std::vector<int> truth;
    predicted.reserve(ds.size());
    std::ostringstream csv;
    csv << (truth_known ? "id,predicted,truth\n" : "id,predicted\n");
    for (const Transaction& t : ds.items) {
        const int p = predict(model, t.values);
        predicted.push_back(p);
        csv << t.source_id << "," << p;
        if (truth_known) {
            truth.push_back(t.label);
            csv << "," << t.label;
        }
        csv << "\n";
    }

    std::string metrics_line;
    if (truth_known) {
        const ConfusionCounts c = confusion(predicted, truth, 1);
        const double p = precision(c) * 100.0;
        const double r = recall(c) * 100.0;
        const double f = fscore(p, r);
        csv << "# precision " << fmt9(p) << "\n";
        csv << "# recall " << fmt9(r) << "\n";
        csv << "# fscore " << fmt9(f) << "\n";
        std::ostringstream m;
        m << "precision " << fmt9(p) << " recall " << fmt9(r) << " fscore " << fmt9(f);
        metrics_line = m.str();
    }

    ensure_out_dir(out_dir);
    const std::string csv_path = out_path(out_dir, "predictions.csv");
    spit(csv_path, csv.str());
    std::cout << "predicted " << ds.size() << " instances with the " << model_kind(model)
              << " model -> " << csv_path << "\n";
    if (!metrics_line.empty()) std::cout << metrics_line << "\n";
}

// ---------------------------------------------------------------------------
// cv: stratified k-fold comparison across map sizes

struct CvArgs {
    std::string features_path;
    TrainFlags flags;
    std::string map_sizes;
    long long folds = 0;
    CLI::Option *o_sizes = nullptr, *o_folds = nullptr;
};

void cmd_cv(const CvArgs& a, const KvView& kv, std::uint64_t seed,
            const std::string& out_dir) {
    const std::string model_kind = kv.gets(a.flags.o_model, a.flags.model, "model", "both");
    if (model_kind != "som" && model_kind != "isom" && model_kind != "both") {
        throw ConfigError("model must be 'som', 'isom', or 'both', got '" + model_kind + "'");
    }
    const std::vector<GridSize> sizes =
        parse_map_sizes(kv.gets(a.o_sizes, a.map_sizes, "map_sizes", "10x10"));
    const int k = int(kv.geti(a.o_folds, a.folds, "folds", 10));
    const IsomTrainConfig cfg = resolve_train_config(a.flags, kv, seed);

    TabularDataset ds = load_features(a.features_path);
    ds.validate_for_training();

    std::cout << "settings: model=" << model_kind << " folds=" << k << " sizes=";
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        std::cout << (i > 0 ? "," : "") << sizes[i].rows << "x" << sizes[i].cols;
    }
    std::cout << " epochs=" << cfg.epochs << " seed=" << seed << "\n";

    ComparisonTable table;
    for (const GridSize& size : sizes) {
        const std::string name =
            std::to_string(size.rows) + "x" + std::to_string(size.cols);
        if (model_kind != "som") {
            table.rows.push_back(
                {name, "isom", cross_validate(ds, k, seed, make_isom_trainer(size, cfg))});
        }
        if (model_kind != "isom") {
            table.rows.push_back(
                {name, "som",
                 cross_validate(ds, k, seed, make_som_trainer(size, TrainConfig(cfg)))});
        }
    }

    ensure_out_dir(out_dir);
    const std::string csv_path = out_path(out_dir, "report.csv");
    const std::string txt_path = out_path(out_dir, "report.txt");
    spit(csv_path, render_csv(table));
    const std::string rendered = render_table(table);
    spit(txt_path, rendered);

    std::cout << rendered;
    for (const ComparisonRow& row : table.rows) {
        std::cout << row.map_size << " " << row.model << ": precision "
                  << fmt9(row.report.precision * 100.0) << " recall "
                  << fmt9(row.report.recall * 100.0) << " fscore "
                  << fmt9(row.report.fscore * 100.0) << " updates "
                  << row.report.weight_updates << "\n";
    }
    std::cout << "wrote " << csv_path << " and " << txt_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bloc-wise texture features and self-organizing map classification"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    CLI::Option* o_config = app.add_option("--config", config_path, "key=value config file");
    CLI::Option* o_seed = app.add_option("--seed", seed, "global random seed");
    app.add_option("--out", out_dir, "output directory (default .)");

    ExtractArgs ex;
    CLI::App* sub_extract =
        app.add_subcommand("extract", "texture features from a directory of PGM images");
    sub_extract->add_option("--images", ex.images_dir, "directory of .pgm images")->required();
    sub_extract->add_option("--labels", ex.labels_path, "id,label table")->required();
    ex.o_sn = sub_extract->add_option("--sn", ex.sn, "sub-images per image");
    ex.o_m = sub_extract->add_option("--m-blocs", ex.m_blocs, "blocs per sub-image");
    ex.o_l = sub_extract->add_option("--l-clusters", ex.l_clusters, "clusters per sub-image");
    ex.o_kseed = sub_extract->add_option("--kmeans-seed", ex.kmeans_seed,
                                         "clustering seed (default: global seed)");
    ex.o_kiter = sub_extract->add_option("--kmeans-max-iter", ex.kmeans_max_iter,
                                         "clustering iteration cap");
    ex.o_glevels = sub_extract->add_option("--glcm-levels", ex.glcm_levels, "grey levels");
    ex.o_gdist = sub_extract->add_option("--glcm-distance", ex.glcm_distance,
                                         "co-occurrence distance");
    ex.o_crows = sub_extract->add_option("--crop-rows", ex.crop_rows, "center crop height");
    ex.o_ccols = sub_extract->add_option("--crop-cols", ex.crop_cols, "center crop width");

    SynthArgs sy;
    CLI::App* sub_synth =
        app.add_subcommand("synth", "synthetic two-class Gaussian feature table");
    sy.o_n = sub_synth->add_option("--n", sy.n, "instances per class");
    sy.o_dim = sub_synth->add_option("--dim", sy.dim, "feature dimensionality");
    sy.o_sep = sub_synth->add_option("--separation", sy.separation, "distance between class means");
    sy.o_spread = sub_synth->add_option("--spread", sy.spread, "per-axis standard deviation");

    auto add_train_flags = [](CLI::App* sub, TrainFlags& f, bool with_both) {
        f.o_model = sub->add_option("--model", f.model,
                                    with_both ? "som, isom, or both" : "som or isom");
        f.o_epochs = sub->add_option("--epochs", f.epochs, "training epochs");
        f.o_eta0 = sub->add_option("--eta0", f.eta0, "initial learning rate");
        f.o_radius0 = sub->add_option("--radius0", f.radius0,
                                      "initial neighborhood radius (0 = half the map)");
        f.o_shuffle = sub->add_option("--shuffle", f.shuffle, "shuffle each epoch");
        f.o_match = sub->add_option("--match-rule", f.match_rule, "instance or bmu");
        f.o_increment =
            sub->add_option("--increment-rule", f.increment_rule, "selected or bmu_only");
        f.o_reset = sub->add_option("--reset-wcc-each-epoch", f.reset_wcc,
                                    "clear class counters at each epoch start");
    };

    TrainArgs tr;
    CLI::App* sub_train = app.add_subcommand("train", "train a map on a feature table");
    sub_train->add_option("--features", tr.features_path, "features.csv")->required();
    tr.flags.o_rows = sub_train->add_option("--map-rows", tr.flags.map_rows, "map rows");
    tr.flags.o_cols = sub_train->add_option("--map-cols", tr.flags.map_cols, "map columns");
    add_train_flags(sub_train, tr.flags, false);

    PredictArgs pr;
    CLI::App* sub_predict =
        app.add_subcommand("predict", "classify a feature table with a saved model");
    sub_predict->add_option("--model-file", pr.model_path, "saved model")->required();
    sub_predict->add_option("--features", pr.features_path, "features.csv")->required();

    CvArgs cv;
    CLI::App* sub_cv =
        app.add_subcommand("cv", "stratified cross-validated comparison across map sizes");
    sub_cv->add_option("--features", cv.features_path, "features.csv")->required();
    cv.o_sizes = sub_cv->add_option("--map-sizes", cv.map_sizes,
                                    "comma-separated RxC list, e.g. 10x10,15x15");
    cv.o_folds = sub_cv->add_option("--folds", cv.folds, "number of folds");
    add_train_flags(sub_cv, cv.flags, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const KvView kv = load_kv(config_path);
        const std::uint64_t run_seed = kv.getu(o_seed, seed, "seed", 0);
        if (sub_extract->parsed()) cmd_extract(ex, kv, run_seed, out_dir);
        if (sub_synth->parsed()) cmd_synth(sy, kv, run_seed, out_dir);
        if (sub_train->parsed()) cmd_train(tr, kv, run_seed, out_dir);
        if (sub_predict->parsed()) cmd_predict(pr, out_dir);
        if (sub_cv->parsed()) cmd_cv(cv, kv, run_seed, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "texsom: config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "texsom: io error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "texsom: data error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "texsom: error: " << e.what() << "\n";
        return 1;
    }
    (void)o_config;
    return 0;
}
