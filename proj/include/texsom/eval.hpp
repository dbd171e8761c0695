#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <texsom/isom.hpp>
#include <texsom/som.hpp>
#include <texsom/types.hpp>

namespace texsom {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }
    ConfusionCounts& operator+=(const ConfusionCounts& o);
};

ConfusionCounts confusion(const std::vector<int>& predicted,
                          const std::vector<int>& truth, int positive_class);

/// TP/(TP+FP) and TP/(TP+FN); a 0/0 denominator yields 0 with a warning on
/// stderr.
double precision(const ConfusionCounts& c);
double recall(const ConfusionCounts& c);

/// Harmonic mean 2PR/(P+R); homogeneous, so fractions in and fractions out
/// or percentages in and percentages out.
double fscore(double p, double r);
double fscore(const ConfusionCounts& c);

/// k disjoint index folds covering the dataset, class proportions within
/// one instance of the global ones (seeded shuffle within each class, then
/// round-robin).
struct FoldPlan {
    std::vector<std::vector<int>> folds;
};

FoldPlan stratified_kfold(const TabularDataset& ds, int k, std::uint64_t seed);

/// A trained classifier handed back by a trainer, with its training cost.
struct FittedModel {
    std::function<int(const Vector&)> classify;
    UpdateStats stats;
};

/// Builds a FittedModel from a (already normalized) training split and a
/// fold-specific seed.
using ModelTrainer = std::function<FittedModel(const TabularDataset&, std::uint64_t)>;

struct FoldResult {
    ConfusionCounts counts;
    double precision = 0.0;
    double recall = 0.0;
    double fscore = 0.0;
};

struct MetricsReport {
    std::vector<FoldResult> folds;
    ConfusionCounts pooled;
    // micro average: metrics of the pooled counts
    double precision = 0.0;
    double recall = 0.0;
    double fscore = 0.0;
    // macro average: mean of the per-fold metrics
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_fscore = 0.0;
    std::uint64_t weight_updates = 0;
};

/// Per fold: fit min-max normalization on the training split, train via
/// `trainer` with seed base_seed + fold, classify the held-out split. Folds
/// pool into micro metrics; per-fold metrics average into macro ones.
MetricsReport cross_validate(const TabularDataset& ds, int k, std::uint64_t base_seed,
                             const ModelTrainer& trainer, int positive_class = 1);

struct GridSize {
    int rows = 0;
    int cols = 0;
};

/// Classical map: train, label nodes by majority, classify by (possibly
/// fallback) BMU label.
ModelTrainer make_som_trainer(GridSize size, TrainConfig cfg);

/// Counter-carrying map: train with the class vote, classify by claimed
/// node class.
ModelTrainer make_isom_trainer(GridSize size, IsomTrainConfig cfg);

struct ComparisonRow {
    std::string map_size;  // e.g. "10x10"
    std::string model;     // "isom" or "som"
    MetricsReport report;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
};

/// Cross-validate both map variants over each grid size.
ComparisonTable compare_models(const TabularDataset& ds,
                               const std::vector<GridSize>& sizes,
                               const IsomTrainConfig& isom_cfg, const TrainConfig& som_cfg,
                               int k, std::uint64_t seed);

/// Human-readable table; metrics as percentages.
std::string render_table(const ComparisonTable& table);

/// `map_size,model,precision,recall,fscore,updates` rows; metrics as
/// percentages with 9 significant digits.
std::string render_csv(const ComparisonTable& table);

}  // namespace texsom
