#include <texsom/eval.hpp>

#include <texsom/features.hpp>
#include <texsom/rng.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace texsom {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
}

ConfusionCounts confusion(const std::vector<int>& predicted,
                          const std::vector<int>& truth, int positive_class) {
    if (predicted.size() != truth.size())
        throw DataError("confusion: " + std::to_string(predicted.size()) +
                        " predictions against " + std::to_string(truth.size()) +
                        " truths");
    ConfusionCounts c;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool pred_pos = predicted[i] == positive_class;
        const bool true_pos = truth[i] == positive_class;
        if (pred_pos && true_pos)
            ++c.tp;
        else if (pred_pos)
            ++c.fp;
        else if (true_pos)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

double precision(const ConfusionCounts& c) {
    if (c.tp + c.fp == 0) {
        std::cerr << "warning: precision undefined (no positive predictions); "
                     "reporting 0\n";
        return 0.0;
    }
    return double(c.tp) / double(c.tp + c.fp);
}

double recall(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0) {
        std::cerr << "warning: recall undefined (no positive instances); reporting 0\n";
        return 0.0;
    }
    return double(c.tp) / double(c.tp + c.fn);
}

double fscore(double p, double r) {
    if (p + r == 0.0) {
        std::cerr << "warning: f-score undefined (precision and recall both 0); "
                     "reporting 0\n";
        return 0.0;
    }
    return 2.0 * p * r / (p + r);
}

double fscore(const ConfusionCounts& c) { return fscore(precision(c), recall(c)); }

FoldPlan stratified_kfold(const TabularDataset& ds, int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("kfold: k must be >= 2, got " + std::to_string(k));
    ds.validate_for_training();

    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < int(ds.size()); ++i) by_class[ds.items[size_t(i)].label].push_back(i);

    Rng rng(seed);
    FoldPlan plan;
    plan.folds.resize(static_cast<std::size_t>(k));
    for (auto& [cls, members] : by_class) {
        if (int(members.size()) < k)
            throw DataError("kfold: class " + std::to_string(cls) + " has " +
                            std::to_string(members.size()) + " instances, fewer than k=" +
                            std::to_string(k));
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i)
            plan.folds[i % size_t(k)].push_back(members[i]);
    }
    return plan;
}

namespace {

TabularDataset subset(const TabularDataset& ds, const std::vector<int>& idx) {
    TabularDataset out;
    out.items.reserve(idx.size());
    for (int i : idx) out.items.push_back(ds.items[size_t(i)]);
    return out;
}

FoldResult score_counts(const ConfusionCounts& c) {
    FoldResult r;
    r.counts = c;
    r.precision = precision(c);
    r.recall = recall(c);
    r.fscore = fscore(r.precision, r.recall);
    return r;
}

}  // namespace

MetricsReport cross_validate(const TabularDataset& ds, int k, std::uint64_t base_seed,
                             const ModelTrainer& trainer, int positive_class) {
    const FoldPlan plan = stratified_kfold(ds, k, base_seed);

    MetricsReport report;
    for (int f = 0; f < k; ++f) {
        std::vector<int> train_idx;
        for (int g = 0; g < k; ++g)
            if (g != f)
                train_idx.insert(train_idx.end(), plan.folds[size_t(g)].begin(),
                                 plan.folds[size_t(g)].end());

        TabularDataset train = subset(ds, train_idx);
        const MinMaxScaler scaler = fit_minmax(train.items);
        train.items = apply_scaler(scaler, train.items);

        const FittedModel fitted = trainer(train, base_seed + std::uint64_t(f));
        report.weight_updates += fitted.stats.weight_updates;

        std::vector<int> predicted, truth;
        for (int i : plan.folds[size_t(f)]) {
            const Transaction& t = ds.items[size_t(i)];
            predicted.push_back(fitted.classify(scaler.apply(t.values)));
            truth.push_back(t.label);
        }
        const ConfusionCounts c = confusion(predicted, truth, positive_class);
        report.folds.push_back(score_counts(c));
        report.pooled += c;
    }

    const FoldResult pooled = score_counts(report.pooled);
    report.precision = pooled.precision;
    report.recall = pooled.recall;
    report.fscore = pooled.fscore;
    for (const FoldResult& fr : report.folds) {
        report.macro_precision += fr.precision / double(k);
        report.macro_recall += fr.recall / double(k);
        report.macro_fscore += fr.fscore / double(k);
    }
    return report;
}

ModelTrainer make_som_trainer(GridSize size, TrainConfig cfg) {
    return [size, cfg](const TabularDataset& train, std::uint64_t seed) {
        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = seed;
        auto grid = std::make_shared<SomGrid>(
            init_grid(size.rows, size.cols, int(train.dim()), seed));
        FittedModel fitted;
        fitted.stats = train_som(*grid, train, fold_cfg).stats;
        auto labels = std::make_shared<std::vector<int>>(label_nodes(*grid, train));
        fitted.classify = [grid, labels](const Vector& x) {
            return predict_som(*grid, *labels, x);
        };
        return fitted;
    };
}

ModelTrainer make_isom_trainer(GridSize size, IsomTrainConfig cfg) {
    return [size, cfg](const TabularDataset& train, std::uint64_t seed) {
        IsomTrainConfig fold_cfg = cfg;
        fold_cfg.seed = seed;
        auto grid = std::make_shared<IsomGrid>(init_isom_grid(
            size.rows, size.cols, int(train.dim()), train.num_classes(), seed));
        FittedModel fitted;
        fitted.stats = train_isom(*grid, train, fold_cfg).stats;
        fitted.classify = [grid](const Vector& x) { return predict_isom(*grid, x); };
        return fitted;
    };
}

ComparisonTable compare_models(const TabularDataset& ds,
                               const std::vector<GridSize>& sizes,
                               const IsomTrainConfig& isom_cfg, const TrainConfig& som_cfg,
                               int k, std::uint64_t seed) {
    ComparisonTable table;
    for (const GridSize& size : sizes) {
        const std::string name =
            std::to_string(size.rows) + "x" + std::to_string(size.cols);
        table.rows.push_back(
            {name, "isom",
             cross_validate(ds, k, seed, make_isom_trainer(size, isom_cfg))});
        table.rows.push_back(
            {name, "som", cross_validate(ds, k, seed, make_som_trainer(size, som_cfg))});
    }
    return table;
}

namespace {

std::string pct9(double fraction) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", fraction * 100.0);
    return buf;
}

std::string pct2(double fraction) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%6.2f", fraction * 100.0);
    return buf;
}

}  // namespace

std::string render_table(const ComparisonTable& table) {
    std::ostringstream out;
    out << "map size  model  precision  recall  f-score  "
           "macro-P  macro-R  macro-F   updates\n";
    for (const ComparisonRow& row : table.rows) {
        const MetricsReport& r = row.report;
        char line[200];
        std::snprintf(line, sizeof line, "%-8s  %-5s  %9s  %6s  %7s  %7s  %7s  %7s  %8llu\n",
                      row.map_size.c_str(), row.model.c_str(), pct2(r.precision).c_str(),
                      pct2(r.recall).c_str(), pct2(r.fscore).c_str(),
                      pct2(r.macro_precision).c_str(), pct2(r.macro_recall).c_str(),
                      pct2(r.macro_fscore).c_str(),
                      static_cast<unsigned long long>(r.weight_updates));
        out << line;
    }
    return out.str();
}

std::string render_csv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "map_size,model,precision,recall,fscore,updates\n";
    for (const ComparisonRow& row : table.rows) {
        const MetricsReport& r = row.report;
        out << row.map_size << ',' << row.model << ',' << pct9(r.precision) << ','
            << pct9(r.recall) << ',' << pct9(r.fscore) << ',' << r.weight_updates << '\n';
    }
    return out.str();
}

}  // namespace texsom
