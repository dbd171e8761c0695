#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <texsom/eval.hpp>
#include <texsom/rng.hpp>

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace texsom;

namespace {

TabularDataset labeled_blobs(int n_neg, int n_pos, std::uint64_t seed, int dim = 2,
                             double neg_centre = 0.2, double pos_centre = 0.8,
                             double spread = 0.1) {
    Rng rng(seed);
    TabularDataset ds;
    for (int i = 0; i < n_neg + n_pos; ++i) {
        Transaction t;
        t.label = i < n_neg ? 0 : 1;
        const double centre = t.label == 0 ? neg_centre : pos_centre;
        t.values.resize(dim);
        for (int d = 0; d < dim; ++d)
            t.values[d] = centre + (rng.uniform() - 0.5) * 2 * spread;
        t.source_id = "b" + std::to_string(i);
        ds.items.push_back(t);
    }
    return ds;
}

}  // namespace

TEST_CASE("confusion counts a hand-built case") {
    std::vector<int> truth = {1, 1, 1, 0, 0, 1};
    std::vector<int> pred = {1, 0, 1, 0, 1, 1};
    ConfusionCounts c = confusion(pred, truth, 1);
    CHECK(c.tp == 3);
    CHECK(c.fn == 1);
    CHECK(c.fp == 1);
    CHECK(c.tn == 1);
    CHECK(c.total() == 6);

    // flipping the positive class swaps the roles
    ConfusionCounts flipped = confusion(pred, truth, 0);
    CHECK(flipped.tp == 1);
    CHECK(flipped.fp == 1);
    CHECK(flipped.fn == 1);
    CHECK(flipped.tn == 3);

    CHECK_THROWS_AS(confusion({1}, {1, 0}, 1), DataError);
}

TEST_CASE("confusion on a perfect 82/60 split") {
    std::vector<int> truth, pred;
    for (int i = 0; i < 82; ++i) truth.push_back(1);
    for (int i = 0; i < 60; ++i) truth.push_back(0);
    pred = truth;
    ConfusionCounts c = confusion(pred, truth, 1);
    CHECK(c.tp == 82);
    CHECK(c.tn == 60);
    CHECK(c.fp == 0);
    CHECK(c.fn == 0);

    std::vector<int> all_pos(truth.size(), 1);
    ConfusionCounts ap = confusion(all_pos, truth, 1);
    CHECK(ap.fn == 0);
    CHECK(ap.tn == 0);
    CHECK(ap.fp == 60);
}

TEST_CASE("precision, recall, and f-score follow their formulas") {
    ConfusionCounts c{3, 1, 1, 1};
    CHECK(precision(c) == doctest::Approx(0.75));
    CHECK(recall(c) == doctest::Approx(0.75));
    CHECK(fscore(c) == doctest::Approx(0.75));  // P == R implies F == P

    CHECK(fscore(0.5, 1.0) == doctest::Approx(2.0 / 3.0));

    ConfusionCounts no_pos_pred{0, 0, 4, 5};
    CHECK(precision(no_pos_pred) == 0.0);
    ConfusionCounts no_pos_truth{0, 3, 0, 5};
    CHECK(recall(no_pos_truth) == 0.0);
    CHECK(fscore(0.0, 0.0) == 0.0);
}

TEST_CASE("published mammogram percentages satisfy the f-score identity") {
    struct Row {
        double p, r, f;
    };
    // iSOM and classical rows for the four map sizes, as percentages
    const std::vector<Row> rows = {
        {94.73, 76.92, 84.9},  {80.39, 79.12, 79.74}, {94.33, 88.76, 91.46},
        {90.9, 79.59, 84.86},  {97.87, 85.26, 91.13}, {98.18, 93.1, 95.57},
        {100.0, 90.84, 95.2},  {92.1, 75.96, 83.25},
    };
    for (const Row& row : rows)
        CHECK(std::abs(fscore(row.p, row.r) - row.f) <= 0.05);
}

TEST_CASE("stratified folds partition 142 instances into 14s and 15s") {
    TabularDataset ds = labeled_blobs(60, 82, 7);
    FoldPlan plan = stratified_kfold(ds, 10, 3);
    REQUIRE(plan.folds.size() == 10);

    std::set<int> seen;
    for (const auto& fold : plan.folds) {
        CHECK(fold.size() >= 14);
        CHECK(fold.size() <= 15);
        int pos = 0;
        for (int i : fold) {
            CHECK(seen.insert(i).second);  // pairwise disjoint
            if (ds.items[size_t(i)].label == 1) ++pos;
        }
        const int neg = int(fold.size()) - pos;
        CHECK(neg == 6);             // 60/10 exactly
        CHECK((pos == 8 || pos == 9));  // 82/10 within one
    }
    CHECK(seen.size() == 142);  // exhaustive

    // deterministic for a fixed seed
    FoldPlan again = stratified_kfold(ds, 10, 3);
    for (int f = 0; f < 10; ++f) CHECK(plan.folds[size_t(f)] == again.folds[size_t(f)]);
}

TEST_CASE("stratification degenerates to leave-one-out on one class") {
    TabularDataset ds = labeled_blobs(6, 0, 1);
    FoldPlan plan = stratified_kfold(ds, 6, 0);
    for (const auto& fold : plan.folds) CHECK(fold.size() == 1);
}

TEST_CASE("stratified_kfold validates k against the class sizes") {
    TabularDataset ds = labeled_blobs(3, 8, 2);
    CHECK_THROWS_AS(stratified_kfold(ds, 4, 0), DataError);  // class 0 has 3 < 4
    CHECK_THROWS_AS(stratified_kfold(ds, 1, 0), ConfigError);
    TabularDataset empty;
    CHECK_THROWS_AS(stratified_kfold(empty, 2, 0), DataError);
}

TEST_CASE("cross_validate scores a perfect classifier at 100%") {
    TabularDataset ds = labeled_blobs(20, 20, 5, 1);
    // after scaling, the two blobs straddle 0.5 on the only attribute
    ModelTrainer stub = [](const TabularDataset&, std::uint64_t) {
        FittedModel m;
        m.classify = [](const Vector& x) { return x[0] > 0.5 ? 1 : 0; };
        m.stats.weight_updates = 11;
        return m;
    };
    MetricsReport r = cross_validate(ds, 4, 9, stub);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.fscore == 1.0);
    CHECK(r.macro_fscore == 1.0);
    CHECK(r.pooled.total() == 40);
    CHECK(r.weight_updates == 44);  // 11 per fold
    REQUIRE(r.folds.size() == 4);
}

TEST_CASE("cross_validate on a majority stub reports prevalence precision") {
    TabularDataset ds = labeled_blobs(58, 82, 6, 1);
    ModelTrainer stub = [](const TabularDataset&, std::uint64_t) {
        FittedModel m;
        m.classify = [](const Vector&) { return 1; };
        return m;
    };
    MetricsReport r = cross_validate(ds, 10, 1, stub);
    CHECK(r.recall == 1.0);
    CHECK(r.precision == doctest::Approx(82.0 / 140.0));
    CHECK(r.pooled.tp == 82);
    CHECK(r.pooled.fp == 58);
    CHECK(r.pooled.fn == 0);
    CHECK(r.pooled.tn == 0);
}

TEST_CASE("cross_validate hands each fold its own derived seed") {
    TabularDataset ds = labeled_blobs(8, 8, 4, 1);
    std::vector<std::uint64_t> seeds;
    ModelTrainer stub = [&seeds](const TabularDataset&, std::uint64_t seed) {
        seeds.push_back(seed);
        FittedModel m;
        m.classify = [](const Vector&) { return 0; };
        return m;
    };
    cross_validate(ds, 4, 100, stub);
    CHECK(seeds == std::vector<std::uint64_t>{100, 101, 102, 103});
}

TEST_CASE("cross_validate normalizes each training split") {
    // raw attributes live in [0, 100]; the trainer and classifier must only
    // ever see the scaled versions
    TabularDataset ds = labeled_blobs(10, 10, 8, 2, 20.0, 80.0, 10.0);
    double max_train_seen = -1e300;
    double max_test_seen = -1e300;
    ModelTrainer stub = [&](const TabularDataset& train, std::uint64_t) {
        for (const Transaction& t : train.items)
            max_train_seen = std::max(max_train_seen, t.values.maxCoeff());
        FittedModel m;
        m.classify = [&max_test_seen](const Vector& x) {
            max_test_seen = std::max(max_test_seen, x.maxCoeff());
            return 0;
        };
        return m;
    };
    cross_validate(ds, 5, 2, stub);
    CHECK(max_train_seen == 1.0);  // min-max scaling hits its endpoints
    CHECK(max_test_seen < 2.0);    // held-out values extrapolate mildly at most
    CHECK(max_test_seen > 0.5);
}

TEST_CASE("map trainers classify separable blobs well under cv") {
    TabularDataset ds = labeled_blobs(24, 24, 10);
    TrainConfig cfg;
    cfg.epochs = 30;

    MetricsReport som_r = cross_validate(ds, 3, 5, make_som_trainer({3, 3}, cfg));
    CHECK(som_r.fscore > 0.8);
    CHECK(som_r.weight_updates > 0);

    IsomTrainConfig icfg;
    icfg.epochs = 30;
    MetricsReport isom_r = cross_validate(ds, 3, 5, make_isom_trainer({3, 3}, icfg));
    CHECK(isom_r.fscore > 0.8);
    CHECK(isom_r.weight_updates > 0);
}

TEST_CASE("compare_models emits one row per size and model") {
    TabularDataset ds = labeled_blobs(12, 12, 3);
    IsomTrainConfig icfg;
    icfg.epochs = 10;
    TrainConfig scfg;
    scfg.epochs = 10;

    ComparisonTable table =
        compare_models(ds, {{2, 2}, {3, 3}}, icfg, scfg, 2, 17);
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0].map_size == "2x2");
    CHECK(table.rows[0].model == "isom");
    CHECK(table.rows[1].map_size == "2x2");
    CHECK(table.rows[1].model == "som");
    CHECK(table.rows[3].map_size == "3x3");

    // every row satisfies the f-score identity against its own P and R
    for (const ComparisonRow& row : table.rows) {
        const MetricsReport& r = row.report;
        if (r.precision + r.recall > 0)
            CHECK(r.fscore ==
                  doctest::Approx(2 * r.precision * r.recall / (r.precision + r.recall))
                      .epsilon(1e-12));
        CHECK(r.precision >= 0.0);
        CHECK(r.precision <= 1.0);
        CHECK(r.recall >= 0.0);
        CHECK(r.recall <= 1.0);
        CHECK(r.fscore >= std::min(r.precision, r.recall) - 1e-12);
        CHECK(r.fscore <= std::max(r.precision, r.recall) + 1e-12);
    }
}

TEST_CASE("render_csv matches the pinned header and is reproducible") {
    TabularDataset ds = labeled_blobs(10, 10, 9);
    IsomTrainConfig icfg;
    icfg.epochs = 8;
    TrainConfig scfg;
    scfg.epochs = 8;

    ComparisonTable t1 = compare_models(ds, {{2, 2}}, icfg, scfg, 2, 4);
    ComparisonTable t2 = compare_models(ds, {{2, 2}}, icfg, scfg, 2, 4);
    const std::string csv = render_csv(t1);
    CHECK(csv == render_csv(t2));  // identical invocation, identical report

    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "map_size,model,precision,recall,fscore,updates");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
        CHECK(line.rfind("2x2,", 0) == 0);
    }
    CHECK(rows == 2);

    const std::string table_text = render_table(t1);
    CHECK(table_text.find("isom") != std::string::npos);
    CHECK(table_text.find("som") != std::string::npos);
    CHECK(table_text.find("2x2") != std::string::npos);
}
