#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <texsom/isom.hpp>
#include <texsom/rng.hpp>
#include <texsom/som.hpp>

#include "support.hpp"

#include <cmath>
#include <vector>

using namespace texsom;

namespace {

// 3x3 one-dimensional map with hand-set counters; node i holds weight i/10,
// so an instance at 0.42 always wins node 4 (the centre)
IsomGrid counter_fixture() {
    IsomGrid g = init_isom_grid(3, 3, 1, 2, 0);
    for (int n = 0; n < 9; ++n) g.weights(n, 0) = n / 10.0;
    g.wcc.setZero();
    g.wcc.row(0) << 5, 0;  // claims class 0
    g.wcc.row(1) << 0, 5;  // claims class 1
    g.wcc.row(3) << 2, 2;  // tied
    g.wcc.row(5) << 1, 0;
    g.wcc.row(6) << 0, 3;
    g.wcc.row(8) << 4, 4;  // tied
    return g;
}

TabularDataset two_blob_data(int per_class, std::uint64_t seed, double spread = 0.1) {
    Rng rng(seed);
    TabularDataset ds;
    for (int i = 0; i < 2 * per_class; ++i) {
        Transaction t;
        const double centre = (i % 2 == 0) ? 0.2 : 0.8;
        t.values.resize(2);
        t.values[0] = centre + (rng.uniform() - 0.5) * 2 * spread;
        t.values[1] = centre + (rng.uniform() - 0.5) * 2 * spread;
        t.label = i % 2;
        ds.items.push_back(t);
    }
    return ds;
}

IsomTrainConfig isomize(const TrainConfig& base) {
    IsomTrainConfig cfg;
    static_cast<TrainConfig&>(cfg) = base;
    return cfg;
}

}  // namespace

TEST_CASE("node_class reads the argmax set off a counter row") {
    CounterMatrix wcc(3, 2);
    wcc << 0, 0, 3, 1, 2, 2;

    NodeClass zero = node_class(wcc, 0);
    CHECK(zero.unclaimed());
    CHECK_FALSE(zero.claimed());
    CHECK_FALSE(zero.matches(0));

    NodeClass lead = node_class(wcc, 1);
    CHECK(lead.unique());
    CHECK(lead.value() == 0);
    CHECK(lead.matches(0));
    CHECK_FALSE(lead.matches(1));

    NodeClass tie = node_class(wcc, 2);
    CHECK(tie.claimed());
    CHECK_FALSE(tie.unique());
    CHECK(tie.matches(0));
    CHECK(tie.matches(1));
}

TEST_CASE("init_isom_grid shares the classical weight initialization") {
    IsomGrid ig = init_isom_grid(4, 5, 3, 2, 42);
    SomGrid sg = init_grid(4, 5, 3, 42);
    CHECK((ig.weights - sg.weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ig.wcc.rows() == 20);
    CHECK(ig.wcc.cols() == 2);
    CHECK(ig.wcc.cwiseAbs().sum() == 0);
    CHECK(ig.num_classes == 2);
    CHECK_THROWS_AS(init_isom_grid(4, 5, 3, 0, 42), ConfigError);
}

TEST_CASE("eligible_neighbors keeps agreeing or unclaimed nodes") {
    IsomGrid g = counter_fixture();
    const int bmu = find_bmu(g.weights, Vector::Constant(1, 0.42));
    REQUIRE(bmu == 4);

    // wide kernel: the class vote is the only active gate
    auto elig = eligible_neighbors(g, bmu, 0, 10.0, MatchRule::Instance);
    CHECK(elig == std::vector<int>{0, 2, 3, 5, 7, 8});

    auto elig1 = eligible_neighbors(g, bmu, 1, 10.0, MatchRule::Instance);
    CHECK(elig1 == std::vector<int>{1, 2, 3, 6, 7, 8});

    // narrow kernel: even adjacent nodes fall below the cutoff
    auto none = eligible_neighbors(g, bmu, 0, 0.26, MatchRule::Instance);
    CHECK(none.empty());
}

TEST_CASE("present_instance moves the BMU fully and neighbors by kernel") {
    IsomGrid g = counter_fixture();
    IsomTrainConfig cfg;
    UpdateStats stats;
    const double sigma = 10.0;
    const double eta = 0.5;

    StepTrace tr = present_instance(g, Vector::Constant(1, 0.42), 0, sigma, eta, cfg,
                                    stats);
    CHECK(tr.bmu == 4);
    CHECK(tr.eligible == std::vector<int>{0, 2, 3, 5, 7, 8});

    // BMU: full step; eligible neighbor 0: its own kernel weight
    CHECK(g.weights(4, 0) == doctest::Approx(0.41).epsilon(1e-15));
    const double h0 = neighborhood({1, 1}, {0, 0}, sigma);
    CHECK(g.weights(0, 0) == doctest::Approx(0.5 * h0 * 0.42).epsilon(1e-12));

    // vetoed neighbors keep their weights bit for bit
    CHECK(g.weights(1, 0) == 0.1);
    CHECK(g.weights(6, 0) == 0.6);

    // counters: BMU plus every eligible node, class 0 column only
    CHECK(g.wcc(4, 0) == 1);
    CHECK(g.wcc(0, 0) == 6);
    CHECK(g.wcc(3, 0) == 3);
    CHECK(g.wcc(3, 1) == 2);
    CHECK(g.wcc(1, 0) == 0);
    CHECK(g.wcc(1, 1) == 5);
    CHECK(stats.weight_updates == 7);
    CHECK(stats.counter_increments == 7);
}

TEST_CASE("present_instance under bmu-only increments touches one counter") {
    IsomGrid g = counter_fixture();
    IsomTrainConfig cfg;
    cfg.increment_rule = IncrementRule::BmuOnly;
    UpdateStats stats;

    present_instance(g, Vector::Constant(1, 0.42), 0, 10.0, 0.5, cfg, stats);
    CHECK(stats.counter_increments == 1);
    CHECK(g.wcc(4, 0) == 1);
    CHECK(g.wcc(0, 0) == 5);  // eligible node still moves but does not vote
    CHECK(stats.weight_updates == 7);
}

TEST_CASE("bmu match rule constrains against the BMU's claimed class") {
    IsomGrid g = counter_fixture();
    g.wcc.row(4) << 0, 5;  // BMU firmly claims class 1
    IsomTrainConfig cfg;
    cfg.match_rule = MatchRule::Bmu;
    UpdateStats stats;

    StepTrace tr = present_instance(g, Vector::Constant(1, 0.42), 0, 10.0, 0.5, cfg,
                                    stats);
    // the increment for class 0 leaves class 1 on top, so class-1 nodes and
    // the unclaimed/tied ones pass
    CHECK(tr.eligible == std::vector<int>{1, 2, 3, 6, 7, 8});
}

TEST_CASE("present_instance rejects labels outside the class range") {
    IsomGrid g = counter_fixture();
    IsomTrainConfig cfg;
    UpdateStats stats;
    CHECK_THROWS_AS(present_instance(g, Vector::Constant(1, 0.4), 2, 1.0, 0.5, cfg, stats),
                    DataError);
    CHECK_THROWS_AS(present_instance(g, Vector::Constant(1, 0.4), -1, 1.0, 0.5, cfg, stats),
                    DataError);
}

TEST_CASE("single-class training matches the classical map exactly") {
    TabularDataset ds = two_blob_data(12, 8);
    for (Transaction& t : ds.items) t.label = 0;  // one class only

    TrainConfig base;
    base.epochs = 8;
    base.seed = 3;

    SomGrid sg = init_grid(4, 4, 2, 11);
    TrainResult sr = train_som(sg, ds, base);

    IsomGrid ig = init_isom_grid(4, 4, 2, 2, 11);
    TrainResult ir = train_isom(ig, ds, isomize(base));

    CHECK((sg.weights - ig.weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sr.qe_per_epoch == ir.qe_per_epoch);
    CHECK(sr.stats.updates_per_epoch == ir.stats.updates_per_epoch);
}

TEST_CASE("a single-node map trains identically under both algorithms") {
    TabularDataset ds = two_blob_data(10, 21);
    TrainConfig base;
    base.epochs = 6;
    base.seed = 9;

    SomGrid sg = init_grid(1, 1, 2, 5);
    train_som(sg, ds, base);
    IsomGrid ig = init_isom_grid(1, 1, 2, 2, 5);
    train_isom(ig, ds, isomize(base));
    CHECK((sg.weights - ig.weights).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the class vote never updates more nodes than the classical rule") {
    TabularDataset ds = two_blob_data(15, 33);
    TrainConfig base;
    base.epochs = 40;
    base.seed = 2;

    SomGrid sg = init_grid(4, 4, 2, 7);
    TrainResult sr = train_som(sg, ds, base);
    IsomGrid ig = init_isom_grid(4, 4, 2, 2, 7);
    TrainResult ir = train_isom(ig, ds, isomize(base));

    CHECK(ir.stats.weight_updates <= sr.stats.weight_updates);
    CHECK(ir.stats.counter_increments > 0);
    CHECK(ir.qe_per_epoch.back() < ir.qe_per_epoch.front());

    // the trained map separates the two blobs
    int correct = 0;
    for (const Transaction& t : ds.items)
        if (predict_isom(ig, t.values) == t.label) ++correct;
    CHECK(correct >= 27);
}

TEST_CASE("training is bit-for-bit reproducible") {
    TabularDataset ds = two_blob_data(10, 44);
    IsomTrainConfig cfg;
    cfg.epochs = 7;
    cfg.seed = 12;

    IsomGrid a = init_isom_grid(3, 3, 2, 2, 1);
    TrainResult ra = train_isom(a, ds, cfg);
    IsomGrid b = init_isom_grid(3, 3, 2, 2, 1);
    TrainResult rb = train_isom(b, ds, cfg);

    CHECK((a.weights - b.weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.wcc - b.wcc).cwiseAbs().sum() == 0);
    CHECK(ra.stats.weight_updates == rb.stats.weight_updates);
    CHECK(ra.stats.counter_increments == rb.stats.counter_increments);
}

TEST_CASE("counter reset each epoch keeps only the last epoch's votes") {
    TabularDataset ds = two_blob_data(8, 50);

    IsomTrainConfig keep;
    keep.epochs = 3;
    keep.seed = 4;
    keep.reset_wcc_each_epoch = false;
    IsomGrid g1 = init_isom_grid(3, 3, 2, 2, 6);
    TrainResult r1 = train_isom(g1, ds, keep);
    CHECK(std::uint64_t(g1.wcc.sum()) == r1.stats.counter_increments);

    IsomTrainConfig reset = keep;
    reset.reset_wcc_each_epoch = true;
    IsomGrid g2 = init_isom_grid(3, 3, 2, 2, 6);
    TrainResult r2 = train_isom(g2, ds, reset);
    CHECK(std::uint64_t(g2.wcc.sum()) < r2.stats.counter_increments);

    IsomTrainConfig one = reset;
    one.epochs = 1;
    IsomGrid g3 = init_isom_grid(3, 3, 2, 2, 6);
    TrainResult r3 = train_isom(g3, ds, one);
    CHECK(std::uint64_t(g3.wcc.sum()) == r3.stats.counter_increments);
}

TEST_CASE("train_isom validates labels against the class count") {
    IsomGrid g = init_isom_grid(2, 2, 1, 2, 0);
    IsomTrainConfig cfg;

    TabularDataset unlabeled;
    Transaction t;
    t.values = Vector::Constant(1, 0.5);
    t.label = -1;
    unlabeled.items.push_back(t);
    CHECK_THROWS_AS(train_isom(g, unlabeled, cfg), DataError);

    TabularDataset outside;
    t.label = 2;
    outside.items.push_back(t);
    CHECK_THROWS_AS(train_isom(g, outside, cfg), DataError);

    TabularDataset empty;
    CHECK_THROWS_AS(train_isom(g, empty, cfg), DataError);
}

TEST_CASE("predict_isom resolves ties through the nearest unique node") {
    IsomGrid g = init_isom_grid(1, 3, 1, 2, 0);
    g.weights(0, 0) = 0.0;
    g.weights(1, 0) = 0.5;
    g.weights(2, 0) = 1.0;
    g.wcc.row(0) << 3, 0;
    g.wcc.row(1) << 2, 2;  // tied, never answers directly
    g.wcc.row(2) << 0, 4;

    CHECK(predict_isom(g, Vector::Constant(1, 0.05)) == 0);
    CHECK(predict_isom(g, Vector::Constant(1, 0.95)) == 1);
    // BMU is the tied centre node; 0.51 sits nearer node 2 than node 0
    CHECK(predict_isom(g, Vector::Constant(1, 0.51)) == 1);
    CHECK(predict_isom(g, Vector::Constant(1, 0.49)) == 0);

    IsomGrid blank = init_isom_grid(1, 3, 1, 2, 0);
    CHECK_THROWS_AS(predict_isom(blank, Vector::Constant(1, 0.5)), DataError);
}
