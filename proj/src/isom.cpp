#include <texsom/isom.hpp>

#include <texsom/rng.hpp>

#include <numeric>
#include <string>

namespace texsom {

NodeClass node_class(const CounterMatrix& wcc, int node) {
    NodeClass nc;
    std::int64_t best = 0;
    for (int c = 0; c < wcc.cols(); ++c) {
        const std::int64_t v = wcc(node, c);
        if (v > best) {
            best = v;
            nc.top.clear();
        }
        if (v == best && best > 0) nc.top.push_back(c);
    }
    return nc;
}

IsomGrid init_isom_grid(int rows, int cols, int dim, int num_classes, std::uint64_t seed) {
    if (num_classes < 1)
        throw ConfigError("grid: num_classes must be >= 1, got " +
                          std::to_string(num_classes));
    SomGrid base = init_grid(rows, cols, dim, seed);

    IsomGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.num_classes = num_classes;
    grid.weights = std::move(base.weights);
    grid.wcc = CounterMatrix::Zero(grid.num_nodes(), num_classes);
    return grid;
}

std::vector<int> eligible_neighbors(const IsomGrid& grid, int bmu, int cls, double sigma,
                                    MatchRule match_rule) {
    // reference class set the neighbor must agree with; an unclaimed BMU
    // falls back to the instance class it is about to claim
    NodeClass ref;
    if (match_rule == MatchRule::Bmu) ref = node_class(grid.wcc, bmu);
    if (ref.unclaimed()) ref.top = {cls};

    const GridLocation bmu_loc = grid.location(bmu);
    std::vector<int> eligible;
    for (int n = 0; n < grid.num_nodes(); ++n) {
        if (n == bmu) continue;
        if (neighborhood(bmu_loc, grid.location(n), sigma) < kNeighborCutoff) continue;
        const NodeClass nc = node_class(grid.wcc, n);
        const bool agrees = nc.unclaimed() ||
                            std::any_of(ref.top.begin(), ref.top.end(),
                                        [&](int r) { return nc.matches(r); });
        if (agrees) eligible.push_back(n);
    }
    return eligible;
}

StepTrace present_instance(IsomGrid& grid, const Vector& x, int cls, double sigma,
                           double eta, const IsomTrainConfig& cfg, UpdateStats& stats) {
    if (cls < 0 || cls >= grid.num_classes)
        throw DataError("train: class " + std::to_string(cls) + " outside [0, " +
                        std::to_string(grid.num_classes) + ")");

    StepTrace trace;
    trace.bmu = find_bmu(grid.weights, x);
    blend_toward(grid.weights, trace.bmu, x, eta * 1.0);
    ++stats.weight_updates;
    ++grid.wcc(trace.bmu, cls);
    ++stats.counter_increments;

    trace.eligible = eligible_neighbors(grid, trace.bmu, cls, sigma, cfg.match_rule);
    const GridLocation bmu_loc = grid.location(trace.bmu);
    for (int n : trace.eligible) {
        const double h = neighborhood(bmu_loc, grid.location(n), sigma);
        blend_toward(grid.weights, n, x, eta * h);
        ++stats.weight_updates;
        if (cfg.increment_rule == IncrementRule::Selected) {
            ++grid.wcc(n, cls);
            ++stats.counter_increments;
        }
    }
    return trace;
}

TrainResult train_isom(IsomGrid& grid, const TabularDataset& data,
                       const IsomTrainConfig& cfg) {
    cfg.validate();
    data.validate_for_training();
    for (const Transaction& t : data.items) {
        if (t.values.size() != grid.weights.cols())
            throw DataError("train: instance dim " + std::to_string(t.values.size()) +
                            " does not match map dim " +
                            std::to_string(grid.weights.cols()));
        if (t.label >= grid.num_classes)
            throw DataError("train: label " + std::to_string(t.label) +
                            " outside the map's " + std::to_string(grid.num_classes) +
                            " classes");
    }

    Rng rng(cfg.seed);
    std::vector<int> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    const double radius = cfg.resolved_radius(grid.rows, grid.cols);

    TrainResult res;
    for (int t = 0; t < cfg.epochs; ++t) {
        const double sigma = decayed_sigma(radius, t, cfg.epochs);
        const double eta = decayed_eta(cfg.eta0, t, cfg.epochs);
        if (cfg.reset_wcc_each_epoch) grid.wcc.setZero();
        if (cfg.shuffle) rng.shuffle(order);

        const std::uint64_t before = res.stats.weight_updates;
        for (int idx : order) {
            const Transaction& item = data.items[size_t(idx)];
            present_instance(grid, item.values, item.label, sigma, eta, cfg, res.stats);
        }
        res.stats.updates_per_epoch.push_back(res.stats.weight_updates - before);
        res.qe_per_epoch.push_back(quantization_error(grid.weights, data));
    }
    return res;
}

int predict_isom(const IsomGrid& grid, const Vector& x) {
    const int bmu = find_bmu(grid.weights, x);
    const NodeClass bc = node_class(grid.wcc, bmu);
    if (bc.unique()) return bc.value();

    int best = -1;
    double best_d = 0.0;
    int best_cls = -1;
    for (int n = 0; n < grid.num_nodes(); ++n) {
        const NodeClass nc = node_class(grid.wcc, n);
        if (!nc.unique()) continue;
        const double d = (grid.weights.row(n).transpose() - x).squaredNorm();
        if (best < 0 || d < best_d) {
            best = n;
            best_d = d;
            best_cls = nc.value();
        }
    }
    if (best < 0)
        throw DataError("predict: no uniquely claimed node in the map");
    return best_cls;
}

}  // namespace texsom
