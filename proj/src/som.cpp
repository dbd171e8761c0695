#include <texsom/som.hpp>

#include <texsom/rng.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace texsom {

void TrainConfig::validate() const {
    if (epochs < 1)
        throw ConfigError("train: epochs must be >= 1, got " + std::to_string(epochs));
    if (!(eta0 > 0.0) || eta0 > 1.0)
        throw ConfigError("train: eta0 must be in (0, 1], got " + std::to_string(eta0));
    if (radius0 < 0.0)
        throw ConfigError("train: radius0 must be >= 0, got " + std::to_string(radius0));
}

double TrainConfig::resolved_radius(int rows, int cols) const {
    return radius0 > 0.0 ? radius0 : std::max(rows, cols) / 2.0;
}

SomGrid init_grid(int rows, int cols, int dim, std::uint64_t seed) {
    if (rows < 1 || cols < 1)
        throw ConfigError("grid: size must be at least 1x1, got " + std::to_string(rows) +
                          "x" + std::to_string(cols));
    if (dim < 1) throw ConfigError("grid: dim must be >= 1, got " + std::to_string(dim));

    SomGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.weights.resize(rows * cols, dim);
    Rng rng(seed);
    for (int n = 0; n < grid.num_nodes(); ++n)
        for (int d = 0; d < dim; ++d) grid.weights(n, d) = rng.uniform();
    return grid;
}

int find_bmu(const Matrix& weights, const Vector& x) {
    if (weights.rows() == 0) throw DataError("find_bmu: empty map");
    if (weights.cols() != x.size())
        throw DataError("find_bmu: instance dim " + std::to_string(x.size()) +
                        " does not match map dim " + std::to_string(weights.cols()));
    int best = 0;
    double best_d = (weights.row(0).transpose() - x).squaredNorm();
    for (int n = 1; n < weights.rows(); ++n) {
        const double d = (weights.row(n).transpose() - x).squaredNorm();
        if (d < best_d) {
            best = n;
            best_d = d;
        }
    }
    return best;
}

int find_bmu(const SomGrid& grid, const Vector& x) { return find_bmu(grid.weights, x); }

double decayed_sigma(double radius0, int t, int epochs) {
    return radius0 * std::exp(-double(t) / double(epochs));
}

double decayed_eta(double eta0, int t, int epochs) {
    return eta0 * std::exp(-double(t) / double(epochs));
}

double kernel_value(double dist2, double sigma) {
    if (!(sigma > 0.0))
        throw ConfigError("kernel: sigma must be positive, got " + std::to_string(sigma));
    return std::exp(-dist2 / (2.0 * sigma * sigma));
}

double neighborhood(const GridLocation& bmu, const GridLocation& node, double sigma) {
    const double dr = bmu.row - node.row;
    const double dc = bmu.col - node.col;
    return kernel_value(dr * dr + dc * dc, sigma);
}

void blend_toward(Matrix& weights, int node, const Vector& x, double eta_h) {
    weights.row(node) += eta_h * (x.transpose() - weights.row(node));
}

Vector update_weight(const Vector& w, const Vector& x, double eta, double h) {
    return w + eta * h * (x - w);
}

namespace {

void check_trainable(const Matrix& weights, const TabularDataset& data) {
    if (data.empty()) throw DataError("train: empty dataset");
    for (const Transaction& t : data.items)
        if (t.values.size() != weights.cols())
            throw DataError("train: instance dim " + std::to_string(t.values.size()) +
                            " does not match map dim " + std::to_string(weights.cols()));
}

}  // namespace

TrainResult train_som(SomGrid& grid, const TabularDataset& data, const TrainConfig& cfg) {
    cfg.validate();
    check_trainable(grid.weights, data);

    Rng rng(cfg.seed);
    std::vector<int> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    const double radius = cfg.resolved_radius(grid.rows, grid.cols);

    TrainResult res;
    for (int t = 0; t < cfg.epochs; ++t) {
        const double sigma = decayed_sigma(radius, t, cfg.epochs);
        const double eta = decayed_eta(cfg.eta0, t, cfg.epochs);
        if (cfg.shuffle) rng.shuffle(order);

        std::uint64_t epoch_updates = 0;
        for (int idx : order) {
            const Vector& x = data.items[size_t(idx)].values;
            const int bmu = find_bmu(grid.weights, x);
            const GridLocation bmu_loc = grid.location(bmu);
            for (int n = 0; n < grid.num_nodes(); ++n) {
                const double h =
                    (n == bmu) ? 1.0 : neighborhood(bmu_loc, grid.location(n), sigma);
                if (h < kNeighborCutoff) continue;
                blend_toward(grid.weights, n, x, eta * h);
                ++epoch_updates;
            }
        }
        res.stats.updates_per_epoch.push_back(epoch_updates);
        res.stats.weight_updates += epoch_updates;
        res.qe_per_epoch.push_back(quantization_error(grid, data));
    }
    return res;
}

std::vector<int> label_nodes(const SomGrid& grid, const TabularDataset& data) {
    data.validate_for_training();
    check_trainable(grid.weights, data);

    std::vector<std::map<int, int>> votes(static_cast<std::size_t>(grid.num_nodes()));
    for (const Transaction& t : data.items)
        ++votes[size_t(find_bmu(grid.weights, t.values))][t.label];

    std::vector<int> labels(static_cast<std::size_t>(grid.num_nodes()), -1);
    for (int n = 0; n < grid.num_nodes(); ++n) {
        int best_label = -1;
        int best_count = 0;
        for (const auto& [label, count] : votes[size_t(n)]) {
            // std::map iterates labels ascending, so a tie keeps the smaller
            if (count > best_count) {
                best_label = label;
                best_count = count;
            }
        }
        labels[size_t(n)] = best_label;
    }
    return labels;
}

int predict_som(const SomGrid& grid, const std::vector<int>& node_labels, const Vector& x) {
    if (node_labels.size() != static_cast<std::size_t>(grid.num_nodes()))
        throw DataError("predict: label table size does not match the map");
    const int bmu = find_bmu(grid.weights, x);
    if (node_labels[size_t(bmu)] >= 0) return node_labels[size_t(bmu)];

    int best = -1;
    double best_d = 0.0;
    for (int n = 0; n < grid.num_nodes(); ++n) {
        if (node_labels[size_t(n)] < 0) continue;
        const double d = (grid.weights.row(n).transpose() - x).squaredNorm();
        if (best < 0 || d < best_d) {
            best = n;
            best_d = d;
        }
    }
    if (best < 0) throw DataError("predict: no labeled node in the map");
    return node_labels[size_t(best)];
}

double quantization_error(const Matrix& weights, const TabularDataset& data) {
    check_trainable(weights, data);
    double total = 0.0;
    for (const Transaction& t : data.items) {
        const int bmu = find_bmu(weights, t.values);
        total += (weights.row(bmu).transpose() - t.values).norm();
    }
    return total / double(data.size());
}

double quantization_error(const SomGrid& grid, const TabularDataset& data) {
    return quantization_error(grid.weights, data);
}

}  // namespace texsom
