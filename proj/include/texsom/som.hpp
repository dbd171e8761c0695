#pragma once

#include <cstdint>
#include <vector>

#include <texsom/types.hpp>

namespace texsom {

/// Nodes whose neighborhood weight falls below this are skipped in a
/// training step.
inline constexpr double kNeighborCutoff = 1e-3;

struct GridLocation {
    int row = 0;
    int col = 0;
};

/// Rectangular map; node (r, c) stores its weight vector in row r*cols + c
/// of `weights`.
struct SomGrid {
    int rows = 0;
    int cols = 0;
    Matrix weights;  // num_nodes x dim

    int num_nodes() const { return rows * cols; }
    GridLocation location(int node) const { return {node / cols, node % cols}; }
    int node_index(int r, int c) const { return r * cols + c; }
};

struct TrainConfig {
    int epochs = 100;
    double eta0 = 0.5;
    double radius0 = 0.0;  // 0 resolves to max(rows, cols) / 2
    std::uint64_t seed = 0;
    bool shuffle = true;

    void validate() const;
    double resolved_radius(int rows, int cols) const;
};

struct UpdateStats {
    std::uint64_t weight_updates = 0;
    std::uint64_t counter_increments = 0;
    std::vector<std::uint64_t> updates_per_epoch;
};

struct TrainResult {
    UpdateStats stats;
    std::vector<double> qe_per_epoch;
};

/// Weights drawn i.i.d. uniform from [0, 1), reproducible from the seed.
SomGrid init_grid(int rows, int cols, int dim, std::uint64_t seed);

/// Index of the node whose weight vector is nearest to x in Euclidean
/// distance; ties resolve to the lowest index.
int find_bmu(const Matrix& weights, const Vector& x);
int find_bmu(const SomGrid& grid, const Vector& x);

/// Exponential per-epoch decay, t counted from 0.
double decayed_sigma(double radius0, int t, int epochs);
double decayed_eta(double eta0, int t, int epochs);

/// Gaussian kernel exp(-d2 / (2 sigma^2)) over squared grid distance.
double kernel_value(double dist2, double sigma);
double neighborhood(const GridLocation& bmu, const GridLocation& node, double sigma);

/// w + eta_h * (x - w), applied in place to one node row. Both map variants
/// funnel their updates through here so matched runs stay bit-identical.
void blend_toward(Matrix& weights, int node, const Vector& x, double eta_h);

/// Pure form of the same rule for inspection: returns w + eta * h * (x - w).
Vector update_weight(const Vector& w, const Vector& x, double eta, double h);

/// Classical training: per epoch, (optionally) shuffle the presentation
/// order, then move the BMU and every neighbor above the cutoff toward each
/// instance. Records per-epoch quantization error and update counts.
TrainResult train_som(SomGrid& grid, const TabularDataset& data, const TrainConfig& cfg);

/// Majority label of the instances mapped to each node; ties go to the
/// smaller class id, nodes that win no instance get -1.
std::vector<int> label_nodes(const SomGrid& grid, const TabularDataset& data);

/// Label of the BMU, falling back to the nearest labeled node (by weight
/// distance to x) when the BMU is unlabeled. Throws DataError when no node
/// carries a label.
int predict_som(const SomGrid& grid, const std::vector<int>& node_labels, const Vector& x);

/// Mean Euclidean distance from each instance to its BMU weight vector.
double quantization_error(const Matrix& weights, const TabularDataset& data);
double quantization_error(const SomGrid& grid, const TabularDataset& data);

}  // namespace texsom
