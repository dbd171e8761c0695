#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <texsom/som.hpp>
#include <texsom/types.hpp>

namespace texsom {

/// Which class a neighbor must agree with before it may move: the class of
/// the presented instance, or the class currently claimed by the BMU.
enum class MatchRule { Instance, Bmu };

/// Which nodes bump their winning-class counter on a presentation: every
/// updated node, or the BMU alone.
enum class IncrementRule { Selected, BmuOnly };

struct IsomTrainConfig : TrainConfig {
    MatchRule match_rule = MatchRule::Instance;
    IncrementRule increment_rule = IncrementRule::Selected;
    bool reset_wcc_each_epoch = true;
};

/// Map whose nodes carry one winning-class counter per class alongside the
/// weight vector.
struct IsomGrid {
    int rows = 0;
    int cols = 0;
    int num_classes = 0;
    Matrix weights;     // num_nodes x dim
    CounterMatrix wcc;  // num_nodes x num_classes

    int num_nodes() const { return rows * cols; }
    GridLocation location(int node) const { return {node / cols, node % cols}; }
    int node_index(int r, int c) const { return r * cols + c; }
};

/// Class affinity read off one counter row: the argmax set, empty while all
/// counters are zero.
struct NodeClass {
    std::vector<int> top;

    bool unclaimed() const { return top.empty(); }
    bool claimed() const { return !top.empty(); }
    bool unique() const { return top.size() == 1; }
    int value() const { return top.front(); }
    bool matches(int cls) const {
        return std::find(top.begin(), top.end(), cls) != top.end();
    }
};

NodeClass node_class(const CounterMatrix& wcc, int node);

/// Same weight initialization as the classical map (bit-identical for equal
/// seeds), counters all zero.
IsomGrid init_isom_grid(int rows, int cols, int dim, int num_classes, std::uint64_t seed);

/// Neighbors of the BMU that pass both gates for class `cls`: neighborhood
/// weight at or above the cutoff, and a counter row that is unclaimed or
/// whose argmax set contains the reference class. Ascending node order.
std::vector<int> eligible_neighbors(const IsomGrid& grid, int bmu, int cls, double sigma,
                                    MatchRule match_rule);

/// What one presentation touched, for instrumentation and tests.
struct StepTrace {
    int bmu = -1;
    std::vector<int> eligible;
};

/// One instance presentation: the BMU always moves (full kernel weight) and
/// always increments its counter for `cls`; eligible neighbors then move
/// with their own kernel weight. Eligibility is evaluated after the BMU's
/// increment.
StepTrace present_instance(IsomGrid& grid, const Vector& x, int cls, double sigma,
                           double eta, const IsomTrainConfig& cfg, UpdateStats& stats);

/// Class-constrained training; schedules, shuffling, and the weight rule
/// are shared with train_som so the classical map is the exact special case
/// of an unconstrained run.
TrainResult train_isom(IsomGrid& grid, const TabularDataset& data,
                       const IsomTrainConfig& cfg);

/// Class of the BMU when it is uniquely claimed, else of the nearest
/// uniquely claimed node by weight distance. Throws DataError when no node
/// is uniquely claimed.
int predict_isom(const IsomGrid& grid, const Vector& x);

}  // namespace texsom
