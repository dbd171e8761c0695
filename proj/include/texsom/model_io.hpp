#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <texsom/features.hpp>
#include <texsom/isom.hpp>
#include <texsom/som.hpp>

namespace texsom {

/// Classical map plus the node labeling that turns it into a classifier.
struct SomModel {
    SomGrid grid;
    std::vector<int> node_labels;  // -1 for unlabeled nodes
    int num_classes = 0;
    std::optional<MinMaxScaler> scaler;
};

/// Counter-carrying map; the counters themselves are the classifier.
struct IsomModel {
    IsomGrid grid;
    std::optional<MinMaxScaler> scaler;
};

using Model = std::variant<SomModel, IsomModel>;

int model_dim(const Model& model);
std::string model_kind(const Model& model);

/// Versioned text document:
///   texsom-model 1
///   kind (som|isom) / rows / cols / dim / classes
///   optional scale_min + scale_range rows (fitted normalization)
///   one node record per line, row-major:
///     som:  node r c label (L|-) weights w...
///     isom: node r c wcc c0..c{m-1} weights w...
/// Weights carry 9 significant digits; counters are written losslessly.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

/// Classify x with either model kind, applying the stored normalization
/// first when present.
int predict(const Model& model, const Vector& x);

}  // namespace texsom
