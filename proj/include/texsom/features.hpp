#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <texsom/glcm.hpp>
#include <texsom/types.hpp>

namespace texsom {

/// Partition of an image into SN sub-images, each split into M blocs.
/// Sub-images and blocs are stored row-major.
struct BlocGrid {
    std::vector<Rect> sub_images;
    std::vector<std::vector<Rect>> blocs;  // blocs[s] lists sub-image s's M blocs
};

/// Split [0, extent) into `parts` contiguous spans; remainder pixels go to
/// the last span. Returns (offset, size) pairs.
std::vector<std::pair<int, int>> split_spans(int extent, int parts);

/// Tile a height x width image with SN near-square sub-images, each tiled by
/// M near-square blocs. Throws DataError when any bloc would be smaller than
/// 2x2 pixels.
BlocGrid partition(int height, int width, int sn, int m);
BlocGrid partition(const GrayImage& img, int sn, int m);

/// One texture vector per bloc, grouped by parent sub-image.
std::vector<std::vector<Eigen::Vector4d>> bloc_features(const BlocGrid& grid,
                                                        const QuantizedImage& img,
                                                        const GlcmConfig& cfg);

struct ClusterModel {
    Matrix centroids;               // k x dim
    std::vector<int> assignments;   // per input row
    std::vector<double> inertia_history;
    double inertia = 0.0;
    int iterations = 0;
};

/// Lloyd's algorithm over the rows of `points`, k-means++ seeding from
/// `seed`, stopping at an assignment fixpoint or after max_iter rounds.
/// Empty clusters are repaired by re-seeding to the farthest point.
ClusterModel kmeans(const Matrix& points, int k, std::uint64_t seed, int max_iter = 100);

/// Centroids ordered ascending by first component, lexicographic tiebreak,
/// so positions are comparable across images.
std::vector<Vector> cluster_representatives(const ClusterModel& model);

struct PipelineConfig {
    int sn = 6;
    int m_blocs = 8;
    int l_clusters = 3;
    std::uint64_t kmeans_seed = 1;
    int kmeans_max_iter = 100;
    GlcmConfig glcm;

    /// Transaction dimensionality: SN * L * 4.
    int transaction_dim() const { return sn * l_clusters * 4; }
    void validate() const;
};

/// Full bloc-wise extraction for one image: partition, per-bloc texture
/// vectors, per-sub-image clustering, ordered representatives concatenated
/// into one fixed-length labeled transaction.
Transaction build_transaction(const GrayImage& img, int label, const PipelineConfig& cfg,
                              std::string source_id = {});

/// Per-attribute min-max scaling fitted on a training split.
struct MinMaxScaler {
    Vector min;
    Vector range;  // max - min; 0 marks a constant attribute

    /// (x - min) / range per attribute; constant attributes map to 0.
    /// No clamping: held-out values may fall outside [0, 1].
    Vector apply(const Vector& x) const;
};

MinMaxScaler fit_minmax(const std::vector<Transaction>& transactions);
std::vector<Transaction> apply_scaler(const MinMaxScaler& scaler,
                                      const std::vector<Transaction>& transactions);
std::pair<std::vector<Transaction>, MinMaxScaler> normalize_dataset(
    const std::vector<Transaction>& transactions);

}  // namespace texsom
