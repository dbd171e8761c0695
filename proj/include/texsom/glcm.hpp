#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include <texsom/types.hpp>

namespace texsom {

/// Pixel displacement (row delta, column delta).
struct Offset {
    int dr = 0;
    int dc = 0;
};

/// A grey-level co-occurrence matrix: G x G pair counts, or co-occurrence
/// probabilities once normalized.
using GlcmMatrix = Matrix;

struct GlcmConfig {
    int levels = 32;
    int distance = 1;
    /// Unit directions; the effective displacement is direction * distance.
    std::vector<Offset> orientations = {{0, 1}, {1, 0}, {1, 1}, {1, -1}};
    bool symmetric = true;
    bool normalize = true;

    void validate() const;
};

/// Uniform binning p -> floor(p * levels / 256).
QuantizedImage quantize(const GrayImage& img, int levels);

/// Count grey-level pairs (p, p + offset). In symmetric mode each pair is
/// counted in both directions; in normalized mode counts are divided by the
/// total pair count. Throws DataError when the offset leaves no valid pair.
GlcmMatrix compute_glcm(const QuantizedImage& img, Offset offset,
                        bool symmetric = true, bool normalize = true);

/// Element-wise mean of matrices of equal size (all normalized).
GlcmMatrix average_glcm(const std::vector<GlcmMatrix>& mats);

// The four texture statistics, defined over a normalized co-occurrence
// matrix. Free functions over any dense expression.

/// Sum of C_ij * |i - j|.
template <typename Derived>
double dissimilarity(const Eigen::MatrixBase<Derived>& m) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            sum += static_cast<double>(m(i, j)) * std::abs(static_cast<double>(i - j));
    return sum;
}

/// Sum of C_ij^2 (also called energy or angular second moment).
template <typename Derived>
double uniformity(const Eigen::MatrixBase<Derived>& m) {
    return m.array().square().sum();
}

/// -Sum of C_ij * log2(C_ij), with 0 * log 0 taken as 0.
template <typename Derived>
double entropy(const Eigen::MatrixBase<Derived>& m) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double p = static_cast<double>(m(i, j));
            if (p > 0.0) sum -= p * std::log2(p);
        }
    return sum;
}

/// Sum of C_ij * (i - j)^2.
template <typename Derived>
double contrast(const Eigen::MatrixBase<Derived>& m) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double d = static_cast<double>(i - j);
            sum += static_cast<double>(m(i, j)) * d * d;
        }
    return sum;
}

/// [dissimilarity, uniformity, entropy, contrast] of the orientation-averaged
/// co-occurrence matrix of `img` under `cfg`.
Eigen::Vector4d texture_vector(const QuantizedImage& img, const GlcmConfig& cfg);

}  // namespace texsom
