#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace texsom {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Integer pixel storage, row-major to match image scan order.
using PixelMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Per-node class counters (nodes x classes).
using CounterMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Error taxonomy. The CLI maps each branch to a distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameter or configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File cannot be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input data inconsistent with the requested operation.
class DataError : public Error {
public:
    using Error::Error;
};

/// Malformed file content; messages carry the offending location.
class ParseError : public DataError {
public:
    using DataError::DataError;
};

/// 8-bit grayscale image, intensities in [0, 255].
struct GrayImage {
    PixelMatrix pixels;

    int height() const { return static_cast<int>(pixels.rows()); }
    int width() const { return static_cast<int>(pixels.cols()); }
};

/// Image reduced to `levels` grey levels, values in [0, levels).
struct QuantizedImage {
    PixelMatrix pixels;
    int levels = 0;

    int height() const { return static_cast<int>(pixels.rows()); }
    int width() const { return static_cast<int>(pixels.cols()); }
};

/// Axis-aligned pixel rectangle (top-left corner plus extent).
struct Rect {
    int row0 = 0;
    int col0 = 0;
    int rows = 0;
    int cols = 0;
};

/// One instance of the tabular dataset: feature vector plus class label.
/// label -1 means "unknown" (prediction-only data).
struct Transaction {
    Vector values;
    int label = -1;
    std::string source_id;
};

struct TabularDataset {
    std::vector<Transaction> items;

    Eigen::Index dim() const { return items.empty() ? 0 : items.front().values.size(); }
    std::size_t size() const { return items.size(); }
    bool empty() const { return items.empty(); }

    /// Histogram of labels; index = class. Ignores unknown (-1) labels.
    std::vector<std::int64_t> class_counts() const;
    int num_classes() const;

    /// Throws DataError if rows are ragged or any label is unknown.
    void validate_for_training() const;
};

}  // namespace texsom
