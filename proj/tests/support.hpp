#pragma once

// Shared helpers for the test suites: independent brute-force oracles and
// small data generators. Everything here is deliberately naive — the oracles
// must not share code paths with the implementation they check.

#include <texsom/glcm.hpp>
#include <texsom/rng.hpp>
#include <texsom/types.hpp>

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace test_support {

inline texsom::GrayImage make_gray(int rows, int cols, std::initializer_list<int> vals) {
    texsom::GrayImage img;
    img.pixels.resize(rows, cols);
    auto it = vals.begin();
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) img.pixels(r, c) = *it++;
    return img;
}

inline texsom::QuantizedImage make_quantized(int rows, int cols, int levels,
                                             std::initializer_list<int> vals) {
    texsom::QuantizedImage img;
    img.levels = levels;
    img.pixels.resize(rows, cols);
    auto it = vals.begin();
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) img.pixels(r, c) = *it++;
    return img;
}

inline texsom::QuantizedImage random_quantized(int rows, int cols, int levels,
                                               texsom::Rng& rng) {
    texsom::QuantizedImage img;
    img.levels = levels;
    img.pixels.resize(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            img.pixels(r, c) = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(levels)));
    return img;
}

/// Brute-force co-occurrence counts: enumerate every ordered pixel pair
/// ((r1,c1),(r2,c2)) and test whether their displacement equals the offset.
/// O(n^2 * n^2), unlike the implementation's single scan with an offset.
inline texsom::GlcmMatrix glcm_oracle(const texsom::QuantizedImage& img,
                                      texsom::Offset offset, bool symmetric,
                                      bool normalize) {
    const int h = img.height();
    const int w = img.width();
    texsom::GlcmMatrix m = texsom::GlcmMatrix::Zero(img.levels, img.levels);
    std::int64_t pairs = 0;
    for (int r1 = 0; r1 < h; ++r1)
        for (int c1 = 0; c1 < w; ++c1)
            for (int r2 = 0; r2 < h; ++r2)
                for (int c2 = 0; c2 < w; ++c2) {
                    if (r2 - r1 != offset.dr || c2 - c1 != offset.dc) continue;
                    m(img.pixels(r1, c1), img.pixels(r2, c2)) += 1.0;
                    ++pairs;
                    if (symmetric) {
                        m(img.pixels(r2, c2), img.pixels(r1, c1)) += 1.0;
                        ++pairs;
                    }
                }
    if (pairs > 0 && normalize) m /= static_cast<double>(pairs);
    return m;
}

// Direct formula evaluations of the four statistics, written as plain loops.

inline double dissimilarity_oracle(const texsom::GlcmMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * std::abs(i - j);
    return s;
}

inline double uniformity_oracle(const texsom::GlcmMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    return s;
}

inline double entropy_oracle(const texsom::GlcmMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) > 0.0) s -= m(i, j) * std::log2(m(i, j));
    return s;
}

inline double contrast_oracle(const texsom::GlcmMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * (i - j) * (i - j);
    return s;
}

/// Random normalized non-negative matrix (entries sum to 1).
inline texsom::GlcmMatrix random_normalized_matrix(int g, texsom::Rng& rng) {
    texsom::GlcmMatrix m(g, g);
    double total = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            m(i, j) = rng.uniform();
            total += m(i, j);
        }
    return m / total;
}

}  // namespace test_support
