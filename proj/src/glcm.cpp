#include <texsom/glcm.hpp>

#include <cstdlib>
#include <string>

namespace texsom {

void GlcmConfig::validate() const {
    if (levels < 2)
        throw ConfigError("glcm: levels must be >= 2, got " + std::to_string(levels));
    if (distance < 1)
        throw ConfigError("glcm: distance must be >= 1, got " + std::to_string(distance));
    if (orientations.empty())
        throw ConfigError("glcm: at least one orientation is required");
    for (const Offset& o : orientations)
        if (o.dr == 0 && o.dc == 0)
            throw ConfigError("glcm: orientation (0,0) is not a valid displacement");
}

QuantizedImage quantize(const GrayImage& img, int levels) {
    if (levels < 2)
        throw ConfigError("quantize: levels must be >= 2, got " + std::to_string(levels));
    QuantizedImage out;
    out.levels = levels;
    out.pixels.resize(img.pixels.rows(), img.pixels.cols());
    for (Eigen::Index r = 0; r < img.pixels.rows(); ++r)
        for (Eigen::Index c = 0; c < img.pixels.cols(); ++c) {
            const int p = img.pixels(r, c);
            if (p < 0 || p > 255)
                throw DataError("quantize: pixel value " + std::to_string(p) +
                                " outside [0,255] at (" + std::to_string(r) + "," +
                                std::to_string(c) + ")");
            out.pixels(r, c) = p * levels / 256;
        }
    return out;
}

GlcmMatrix compute_glcm(const QuantizedImage& img, Offset offset,
                        bool symmetric, bool normalize) {
    if (img.levels < 2)
        throw ConfigError("compute_glcm: image has invalid level count " +
                          std::to_string(img.levels));
    if (offset.dr == 0 && offset.dc == 0)
        throw ConfigError("compute_glcm: offset (0,0) is not a valid displacement");

    const int h = img.height();
    const int w = img.width();
    GlcmMatrix m = GlcmMatrix::Zero(img.levels, img.levels);
    std::int64_t pairs = 0;
    for (int r = 0; r < h; ++r) {
        const int r2 = r + offset.dr;
        if (r2 < 0 || r2 >= h) continue;
        for (int c = 0; c < w; ++c) {
            const int c2 = c + offset.dc;
            if (c2 < 0 || c2 >= w) continue;
            const int i = img.pixels(r, c);
            const int j = img.pixels(r2, c2);
            if (i < 0 || i >= img.levels || j < 0 || j >= img.levels)
                throw DataError("compute_glcm: pixel value outside [0,levels)");
            m(i, j) += 1.0;
            ++pairs;
            if (symmetric) {
                m(j, i) += 1.0;
                ++pairs;
            }
        }
    }
    if (pairs == 0)
        throw DataError("compute_glcm: offset (" + std::to_string(offset.dr) + "," +
                        std::to_string(offset.dc) + ") leaves no valid pixel pair in a " +
                        std::to_string(h) + "x" + std::to_string(w) + " window");
    if (normalize) m /= static_cast<double>(pairs);
    return m;
}

GlcmMatrix average_glcm(const std::vector<GlcmMatrix>& mats) {
    if (mats.empty())
        throw ConfigError("average_glcm: empty matrix list");
    const Eigen::Index g = mats.front().rows();
    GlcmMatrix sum = GlcmMatrix::Zero(g, g);
    for (const GlcmMatrix& m : mats) {
        if (m.rows() != g || m.cols() != g)
            throw ConfigError("average_glcm: level count mismatch (" +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                              " vs " + std::to_string(g) + "x" + std::to_string(g) + ")");
        sum += m;
    }
    return sum / static_cast<double>(mats.size());
}

Eigen::Vector4d texture_vector(const QuantizedImage& img, const GlcmConfig& cfg) {
    cfg.validate();
    if (img.levels != cfg.levels)
        throw ConfigError("texture_vector: image quantized to " + std::to_string(img.levels) +
                          " levels but config expects " + std::to_string(cfg.levels));
    std::vector<GlcmMatrix> mats;
    mats.reserve(cfg.orientations.size());
    for (const Offset& dir : cfg.orientations) {
        const Offset off{dir.dr * cfg.distance, dir.dc * cfg.distance};
        mats.push_back(compute_glcm(img, off, cfg.symmetric, cfg.normalize));
    }
    const GlcmMatrix avg = average_glcm(mats);
    return {dissimilarity(avg), uniformity(avg), entropy(avg), contrast(avg)};
}

}  // namespace texsom
