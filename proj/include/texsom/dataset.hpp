#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <texsom/types.hpp>

namespace texsom {

/// Portable graymap, ASCII (P2) or binary (P5), maxval up to 255. Malformed
/// input raises ParseError naming the byte offset; dimensions above
/// 1,000,000 per side or 64M pixels total are rejected as implausible.
GrayImage load_pgm(const std::string& path);

/// ASCII (P2) writer, maxval 255.
void save_pgm(const GrayImage& img, const std::string& path);

/// `id,label` table mapping image ids to class indices: normal=0,
/// abnormal=1 (labels are trimmed and case-insensitive). Duplicate ids and
/// unknown label strings raise ParseError.
std::map<std::string, int> load_labels(const std::string& path);

extern const char* const kClassNames[2];  // {"normal", "abnormal"}

struct LabeledImage {
    std::string id;    // file stem
    std::string path;
    int label = -1;
};

/// The .pgm files under dir whose stem has a label, sorted by id.
std::vector<LabeledImage> list_labeled_images(const std::string& dir,
                                              const std::map<std::string, int>& labels);

/// Two Gaussian classes of n_per_class points each, centred at
/// -separation/2 (class 0) and +separation/2 (class 1) along the first
/// axis, `spread` standard deviation per axis. Ids are "synth-NNN".
TabularDataset synth_blobs(int n_per_class, int dim, double separation, double spread,
                           std::uint64_t seed);

/// Comma-separated table, header `f0..f{D-1},label,source_id`, reals with 9
/// significant digits. Loading validates uniform width and numeric cells,
/// reporting the offending row.
void save_features(const TabularDataset& ds, const std::string& path);
TabularDataset load_features(const std::string& path);

/// Central rows x cols window (offsets split evenly, upper-left bias).
GrayImage center_crop(const GrayImage& img, int rows, int cols);

}  // namespace texsom
