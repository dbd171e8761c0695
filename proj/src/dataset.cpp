#include <texsom/dataset.hpp>

#include <texsom/rng.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace texsom {

const char* const kClassNames[2] = {"normal", "abnormal"};

namespace {

constexpr long long kMaxSide = 1'000'000;
constexpr long long kMaxPixels = 64'000'000;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Whitespace- and comment-skipping scanner over a PGM header/ASCII body.
struct PgmScanner {
    const std::string& data;
    const std::string& path;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(path + ": " + what + " at byte " + std::to_string(pos));
    }

    void skip_separators() {
        while (pos < data.size()) {
            const char c = data[pos];
            if (c == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    long long next_int(const char* what) {
        skip_separators();
        if (pos >= data.size()) fail(std::string("missing ") + what);
        if (!std::isdigit(static_cast<unsigned char>(data[pos])))
            fail(std::string("expected ") + what);
        long long v = 0;
        while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
            v = v * 10 + (data[pos] - '0');
            if (v > kMaxPixels * 256) fail(std::string(what) + " out of range");
            ++pos;
        }
        return v;
    }

    bool at_end() {
        skip_separators();
        return pos >= data.size();
    }
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

GrayImage load_pgm(const std::string& path) {
    const std::string data = read_file(path);
    PgmScanner sc{data, path};

    if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5'))
        throw ParseError(path + ": not a P2/P5 portable graymap at byte 0");
    const bool binary = data[1] == '5';
    sc.pos = 2;

    const long long width = sc.next_int("width");
    const long long height = sc.next_int("height");
    const long long maxval = sc.next_int("maxval");
    if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide ||
        width * height > kMaxPixels)
        sc.fail("implausible dimensions " + std::to_string(width) + "x" +
                std::to_string(height));
    if (maxval < 1 || maxval > 255)
        sc.fail("maxval " + std::to_string(maxval) + " outside [1, 255]");

    GrayImage img;
    img.pixels.resize(Eigen::Index(height), Eigen::Index(width));

    if (binary) {
        // exactly one whitespace byte separates the header from the raster
        if (sc.pos >= data.size() ||
            !std::isspace(static_cast<unsigned char>(data[sc.pos])))
            sc.fail("missing raster separator");
        ++sc.pos;
        const long long need = width * height;
        if (static_cast<long long>(data.size() - sc.pos) < need)
            throw ParseError(path + ": truncated raster, " +
                             std::to_string(data.size() - sc.pos) + " of " +
                             std::to_string(need) + " bytes at byte " +
                             std::to_string(sc.pos));
        if (static_cast<long long>(data.size() - sc.pos) > need)
            throw ParseError(path + ": trailing data after the raster at byte " +
                             std::to_string(sc.pos + std::size_t(need)));
        for (long long i = 0; i < need; ++i) {
            const int v = static_cast<unsigned char>(data[sc.pos + std::size_t(i)]);
            if (v > maxval)
                throw ParseError(path + ": pixel value " + std::to_string(v) +
                                 " above maxval at byte " +
                                 std::to_string(sc.pos + std::size_t(i)));
            img.pixels(Eigen::Index(i / width), Eigen::Index(i % width)) = v;
        }
    } else {
        for (long long i = 0; i < width * height; ++i) {
            const long long v = sc.next_int("pixel value");
            if (v > maxval)
                sc.fail("pixel value " + std::to_string(v) + " above maxval");
            img.pixels(Eigen::Index(i / width), Eigen::Index(i % width)) = int(v);
        }
        if (!sc.at_end()) sc.fail("trailing data after the raster");
    }
    return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
    if (img.height() < 1 || img.width() < 1) throw DataError("save_pgm: empty image");
    if (img.pixels.minCoeff() < 0 || img.pixels.maxCoeff() > 255)
        throw DataError("save_pgm: pixel values outside [0, 255]");

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "P2\n" << img.width() << ' ' << img.height() << "\n255\n";
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            if (c) out << ' ';
            out << img.pixels(r, c);
        }
        out << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

std::map<std::string, int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open labels file " + path);

    std::string line;
    int line_no = 0;
    if (!std::getline(in, line))
        throw ParseError(path + ": empty file, expected 'id,label' header");
    ++line_no;
    {
        auto fields = split_csv(line);
        if (fields.size() != 2 || lower(trim(fields[0])) != "id" ||
            lower(trim(fields[1])) != "label")
            throw ParseError(path + ":1: expected header 'id,label'");
    }

    std::map<std::string, int> labels;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 2)
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected 'id,label', got " +
                             std::to_string(fields.size()) + " fields");
        const std::string id = trim(fields[0]);
        const std::string name = lower(trim(fields[1]));
        if (id.empty())
            throw ParseError(path + ":" + std::to_string(line_no) + ": empty id");

        int cls = -1;
        for (int k = 0; k < 2; ++k)
            if (name == kClassNames[k]) cls = k;
        if (cls < 0)
            throw ParseError(path + ":" + std::to_string(line_no) + ": unknown label '" +
                             name + "' (expected normal or abnormal)");
        if (!labels.emplace(id, cls).second)
            throw ParseError(path + ":" + std::to_string(line_no) + ": duplicate id '" +
                             id + "'");
    }
    return labels;
}

std::vector<LabeledImage> list_labeled_images(const std::string& dir,
                                              const std::map<std::string, int>& labels) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw IoError(dir + " is not a directory");

    std::vector<LabeledImage> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const fs::path p = entry.path();
        if (lower(p.extension().string()) != ".pgm") continue;
        const auto it = labels.find(p.stem().string());
        if (it == labels.end()) continue;
        out.push_back({it->first, p.string(), it->second});
    }
    std::sort(out.begin(), out.end(),
              [](const LabeledImage& a, const LabeledImage& b) { return a.id < b.id; });
    return out;
}

TabularDataset synth_blobs(int n_per_class, int dim, double separation, double spread,
                           std::uint64_t seed) {
    if (n_per_class < 1)
        throw ConfigError("synth: n_per_class must be >= 1, got " +
                          std::to_string(n_per_class));
    if (dim < 1) throw ConfigError("synth: dim must be >= 1, got " + std::to_string(dim));
    if (separation < 0.0) throw ConfigError("synth: separation must be >= 0");
    if (spread < 0.0) throw ConfigError("synth: spread must be >= 0");

    Rng rng(seed);
    TabularDataset ds;
    int serial = 0;
    for (int cls = 0; cls < 2; ++cls) {
        const double centre = (cls == 0 ? -1.0 : 1.0) * separation / 2.0;
        for (int i = 0; i < n_per_class; ++i) {
            Transaction t;
            t.label = cls;
            t.values.resize(dim);
            for (int d = 0; d < dim; ++d)
                t.values[d] = (d == 0 ? centre : 0.0) + rng.normal() * spread;
            char id[32];
            std::snprintf(id, sizeof id, "synth-%03d", serial++);
            t.source_id = id;
            ds.items.push_back(std::move(t));
        }
    }
    return ds;
}

void save_features(const TabularDataset& ds, const std::string& path) {
    if (ds.empty()) throw DataError("save_features: empty feature table");
    const Eigen::Index dim = ds.dim();

    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (Eigen::Index d = 0; d < dim; ++d) out << 'f' << d << ',';
    out << "label,source_id\n";
    for (const Transaction& t : ds.items) {
        if (t.values.size() != dim)
            throw DataError("save_features: ragged transaction dims");
        if (t.source_id.find(',') != std::string::npos ||
            t.source_id.find('\n') != std::string::npos)
            throw DataError("save_features: source_id '" + t.source_id +
                            "' contains a delimiter");
        for (Eigen::Index d = 0; d < dim; ++d) out << fmt9(t.values[d]) << ',';
        out << t.label << ',' << t.source_id << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

TabularDataset load_features(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open features file " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    auto header = split_csv(line);
    if (header.size() < 3 || trim(header[header.size() - 2]) != "label" ||
        trim(header.back()) != "source_id")
        throw ParseError(path + ":1: expected header 'f0..f{D-1},label,source_id'");
    const std::size_t dim = header.size() - 2;
    for (std::size_t d = 0; d < dim; ++d)
        if (trim(header[d]) != "f" + std::to_string(d))
            throw ParseError(path + ":1: expected feature column 'f" + std::to_string(d) +
                             "', got '" + trim(header[d]) + "'");

    TabularDataset ds;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != dim + 2)
            throw ParseError(path + ":" + std::to_string(line_no) + ": row has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(dim + 2));

        Transaction t;
        t.values.resize(Eigen::Index(dim));
        for (std::size_t d = 0; d < dim; ++d) {
            const std::string cell = trim(fields[d]);
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || cell.empty())
                throw ParseError(path + ":" + std::to_string(line_no) +
                                 ": bad numeric cell '" + cell + "' in column f" +
                                 std::to_string(d));
            t.values[Eigen::Index(d)] = v;
        }

        const std::string label_cell = trim(fields[dim]);
        try {
            std::size_t used = 0;
            t.label = std::stoi(label_cell, &used);
            if (used != label_cell.size()) throw std::invalid_argument(label_cell);
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": bad label '" +
                             label_cell + "'");
        }
        if (t.label < -1)
            throw ParseError(path + ":" + std::to_string(line_no) + ": label " +
                             std::to_string(t.label) + " below -1");
        t.source_id = trim(fields[dim + 1]);
        ds.items.push_back(std::move(t));
    }
    if (ds.empty()) throw ParseError(path + ": no feature rows");
    return ds;
}

GrayImage center_crop(const GrayImage& img, int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw ConfigError("crop: size must be at least 1x1");
    if (rows > img.height() || cols > img.width())
        throw DataError("crop: " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " window exceeds " + std::to_string(img.height()) + "x" +
                        std::to_string(img.width()) + " image");
    GrayImage out;
    out.pixels = img.pixels.block((img.height() - rows) / 2, (img.width() - cols) / 2,
                                  rows, cols);
    return out;
}

}  // namespace texsom
