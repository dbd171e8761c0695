#include <texsom/model_io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace texsom {

namespace {

constexpr const char* kMagic = "texsom-model";
constexpr int kVersion = 1;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

[[noreturn]] void bad_line(const std::string& path, int line, const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

std::string next_line(std::istream& in, const std::string& path, int& line,
                      const std::string& expecting) {
    std::string s;
    if (!std::getline(in, s))
        bad_line(path, line + 1, "unexpected end of file, expecting " + expecting);
    ++line;
    return s;
}

int parse_header_int(const std::string& text, const std::string& key,
                     const std::string& path, int line) {
    std::istringstream ss(text);
    std::string name;
    long long value = 0;
    if (!(ss >> name >> value) || name != key || value < 0)
        bad_line(path, line, "expected '" + key + " <count>', got '" + text + "'");
    return static_cast<int>(value);
}

Vector parse_vector_line(const std::string& text, const std::string& key, int dim,
                         const std::string& path, int line) {
    std::istringstream ss(text);
    std::string name;
    ss >> name;
    if (name != key) bad_line(path, line, "expected '" + key + "' record");
    Vector v(dim);
    for (int i = 0; i < dim; ++i)
        if (!(ss >> v[i])) bad_line(path, line, key + " record needs " +
                                    std::to_string(dim) + " values");
    return v;
}

}  // namespace

int model_dim(const Model& model) {
    return std::visit([](const auto& m) { return int(m.grid.weights.cols()); }, model);
}

std::string model_kind(const Model& model) {
    return std::holds_alternative<SomModel>(model) ? "som" : "isom";
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file " + path);

    const bool is_som = std::holds_alternative<SomModel>(model);
    const int rows = std::visit([](const auto& m) { return m.grid.rows; }, model);
    const int cols = std::visit([](const auto& m) { return m.grid.cols; }, model);
    const int dim = model_dim(model);
    const int classes = is_som ? std::get<SomModel>(model).num_classes
                               : std::get<IsomModel>(model).grid.num_classes;

    out << kMagic << ' ' << kVersion << '\n';
    out << "kind " << model_kind(model) << '\n';
    out << "rows " << rows << '\n';
    out << "cols " << cols << '\n';
    out << "dim " << dim << '\n';
    out << "classes " << classes << '\n';

    const auto& scaler = is_som ? std::get<SomModel>(model).scaler
                                : std::get<IsomModel>(model).scaler;
    if (scaler) {
        out << "scale_min";
        for (int i = 0; i < dim; ++i) out << ' ' << fmt9(scaler->min[i]);
        out << "\nscale_range";
        for (int i = 0; i < dim; ++i) out << ' ' << fmt9(scaler->range[i]);
        out << '\n';
    }

    const Matrix& weights =
        std::visit([](const auto& m) -> const Matrix& { return m.grid.weights; }, model);
    for (int n = 0; n < rows * cols; ++n) {
        out << "node " << n / cols << ' ' << n % cols;
        if (is_som) {
            const int label = std::get<SomModel>(model).node_labels[size_t(n)];
            out << " label ";
            if (label < 0)
                out << '-';
            else
                out << label;
        } else {
            const CounterMatrix& wcc = std::get<IsomModel>(model).grid.wcc;
            out << " wcc";
            for (int c = 0; c < classes; ++c) out << ' ' << wcc(n, c);
        }
        out << " weights";
        for (int d = 0; d < dim; ++d) out << ' ' << fmt9(weights(n, d));
        out << '\n';
    }
    if (!out) throw IoError("failed writing model file " + path);
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file " + path);
    int line = 0;

    {
        std::istringstream ss(next_line(in, path, line, "format header"));
        std::string magic;
        int version = -1;
        if (!(ss >> magic >> version) || magic != kMagic)
            bad_line(path, line, "not a model file (missing '" + std::string(kMagic) +
                                     "' header)");
        if (version != kVersion)
            bad_line(path, line, "unsupported model version " + std::to_string(version));
    }

    std::string kind;
    {
        std::istringstream ss(next_line(in, path, line, "kind record"));
        std::string name;
        if (!(ss >> name >> kind) || name != "kind" || (kind != "som" && kind != "isom"))
            bad_line(path, line, "expected 'kind som' or 'kind isom'");
    }

    const int rows = parse_header_int(next_line(in, path, line, "rows"), "rows", path, line);
    const int cols = parse_header_int(next_line(in, path, line, "cols"), "cols", path, line);
    const int dim = parse_header_int(next_line(in, path, line, "dim"), "dim", path, line);
    const int classes =
        parse_header_int(next_line(in, path, line, "classes"), "classes", path, line);
    if (rows < 1 || cols < 1 || dim < 1 || classes < 1)
        bad_line(path, line, "degenerate model dimensions");
    const int nodes = rows * cols;

    std::string pending = next_line(in, path, line, "scaler or node records");
    std::optional<MinMaxScaler> scaler;
    if (pending.rfind("scale_min", 0) == 0) {
        MinMaxScaler s;
        s.min = parse_vector_line(pending, "scale_min", dim, path, line);
        s.range = parse_vector_line(next_line(in, path, line, "scale_range"),
                                    "scale_range", dim, path, line);
        scaler = std::move(s);
        pending = next_line(in, path, line, "node records");
    }

    Matrix weights(nodes, dim);
    std::vector<int> node_labels(static_cast<std::size_t>(nodes), -1);
    CounterMatrix wcc;
    if (kind == "isom") wcc = CounterMatrix::Zero(nodes, classes);
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);

    for (int rec = 0; rec < nodes; ++rec) {
        const std::string& text = pending;
        std::istringstream ss(text);
        std::string name;
        int r = -1, c = -1;
        if (!(ss >> name >> r >> c) || name != "node")
            bad_line(path, line, "expected a node record, got '" + text + "'");
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            bad_line(path, line, "node location (" + std::to_string(r) + ", " +
                                     std::to_string(c) + ") outside the grid");
        const int n = r * cols + c;
        if (seen[size_t(n)]) bad_line(path, line, "duplicate node record");
        seen[size_t(n)] = 1;

        std::string section;
        ss >> section;
        if (kind == "som") {
            if (section != "label") bad_line(path, line, "som node needs a label field");
            std::string label;
            if (!(ss >> label)) bad_line(path, line, "missing label value");
            if (label == "-") {
                node_labels[size_t(n)] = -1;
            } else {
                try {
                    node_labels[size_t(n)] = std::stoi(label);
                } catch (const std::exception&) {
                    bad_line(path, line, "bad label '" + label + "'");
                }
                if (node_labels[size_t(n)] < 0 || node_labels[size_t(n)] >= classes)
                    bad_line(path, line, "label outside the declared classes");
            }
        } else {
            if (section != "wcc") bad_line(path, line, "isom node needs a wcc field");
            for (int k = 0; k < classes; ++k) {
                long long v = 0;
                if (!(ss >> v) || v < 0)
                    bad_line(path, line, "wcc record needs " + std::to_string(classes) +
                                             " non-negative counters");
                wcc(n, k) = v;
            }
        }

        std::string marker;
        if (!(ss >> marker) || marker != "weights")
            bad_line(path, line, "missing weights section");
        for (int d = 0; d < dim; ++d)
            if (!(ss >> weights(n, d)))
                bad_line(path, line, "weights record needs " + std::to_string(dim) +
                                         " values");
        double extra;
        if (ss >> extra) bad_line(path, line, "trailing values after the weights");

        if (rec + 1 < nodes) pending = next_line(in, path, line, "node record");
    }

    if (kind == "som") {
        SomModel m;
        m.grid.rows = rows;
        m.grid.cols = cols;
        m.grid.weights = std::move(weights);
        m.node_labels = std::move(node_labels);
        m.num_classes = classes;
        m.scaler = std::move(scaler);
        return m;
    }
    IsomModel m;
    m.grid.rows = rows;
    m.grid.cols = cols;
    m.grid.num_classes = classes;
    m.grid.weights = std::move(weights);
    m.grid.wcc = std::move(wcc);
    m.scaler = std::move(scaler);
    return m;
}

int predict(const Model& model, const Vector& x) {
    if (x.size() != model_dim(model))
        throw DataError("predict: instance dim " + std::to_string(x.size()) +
                        " does not match model dim " + std::to_string(model_dim(model)));
    return std::visit(
        [&](const auto& m) {
            const Vector in = m.scaler ? m.scaler->apply(x) : x;
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, SomModel>)
                return predict_som(m.grid, m.node_labels, in);
            else
                return predict_isom(m.grid, in);
        },
        model);
}

}  // namespace texsom
