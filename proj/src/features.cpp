#include <texsom/features.hpp>

#include <texsom/rng.hpp>

#include <algorithm>
#include <limits>
#include <string>

namespace texsom {

std::vector<std::pair<int, int>> split_spans(int extent, int parts) {
    std::vector<std::pair<int, int>> spans;
    spans.reserve(static_cast<std::size_t>(parts));
    const int base = extent / parts;
    int offset = 0;
    for (int i = 0; i < parts; ++i) {
        const int size = (i + 1 < parts) ? base : extent - offset;
        spans.emplace_back(offset, size);
        offset += size;
    }
    return spans;
}

namespace {

int floor_isqrt(int n) {
    int r = 1;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Tile `region` with `count` cells: floor(sqrt(count)) row bands, each band
/// holding up to ceil(count/rows) cells; the last band absorbs the shortfall.
std::vector<Rect> tile_rect(const Rect& region, int count) {
    const int rows = floor_isqrt(count);
    const int cols = (count + rows - 1) / rows;
    const auto bands = split_spans(region.rows, rows);

    std::vector<Rect> cells;
    cells.reserve(static_cast<std::size_t>(count));
    int remaining = count;
    for (int r = 0; r < rows; ++r) {
        const int cells_here = std::min(cols, remaining - (rows - 1 - r));
        const auto spans = split_spans(region.cols, cells_here);
        for (int c = 0; c < cells_here; ++c)
            cells.push_back({region.row0 + bands[size_t(r)].first,
                             region.col0 + spans[size_t(c)].first,
                             bands[size_t(r)].second, spans[size_t(c)].second});
        remaining -= cells_here;
    }
    return cells;
}

}  // namespace

BlocGrid partition(int height, int width, int sn, int m) {
    if (sn < 1) throw ConfigError("partition: sn must be >= 1, got " + std::to_string(sn));
    if (m < 1) throw ConfigError("partition: m must be >= 1, got " + std::to_string(m));
    if (height < 1 || width < 1)
        throw DataError("partition: empty image (" + std::to_string(height) + "x" +
                        std::to_string(width) + ")");

    BlocGrid grid;
    grid.sub_images = tile_rect({0, 0, height, width}, sn);
    grid.blocs.reserve(static_cast<std::size_t>(sn));
    for (const Rect& sub : grid.sub_images) {
        if (sub.rows < 1 || sub.cols < 1)
            throw DataError("partition: " + std::to_string(height) + "x" +
                            std::to_string(width) + " image cannot host " +
                            std::to_string(sn) + " sub-images");
        auto blocs = tile_rect(sub, m);
        for (const Rect& b : blocs)
            if (b.rows < 2 || b.cols < 2)
                throw DataError("partition: bloc of " + std::to_string(b.rows) + "x" +
                                std::to_string(b.cols) +
                                " pixels is too small for co-occurrence statistics "
                                "(need >= 2x2); image " +
                                std::to_string(height) + "x" + std::to_string(width) +
                                ", sn=" + std::to_string(sn) + ", m=" + std::to_string(m));
        grid.blocs.push_back(std::move(blocs));
    }
    return grid;
}

BlocGrid partition(const GrayImage& img, int sn, int m) {
    return partition(img.height(), img.width(), sn, m);
}

std::vector<std::vector<Eigen::Vector4d>> bloc_features(const BlocGrid& grid,
                                                        const QuantizedImage& img,
                                                        const GlcmConfig& cfg) {
    std::vector<std::vector<Eigen::Vector4d>> out;
    out.reserve(grid.blocs.size());
    for (const auto& sub_blocs : grid.blocs) {
        std::vector<Eigen::Vector4d> vectors;
        vectors.reserve(sub_blocs.size());
        for (const Rect& b : sub_blocs) {
            QuantizedImage crop;
            crop.levels = img.levels;
            crop.pixels = img.pixels.block(b.row0, b.col0, b.rows, b.cols);
            vectors.push_back(texture_vector(crop, cfg));
        }
        out.push_back(std::move(vectors));
    }
    return out;
}

namespace {

/// Nearest centroid by squared distance, ties to the lowest index.
int nearest_row(const Matrix& centroids, const Matrix& points, int i, double* dist2_out) {
    int best = 0;
    double best_d = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int c = 1; c < centroids.rows(); ++c) {
        const double d = (points.row(i) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
            best = c;
            best_d = d;
        }
    }
    if (dist2_out) *dist2_out = best_d;
    return best;
}

}  // namespace

ClusterModel kmeans(const Matrix& points, int k, std::uint64_t seed, int max_iter) {
    const int n = static_cast<int>(points.rows());
    if (k < 1) throw ConfigError("kmeans: k must be >= 1, got " + std::to_string(k));
    if (n < 1) throw DataError("kmeans: no input vectors");
    if (k > n)
        throw ConfigError("kmeans: k=" + std::to_string(k) + " exceeds vector count " +
                          std::to_string(n));
    if (max_iter < 1)
        throw ConfigError("kmeans: max_iter must be >= 1, got " + std::to_string(max_iter));

    Rng rng(seed);
    ClusterModel model;
    model.centroids.resize(k, points.cols());

    // k-means++ seeding: first centroid uniform, the rest weighted by the
    // squared distance to the nearest centroid chosen so far.
    model.centroids.row(0) = points.row(static_cast<int>(rng.uniform_int(std::uint64_t(n))));
    Vector d2 = (points.rowwise() - model.centroids.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
        const double total = d2.sum();
        int pick;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double cum = 0.0;
            pick = n - 1;
            for (int i = 0; i < n; ++i) {
                cum += d2[i];
                if (cum > r) {
                    pick = i;
                    break;
                }
            }
        } else {
            // remaining points coincide with chosen centroids
            pick = static_cast<int>(rng.uniform_int(std::uint64_t(n)));
        }
        model.centroids.row(c) = points.row(pick);
        d2 = d2.cwiseMin((points.rowwise() - model.centroids.row(c)).rowwise().squaredNorm());
    }

    model.assignments.assign(static_cast<std::size_t>(n), -1);
    std::vector<int> assign(static_cast<std::size_t>(n), -1);
    Vector point_d2(n);

    bool at_fixpoint = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        double inertia = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = 0.0;
            assign[size_t(i)] = nearest_row(model.centroids, points, i, &d);
            point_d2[i] = d;
            inertia += d;
        }
        model.inertia_history.push_back(inertia);
        model.inertia = inertia;
        model.iterations = iter + 1;

        const bool changed = (assign != model.assignments);
        model.assignments = assign;
        if (inertia == 0.0 || (!changed && iter > 0)) {
            // inertia 0 cannot improve; without the early-out, identical
            // inputs would shuttle one point between tied centroids forever
            at_fixpoint = true;
            break;
        }

        // update step: centroid = mean of its members
        Matrix sums = Matrix::Zero(k, points.cols());
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < n; ++i) {
            sums.row(model.assignments[size_t(i)]) += points.row(i);
            ++counts[size_t(model.assignments[size_t(i)])];
        }
        for (int c = 0; c < k; ++c)
            if (counts[size_t(c)] > 0)
                model.centroids.row(c) = sums.row(c) / double(counts[size_t(c)]);

        // repair empty clusters: re-seed each to the point currently farthest
        // from its own centroid
        for (int c = 0; c < k; ++c) {
            if (counts[size_t(c)] > 0) continue;
            int far = 0;
            for (int i = 1; i < n; ++i)
                if (point_d2[i] > point_d2[far]) far = i;
            model.centroids.row(c) = points.row(far);
            --counts[size_t(model.assignments[size_t(far)])];
            model.assignments[size_t(far)] = c;
            counts[size_t(c)] = 1;
            point_d2[far] = 0.0;
        }
    }

    if (!at_fixpoint) {
        // ran out of iterations; realign assignments with the final centroids
        double inertia = 0.0;
        for (int i = 0; i < n; ++i) {
            double d = 0.0;
            model.assignments[size_t(i)] = nearest_row(model.centroids, points, i, &d);
            inertia += d;
        }
        model.inertia_history.push_back(inertia);
        model.inertia = inertia;
    }
    return model;
}

std::vector<Vector> cluster_representatives(const ClusterModel& model) {
    std::vector<Vector> reps;
    reps.reserve(static_cast<std::size_t>(model.centroids.rows()));
    for (int c = 0; c < model.centroids.rows(); ++c)
        reps.push_back(model.centroids.row(c).transpose());
    std::sort(reps.begin(), reps.end(), [](const Vector& a, const Vector& b) {
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (a[i] > b[i]) return false;
        }
        return false;
    });
    return reps;
}

void PipelineConfig::validate() const {
    if (sn < 1) throw ConfigError("pipeline: sn must be >= 1, got " + std::to_string(sn));
    if (m_blocs < 1)
        throw ConfigError("pipeline: m_blocs must be >= 1, got " + std::to_string(m_blocs));
    if (l_clusters < 1)
        throw ConfigError("pipeline: l_clusters must be >= 1, got " + std::to_string(l_clusters));
    if (l_clusters > m_blocs)
        throw ConfigError("pipeline: l_clusters=" + std::to_string(l_clusters) +
                          " cannot exceed m_blocs=" + std::to_string(m_blocs));
    if (kmeans_max_iter < 1)
        throw ConfigError("pipeline: kmeans_max_iter must be >= 1");
    glcm.validate();
}

Transaction build_transaction(const GrayImage& img, int label, const PipelineConfig& cfg,
                              std::string source_id) {
    cfg.validate();
    const BlocGrid grid = partition(img, cfg.sn, cfg.m_blocs);
    const QuantizedImage q = quantize(img, cfg.glcm.levels);
    const auto per_sub = bloc_features(grid, q, cfg.glcm);

    Transaction t;
    t.label = label;
    t.source_id = std::move(source_id);
    t.values.resize(cfg.transaction_dim());

    Eigen::Index offset = 0;
    for (int s = 0; s < cfg.sn; ++s) {
        Matrix pts(cfg.m_blocs, 4);
        for (int b = 0; b < cfg.m_blocs; ++b) pts.row(b) = per_sub[size_t(s)][size_t(b)];
        // each sub-image clusters independently; the seed offset keeps the
        // result a function of the image alone, not of dataset order
        const ClusterModel cm = kmeans(pts, cfg.l_clusters,
                                       cfg.kmeans_seed + std::uint64_t(s),
                                       cfg.kmeans_max_iter);
        for (const Vector& rep : cluster_representatives(cm)) {
            t.values.segment(offset, 4) = rep;
            offset += 4;
        }
    }
    return t;
}

Vector MinMaxScaler::apply(const Vector& x) const {
    if (x.size() != min.size())
        throw DataError("scaler: vector dim " + std::to_string(x.size()) +
                        " does not match fitted dim " + std::to_string(min.size()));
    Vector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out[i] = range[i] > 0.0 ? (x[i] - min[i]) / range[i] : 0.0;
    return out;
}

MinMaxScaler fit_minmax(const std::vector<Transaction>& transactions) {
    if (transactions.size() < 2)
        throw DataError("fit_minmax: need at least 2 transactions, got " +
                        std::to_string(transactions.size()));
    const Eigen::Index d = transactions.front().values.size();
    MinMaxScaler s;
    s.min = Vector::Constant(d, std::numeric_limits<double>::infinity());
    Vector max = Vector::Constant(d, -std::numeric_limits<double>::infinity());
    for (const Transaction& t : transactions) {
        if (t.values.size() != d)
            throw DataError("fit_minmax: ragged transaction dims");
        s.min = s.min.cwiseMin(t.values);
        max = max.cwiseMax(t.values);
    }
    s.range = max - s.min;
    return s;
}

std::vector<Transaction> apply_scaler(const MinMaxScaler& scaler,
                                      const std::vector<Transaction>& transactions) {
    std::vector<Transaction> out;
    out.reserve(transactions.size());
    for (const Transaction& t : transactions) {
        Transaction nt = t;
        nt.values = scaler.apply(t.values);
        out.push_back(std::move(nt));
    }
    return out;
}

std::pair<std::vector<Transaction>, MinMaxScaler> normalize_dataset(
    const std::vector<Transaction>& transactions) {
    MinMaxScaler s = fit_minmax(transactions);
    return {apply_scaler(s, transactions), s};
}

}  // namespace texsom
