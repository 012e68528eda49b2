#include "umtk/um_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "umtk/errors.hpp"

namespace umtk {

namespace {

constexpr double kMetricSlack = 1e-9;    // allowed triangle-inequality violation
constexpr double kCollinearEps = 1e-12;  // |cos| this close to 1 means collinear

void require_finite(const Matrix& m, const char* what) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j)))
                throw InvalidInput(std::string(what) + ": non-finite entry at (" +
                                   std::to_string(i) + ", " + std::to_string(j) + ")");
}

}  // namespace

DistanceMatrix DistanceMatrix::from_matrix(Matrix values) {
    if (values.rows() != values.cols())
        throw InvalidInput("distance matrix must be square, got " +
                           std::to_string(values.rows()) + " x " + std::to_string(values.cols()));
    require_finite(values, "distance matrix");
    const std::size_t n = values.rows();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(values(i, j)));
    const double sym_tol = 1e-9 * std::max(1.0, scale);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(values(i, i)) > 1e-12)
            throw InvalidInput("distance matrix diagonal must be zero; d(" + std::to_string(i) +
                               "," + std::to_string(i) + ") = " + std::to_string(values(i, i)));
        values(i, i) = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(values(i, j) - values(j, i)) > sym_tol)
                throw InvalidInput("distance matrix not symmetric at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
            double v = values(i, j);
            if (v < 0.0) {
                if (v < -1e-12)
                    throw InvalidInput("negative distance at (" + std::to_string(i) + "," +
                                       std::to_string(j) + "): " + std::to_string(v));
                v = 0.0;
            }
            values(i, j) = v;
            values(j, i) = v;
        }
    }
    return unchecked(std::move(values));
}

DistanceMatrix DistanceMatrix::unchecked(Matrix values) {
    DistanceMatrix d;
    d.values_ = std::move(values);
    return d;
}

DistanceMatrix pairwise_euclidean(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dim();
    if (n < 2) throw InvalidInput("pairwise_euclidean needs at least 2 points");
    require_finite(cloud.points, "point cloud");

    Matrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* a = cloud.points.data() + i * d;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* b = cloud.points.data() + j * d;
            double acc = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double diff = a[k] - b[k];
                acc += diff * diff;
            }
            const double dist = std::sqrt(acc);
            out(i, j) = dist;
            out(j, i) = dist;
        }
    }
    return DistanceMatrix::unchecked(std::move(out));
}

TriangleVerdict triangle_classify(double a, double b, double c, double tol) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)) || a < 0 || b < 0 || c < 0)
        throw InvalidInput("triangle sides must be finite and nonnegative");
    if (!(tol > 0)) throw InvalidInput("angle tolerance must be positive");
    if (a == 0.0 || b == 0.0 || c == 0.0) return TriangleVerdict::Degenerate;

    const double longest = std::max({a, b, c});
    const double perimeter = a + b + c;
    if (longest > (perimeter - longest) + kMetricSlack * std::max(1.0, longest))
        throw InvalidInput("side lengths violate the triangle inequality; shift the "
                           "dissimilarities first (additive_shift)");

    // Angle opposite each side, via the law of cosines.
    const auto cos_arg = [](double opp, double s1, double s2) {
        return (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2);
    };
    double angles[3];
    const double args[3] = {cos_arg(a, b, c), cos_arg(b, a, c), cos_arg(c, a, b)};
    for (int t = 0; t < 3; ++t) {
        const double clamped = std::clamp(args[t], -1.0, 1.0);
        if (std::abs(clamped) >= 1.0 - kCollinearEps) return TriangleVerdict::Degenerate;
        angles[t] = std::acos(clamped);
    }
    std::sort(std::begin(angles), std::end(angles));

    if (angles[2] - angles[0] <= tol) return TriangleVerdict::Equilateral;
    // The two angles other than the smallest: equal within tol means the two
    // largest sides match, i.e. isosceles with small base.
    if (angles[2] - angles[1] <= tol) return TriangleVerdict::IsoscelesSmallBase;
    return TriangleVerdict::NonUltrametric;
}

TripletList sample_triplets(std::size_t n, std::int64_t max_count, std::uint64_t seed) {
    if (n < 3) throw InvalidInput("n < 3: triplet measures need at least 3 points");
    if (max_count < 1) throw InvalidInput("triplet budget must be >= 1");

    TripletList out;
    const unsigned __int128 total =
        static_cast<unsigned __int128>(n) * (n - 1) * (n - 2) / 6;

    if (total <= static_cast<unsigned __int128>(max_count)) {
        out.exhaustive = true;
        out.triplets.reserve(static_cast<std::size_t>(total));
        for (std::uint32_t i = 0; i + 2 < n; ++i)
            for (std::uint32_t j = i + 1; j + 1 < n; ++j)
                for (std::uint32_t k = j + 1; k < n; ++k) out.triplets.push_back({i, j, k});
        return out;
    }

    if (n >= (std::size_t{1} << 21))
        throw InvalidInput("triplet sampling supports at most 2^21 points");

    // Sequential seeded draw without replacement; the whole list exists before
    // any classification so downstream parallelism cannot change results.
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(max_count) * 2);
    out.triplets.reserve(static_cast<std::size_t>(max_count));
    while (out.triplets.size() < static_cast<std::size_t>(max_count)) {
        std::uint32_t i = pick(gen);
        std::uint32_t j = pick(gen);
        std::uint32_t k = pick(gen);
        if (i == j || j == k || i == k) continue;
        if (i > j) std::swap(i, j);
        if (j > k) std::swap(j, k);
        if (i > j) std::swap(i, j);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(i) << 42) | (static_cast<std::uint64_t>(j) << 21) | k;
        if (seen.insert(key).second) out.triplets.push_back({i, j, k});
    }
    return out;
}

UmReport ultrametricity_triangle(const DistanceMatrix& dist, std::int64_t max_triangles,
                                 double tol, std::uint64_t seed) {
    const std::size_t n = dist.size();
    if (n < 3) throw InvalidInput("n < 3: ultrametricity_triangle needs at least 3 points");

    const TripletList list = sample_triplets(n, max_triangles, seed);

    std::int64_t isosc = 0, equil = 0, degenerate = 0;
    for (const auto& [i, j, k] : list.triplets) {
        switch (triangle_classify(dist(i, j), dist(i, k), dist(j, k), tol)) {
            case TriangleVerdict::IsoscelesSmallBase: ++isosc; break;
            case TriangleVerdict::Equilateral: ++equil; break;
            case TriangleVerdict::Degenerate: ++degenerate; break;
            case TriangleVerdict::NonUltrametric: break;
        }
    }

    const std::int64_t examined = static_cast<std::int64_t>(list.triplets.size());
    const std::int64_t valid = examined - degenerate;
    if (valid == 0)
        throw InvalidInput("degenerate dataset: every examined triangle is degenerate");

    UmReport report;
    report.isosc_frac = static_cast<double>(isosc) / static_cast<double>(valid);
    report.equil_frac = static_cast<double>(equil) / static_cast<double>(valid);
    report.um_frac = static_cast<double>(isosc + equil) / static_cast<double>(valid);
    report.degenerate_count = degenerate;
    report.triangles_examined = examined;
    report.exhaustive = list.exhaustive;
    report.seed = seed;
    return report;
}

double lerman_h(const DistanceMatrix& dist, std::int64_t max_triplets, std::uint64_t seed) {
    const std::size_t n = dist.size();
    if (n < 3) throw InvalidInput("n < 3: lerman_h needs at least 3 points");

    // Distinct sorted pair values; each pair maps to the index of its value.
    // Min-rank tie handling falls out of the distinct-value indexing: tied
    // pairs share an index, and rank intervals become index differences.
    std::vector<double> distinct;
    distinct.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) distinct.push_back(dist(i, j));
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const std::size_t rank_count = distinct.size();

    const auto value_index = [&](std::size_t i, std::size_t j) {
        return static_cast<std::uint32_t>(
            std::lower_bound(distinct.begin(), distinct.end(), dist(i, j)) - distinct.begin());
    };

    const TripletList list = sample_triplets(n, max_triplets, seed);
    double defect_sum = 0.0;
    for (const auto& [i, j, k] : list.triplets) {
        std::uint32_t r1 = value_index(i, j);
        std::uint32_t r2 = value_index(i, k);
        std::uint32_t r3 = value_index(j, k);
        if (r1 > r2) std::swap(r1, r2);
        if (r2 > r3) std::swap(r2, r3);
        if (r1 > r2) std::swap(r1, r2);
        if (r3 > r2 + 1) {
            // Distinct values strictly between the median and maximum rank.
            // A nonzero gap implies rank_count >= 3, so the divisor is positive.
            const auto between = static_cast<double>(r3 - r2 - 1);
            defect_sum += between / static_cast<double>(rank_count - 2);
        }
    }
    return defect_sum / static_cast<double>(list.triplets.size());
}

DistanceMatrix subdominant_ultrametric(const DistanceMatrix& dist) {
    const std::size_t n = dist.size();
    if (n <= 2) return DistanceMatrix::unchecked(dist.values());

    // Prim's algorithm on the complete graph.
    struct Edge {
        std::uint32_t u, v;
        double w;
    };
    std::vector<Edge> mst;
    mst.reserve(n - 1);
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<std::uint32_t> best_from(n, 0);
    in_tree[0] = true;
    for (std::size_t j = 1; j < n; ++j) {
        best[j] = dist(0, j);
        best_from[j] = 0;
    }
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t next = 0;
        double next_w = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            if (!in_tree[j] && best[j] < next_w) {
                next_w = best[j];
                next = j;
            }
        in_tree[next] = true;
        mst.push_back({best_from[next], static_cast<std::uint32_t>(next), next_w});
        for (std::size_t j = 0; j < n; ++j)
            if (!in_tree[j] && dist(next, j) < best[j]) {
                best[j] = dist(next, j);
                best_from[j] = static_cast<std::uint32_t>(next);
            }
    }

    // Merge components in edge-weight order; the merge height is exactly the
    // max edge on the tree path for every cross pair, i.e. the single-linkage
    // cophenetic distance. Values are copied, never recomputed, so an already
    // ultrametric input survives bit-identically.
    std::sort(mst.begin(), mst.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });
    std::vector<std::uint32_t> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::vector<std::vector<std::uint32_t>> members(n);
    for (std::uint32_t i = 0; i < n; ++i) members[i] = {i};

    Matrix out(n, n, 0.0);
    for (const Edge& e : mst) {
        std::uint32_t a = comp[e.u];
        std::uint32_t b = comp[e.v];
        if (members[a].size() < members[b].size()) std::swap(a, b);
        for (const std::uint32_t x : members[a])
            for (const std::uint32_t y : members[b]) {
                out(x, y) = e.w;
                out(y, x) = e.w;
            }
        for (const std::uint32_t y : members[b]) comp[y] = a;
        members[a].insert(members[a].end(), members[b].begin(), members[b].end());
        members[b].clear();
        members[b].shrink_to_fit();
    }
    return DistanceMatrix::unchecked(std::move(out));
}

double rammal_degree(const DistanceMatrix& dist) {
    const std::size_t n = dist.size();
    const DistanceMatrix sub = subdominant_ultrametric(dist);
    double discrepancy = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            discrepancy += dist(i, j) - sub(i, j);
            total += dist(i, j);
        }
    if (total == 0.0)
        throw InvalidInput("rammal_degree: all off-diagonal distances are zero");
    return discrepancy / total;
}

DistanceMatrix additive_shift(const DistanceMatrix& dist, double c) {
    if (!(c >= 0.0) || !std::isfinite(c))
        throw InvalidInput("additive shift constant must be finite and >= 0");
    const std::size_t n = dist.size();
    Matrix out = dist.values();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) out(i, j) += c;
    return DistanceMatrix::unchecked(std::move(out));
}

}  // namespace umtk
