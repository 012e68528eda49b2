#include "umtk/baire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "umtk/errors.hpp"

namespace umtk {

namespace {

constexpr int kMaxPrecision = 15;  // beyond this, double decimals are noise

// 10^1 .. 10^15, all exactly representable.
constexpr double kPow10[kMaxPrecision + 1] = {1.0,
                                              1e1,
                                              1e2,
                                              1e3,
                                              1e4,
                                              1e5,
                                              1e6,
                                              1e7,
                                              1e8,
                                              1e9,
                                              1e10,
                                              1e11,
                                              1e12,
                                              1e13,
                                              1e14,
                                              1e15};

inline int nth_digit(double value, int i) {
    return static_cast<int>(static_cast<std::uint64_t>(value * kPow10[i]) % 10);
}

void validate_unit_interval(double v, const char* what) {
    if (!(v >= 0.0) || !(v < 1.0) || !std::isfinite(v))
        throw InvalidInput(std::string(what) + " must lie in [0, 1), got " + std::to_string(v));
}

}  // namespace

NormalizedMatrix NormalizedMatrix::from_matrix(Matrix values, int precision) {
    if (precision < 1 || precision > kMaxPrecision)
        throw InvalidInput("precision must be in [1, " + std::to_string(kMaxPrecision) + "]");
    if (values.rows() == 0 || values.cols() == 0)
        throw InvalidInput("normalized matrix must be non-empty");
    for (std::size_t i = 0; i < values.rows(); ++i)
        for (std::size_t j = 0; j < values.cols(); ++j)
            if (!(values(i, j) >= 0.0) || !(values(i, j) < 1.0) || !std::isfinite(values(i, j)))
                throw InvalidInput("value at (" + std::to_string(i) + ", " + std::to_string(j) +
                                   ") = " + std::to_string(values(i, j)) +
                                   " is outside [0, 1); normalize (and clamp exact 1.0) first");
    NormalizedMatrix m;
    m.values = std::move(values);
    m.precision = precision;
    return m;
}

std::size_t BairePartition::largest_cluster_size() const noexcept {
    std::size_t largest = 0;
    for (const auto& [key, members] : clusters) largest = std::max(largest, members.size());
    return largest;
}

std::string digit_prefix(double value, int k) {
    validate_unit_interval(value, "digit_prefix value");
    if (k < 1 || k > kMaxPrecision)
        throw InvalidInput("digit count must be in [1, " + std::to_string(kMaxPrecision) + "]");
    std::string out(static_cast<std::size_t>(k), '0');
    for (int i = 1; i <= k; ++i)
        out[static_cast<std::size_t>(i - 1)] = static_cast<char>('0' + nth_digit(value, i));
    return out;
}

double baire_distance(double x, double y, int precision) {
    validate_unit_interval(x, "baire_distance x");
    validate_unit_interval(y, "baire_distance y");
    if (precision < 1 || precision > kMaxPrecision)
        throw InvalidInput("precision must be in [1, " + std::to_string(kMaxPrecision) + "]");
    int shared = 0;
    for (int i = 1; i <= precision; ++i) {
        if (nth_digit(x, i) != nth_digit(y, i)) break;
        ++shared;
    }
    return shared == 0 ? 1.0 : std::ldexp(1.0, -shared);
}

BairePartition baire_partition(const NormalizedMatrix& matrix, int k) {
    if (k < 1 || k > matrix.precision)
        throw InvalidInput("partition level must be in [1, precision]");
    const std::size_t n = matrix.rows();
    const std::size_t j_count = matrix.attributes();

    BairePartition partition;
    partition.level = k;
    std::string key(j_count * static_cast<std::size_t>(k), '0');
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pos = 0;
        for (std::size_t j = 0; j < j_count; ++j) {
            const double v = matrix.values(i, j);
            for (int t = 1; t <= k; ++t)
                key[pos++] = static_cast<char>('0' + nth_digit(v, t));
        }
        partition.clusters[key].push_back(i);
    }
    return partition;
}

std::vector<BairePartition> partition_hierarchy(const NormalizedMatrix& matrix, int k_max) {
    if (k_max < 1 || k_max > matrix.precision)
        throw InvalidInput("k_max must be in [1, precision]");
    std::vector<BairePartition> levels;
    levels.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) levels.push_back(baire_partition(matrix, k));
    return levels;
}

std::vector<HierarchySummaryRow> hierarchy_summary(const std::vector<BairePartition>& levels) {
    std::vector<HierarchySummaryRow> rows;
    rows.reserve(levels.size());
    for (const auto& level : levels)
        rows.push_back({level.level, level.cluster_count(), level.largest_cluster_size()});
    return rows;
}

RefinementReport kmeans_refine(const NormalizedMatrix& matrix, const BairePartition& partition,
                               std::size_t max_iters) {
    if (max_iters < 1) throw InvalidInput("kmeans_refine needs max_iters >= 1");
    if (partition.clusters.empty()) throw InvalidInput("kmeans_refine needs a nonempty partition");
    const std::size_t n = matrix.rows();
    const std::size_t dim = matrix.attributes();
    const std::size_t k = partition.cluster_count();

    // Initial assignment = Baire cluster index in key order; centers = cluster means.
    std::vector<std::size_t> initial(n, n);
    std::vector<std::vector<double>> centers(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    {
        std::size_t c = 0;
        std::size_t covered = 0;
        for (const auto& [key, members] : partition.clusters) {
            for (const std::size_t i : members) {
                if (i >= n || initial[i] != n)
                    throw InvalidInput("partition does not match the matrix rows");
                initial[i] = c;
                for (std::size_t j = 0; j < dim; ++j) centers[c][j] += matrix.values(i, j);
            }
            sizes[c] = members.size();
            covered += members.size();
            if (sizes[c] == 0) throw InvalidInput("partition contains an empty cluster");
            for (std::size_t j = 0; j < dim; ++j) centers[c][j] /= static_cast<double>(sizes[c]);
            ++c;
        }
        if (covered != n) throw InvalidInput("partition does not cover every matrix row");
    }

    std::vector<std::size_t> assignment = initial;
    double prev_wcss = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        ++iterations;
        // Assignment step; ties break toward the lower center index.
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = assignment[i];
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                double d = 0.0;
                for (std::size_t j = 0; j < dim; ++j) {
                    const double diff = matrix.values(i, j) - centers[c][j];
                    d += diff * diff;
                }
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (best != assignment[i]) {
                assignment[i] = best;
                changed = true;
            }
        }
        if (!changed) break;

        // Update step: means of the new assignment; empty clusters keep their center.
        std::vector<std::vector<double>> next(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[assignment[i]];
            for (std::size_t j = 0; j < dim; ++j) next[assignment[i]][j] += matrix.values(i, j);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            for (std::size_t j = 0; j < dim; ++j)
                next[c][j] /= static_cast<double>(counts[c]);
            centers[c] = std::move(next[c]);
        }

        double wcss = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                const double diff = matrix.values(i, j) - centers[assignment[i]][j];
                wcss += diff * diff;
            }
        if (wcss > prev_wcss * (1.0 + 1e-9) + 1e-12)
            throw std::logic_error("kmeans_refine: within-cluster sum of squares increased");
        prev_wcss = wcss;
    }

    RefinementReport report;
    report.cluster_count = k;
    report.iterations = iterations;
    std::vector<std::size_t> final_sizes(k, 0);
    std::set<std::size_t> discrepant_clusters;
    for (std::size_t i = 0; i < n; ++i) {
        ++final_sizes[assignment[i]];
        if (assignment[i] != initial[i]) {
            ++report.discrepancy_count;
            discrepant_clusters.insert(assignment[i]);
        }
    }
    report.largest_cluster_size = *std::max_element(final_sizes.begin(), final_sizes.end());
    report.discrepant_cluster_count = discrepant_clusters.size();
    return report;
}

}  // namespace umtk
