#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "umtk/matrix.hpp"

namespace umtk {

// Rows of attribute values in [0, 1), read digit by digit at up to `precision`
// base-10 digits. Callers normalize first; exact 1.0 must be clamped below 1
// before construction.
struct NormalizedMatrix {
    Matrix values;      // n x J
    int precision = 4;  // K, max significant digits

    static NormalizedMatrix from_matrix(Matrix values, int precision);

    std::size_t rows() const noexcept { return values.rows(); }
    std::size_t attributes() const noexcept { return values.cols(); }
};

// Grouping of rows that share the first k digits in every attribute. Keys are
// the attribute-major digit concatenations (J * k characters); the map order
// makes cluster indexing and serialization deterministic.
struct BairePartition {
    int level = 0;
    std::map<std::string, std::vector<std::size_t>> clusters;

    std::size_t cluster_count() const noexcept { return clusters.size(); }
    std::size_t largest_cluster_size() const noexcept;
};

struct RefinementReport {
    std::size_t cluster_count = 0;
    std::size_t largest_cluster_size = 0;
    std::size_t discrepancy_count = 0;         // rows whose final center differs
    std::size_t discrepant_cluster_count = 0;  // final clusters holding such rows
    std::size_t iterations = 0;
};

// First k decimal digits of value by truncation (never rounding): digit i is
// floor(value * 10^i) mod 10.
std::string digit_prefix(double value, int k);

// Longest-common-prefix ultrametric on K-digit expansions: 1 when the first
// digits differ, otherwise 2^-(length of the shared prefix), down to 2^-K
// when all K digits agree.
double baire_distance(double x, double y, int precision);

// Single hashing pass over rows; no pairwise distances. Two rows land in the
// same cluster iff their per-attribute Baire distances are all <= 2^-k.
BairePartition baire_partition(const NormalizedMatrix& matrix, int k);

// Partitions for k = 1..k_max. Each level refines the previous one: longer
// shared prefixes imply shorter ones.
std::vector<BairePartition> partition_hierarchy(const NormalizedMatrix& matrix, int k_max);

// Per-level (k, clusterCount, largestClusterSize) rows for summary output.
struct HierarchySummaryRow {
    int level;
    std::size_t cluster_count;
    std::size_t largest_cluster_size;
};
std::vector<HierarchySummaryRow> hierarchy_summary(const std::vector<BairePartition>& levels);

// Lloyd iterations seeded with the Baire clusters' mean vectors. A cluster
// that empties mid-run keeps its center for that iteration. Stops when no
// assignment changes or max_iters is reached.
RefinementReport kmeans_refine(const NormalizedMatrix& matrix, const BairePartition& partition,
                               std::size_t max_iters);

}  // namespace umtk
