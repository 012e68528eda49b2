#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "umtk/matrix.hpp"

namespace umtk {

// Angular tolerance for "approximately equal" angles: 2 degrees in radians.
inline constexpr double kDefaultAngleTol = 0.0349;

// Default triangle sample budget for the triangle-based measure.
inline constexpr std::int64_t kDefaultMaxTriangles = 300;

// A set of n points in R^d, one point per row.
struct PointCloud {
    Matrix points;

    std::size_t size() const noexcept { return points.rows(); }
    std::size_t dim() const noexcept { return points.cols(); }
};

// Symmetric nonnegative pairwise dissimilarities with zero diagonal. The
// triangle inequality is NOT part of the invariant: inputs may be raw
// dissimilarities that only become metric after an additive shift.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    // Validates and canonicalizes: square shape, finite entries, |d_ii| <= 1e-12
    // (then zeroed), symmetry within 1e-9 relative slack (then mirrored exactly),
    // entries >= -1e-12 (tiny negatives clamped to 0). Throws InvalidInput.
    static DistanceMatrix from_matrix(Matrix values);

    // No validation; callers guarantee the invariants hold.
    static DistanceMatrix unchecked(Matrix values);

    std::size_t size() const noexcept { return values_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
    const Matrix& values() const noexcept { return values_; }

private:
    Matrix values_;
};

enum class TriangleVerdict {
    IsoscelesSmallBase,
    Equilateral,
    NonUltrametric,
    Degenerate,
};

// Result of the triangle-based ultrametricity measure. Fractions are taken
// over non-degenerate examined triangles; um_frac = isosc_frac + equil_frac.
struct UmReport {
    double isosc_frac = 0.0;
    double equil_frac = 0.0;
    double um_frac = 0.0;
    std::int64_t degenerate_count = 0;
    std::int64_t triangles_examined = 0;
    bool exhaustive = false;
    std::uint64_t seed = 0;
};

// Deterministic triplet selection shared by the triangle and Lerman measures.
// If C(n,3) <= max_count the list is all triplets in lexicographic order and
// exhaustive = true; otherwise max_count distinct triplets drawn uniformly
// without replacement from the seeded generator, in draw order. The list is
// fully materialized before any classification happens.
struct TripletList {
    std::vector<std::array<std::uint32_t, 3>> triplets;
    bool exhaustive = false;
};

TripletList sample_triplets(std::size_t n, std::int64_t max_count, std::uint64_t seed);

// Exact Euclidean distances between all point pairs; symmetric, zero diagonal.
DistanceMatrix pairwise_euclidean(const PointCloud& cloud);

// Classifies one triangle given its three side lengths. Angles come from the
// law of cosines. Degenerate: any zero side, or collinear points (a cosine
// argument within 1e-12 of +-1). A triangle-inequality violation beyond 1e-9
// slack throws InvalidInput (shift dissimilarities first; see additive_shift).
TriangleVerdict triangle_classify(double a, double b, double c, double tol = kDefaultAngleTol);

// Fraction of sampled triangles that are isosceles-with-small-base or
// equilateral at the given angular tolerance. Throws InvalidInput if n < 3 or
// every examined triangle is degenerate.
UmReport ultrametricity_triangle(const DistanceMatrix& dist,
                                 std::int64_t max_triangles = kDefaultMaxTriangles,
                                 double tol = kDefaultAngleTol, std::uint64_t seed = 0);

// Lerman's rank-based H-classifiability defect, in [0, 1]; 0 on exact
// ultrametrics. Pair values are ranked ascending with ties sharing the
// minimum rank of their block; a triplet's defect is the number of distinct
// rank values falling strictly between its median and maximum pair ranks,
// normalized by (number of distinct ranks - 2). Sampling contract matches
// ultrametricity_triangle.
double lerman_h(const DistanceMatrix& dist, std::int64_t max_triplets = kDefaultMaxTriangles,
                std::uint64_t seed = 0);

// Maximal inferior (subdominant) ultrametric: the single-linkage cophenetic
// distance, i.e. the maximum edge weight on the minimum-spanning-tree path
// between each pair. Output satisfies the strong triangle inequality exactly
// and is everywhere <= the input.
DistanceMatrix subdominant_ultrametric(const DistanceMatrix& dist);

// Rammal's discrepancy: sum(d - d_sub) / sum(d) over unordered pairs.
// 0 iff the input is already ultrametric. Throws InvalidInput when all
// off-diagonal entries are zero.
double rammal_degree(const DistanceMatrix& dist);

// Adds c >= 0 to every off-diagonal entry, leaving the diagonal at zero.
DistanceMatrix additive_shift(const DistanceMatrix& dist, double c);

}  // namespace umtk
