#pragma once

#include <cstddef>
#include <vector>

#include "umtk/matrix.hpp"

namespace umtk {

// Nonnegative contingency data with cached margins. Zero rows/columns are
// rejected up front rather than dropped silently; removal is the caller's job.
struct CountTable {
    Matrix counts;  // n x p
    std::vector<double> row_totals;
    std::vector<double> col_totals;
    double grand_total = 0.0;

    static CountTable from_matrix(Matrix counts);

    std::size_t rows() const noexcept { return counts.rows(); }
    std::size_t cols() const noexcept { return counts.cols(); }
};

// Provenance of one indicator column: which input variable it encodes and the
// rank of the value it flags (rank 1 = top, i.e. the largest distinct value).
struct IndicatorColumn {
    std::size_t variable;  // 1-based input column
    std::size_t rank;      // 1-based, 1 = largest value of that variable
};

// Complete disjunctive form: one 0/1 column per distinct value of each input
// variable, exactly one 1 per row within each variable's block.
struct IndicatorTable {
    Matrix values;  // n x q, entries in {0, 1}
    std::vector<IndicatorColumn> column_origin;
};

// Row embedding where pairwise Euclidean distances reproduce the chi-squared
// distances between the source table's row profiles.
struct FactorEmbedding {
    Matrix row_coords;                // n x r, factor coordinates
    std::vector<double> eigenvalues;  // r values, descending, each in [0, 1]
    std::vector<double> row_masses;   // n values summing to 1
};

// Appends, for every column x in [0, M], the complement column M - x. Every
// doubled row then sums to p * M, which equalizes row margins.
Matrix doubling(const Matrix& table, double max_value);

// Recodes each variable's values to ranks (ties share a rank) and boolean-codes
// the rank. Block columns run from the top rank (largest value) downward; no
// all-zero columns are ever produced since every rank is realized by some row.
IndicatorTable rank_booleanize(const Matrix& matrix);

// Chi-squared distance between two row profiles, weighted by inverse column
// masses, computed on frequencies (counts / grand total).
double chi2_distance(const CountTable& table, std::size_t i, std::size_t i2);

// Correspondence-analysis row embedding via singular decomposition of the
// standardized residuals (f_ij - f_i f_j) / sqrt(f_i f_j). Rank is at most
// min(n, p) - 1; a rank-0 residual (e.g. an outer product of margins) yields
// an empty embedding, not an error.
FactorEmbedding ca_embed(const CountTable& table);

// Divides every column by its sum; each output column sums to 1.
Matrix column_normalize(const Matrix& matrix);

}  // namespace umtk
