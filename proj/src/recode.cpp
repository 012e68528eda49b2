#include "umtk/recode.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "umtk/errors.hpp"

namespace umtk {

namespace {

using EigenRowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_finite(const Matrix& m, const char* what) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j)))
                throw InvalidInput(std::string(what) + ": non-finite entry at (" +
                                   std::to_string(i) + ", " + std::to_string(j) + ")");
}

}  // namespace

CountTable CountTable::from_matrix(Matrix counts) {
    if (counts.rows() == 0 || counts.cols() == 0)
        throw InvalidInput("count table must be non-empty");
    require_finite(counts, "count table");

    CountTable t;
    t.row_totals.assign(counts.rows(), 0.0);
    t.col_totals.assign(counts.cols(), 0.0);
    for (std::size_t i = 0; i < counts.rows(); ++i)
        for (std::size_t j = 0; j < counts.cols(); ++j) {
            const double v = counts(i, j);
            if (v < 0.0)
                throw InvalidInput("count table entry at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ") is negative");
            t.row_totals[i] += v;
            t.col_totals[j] += v;
            t.grand_total += v;
        }
    for (std::size_t i = 0; i < counts.rows(); ++i)
        if (t.row_totals[i] == 0.0)
            throw InvalidInput("count table row " + std::to_string(i + 1) + " is all zero");
    for (std::size_t j = 0; j < counts.cols(); ++j)
        if (t.col_totals[j] == 0.0)
            throw InvalidInput("count table column " + std::to_string(j + 1) + " is all zero");
    t.counts = std::move(counts);
    return t;
}

Matrix doubling(const Matrix& table, double max_value) {
    if (table.rows() == 0 || table.cols() == 0)
        throw InvalidInput("doubling needs a non-empty table");
    if (!std::isfinite(max_value) || max_value < 0.0)
        throw InvalidInput("doubling needs a finite scale M >= 0");
    require_finite(table, "doubling input");
    const std::size_t n = table.rows();
    const std::size_t p = table.cols();

    Matrix out(n, 2 * p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double x = table(i, j);
            if (x < 0.0 || x > max_value)
                throw InvalidInput("doubling entry at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ") = " + std::to_string(x) +
                                   " is outside [0, M]");
            out(i, j) = x;
            out(i, p + j) = max_value - x;
        }
    return out;
}

IndicatorTable rank_booleanize(const Matrix& matrix) {
    if (matrix.rows() == 0 || matrix.cols() == 0)
        throw InvalidInput("rank_booleanize needs a non-empty matrix");
    require_finite(matrix, "rank_booleanize input");
    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();

    // Per variable: distinct values descending, so block position 0 is the top
    // rank. Ties collapse onto one shared column.
    std::vector<std::vector<double>> distinct(p);
    std::size_t width = 0;
    for (std::size_t j = 0; j < p; ++j) {
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) vals[i] = matrix(i, j);
        std::sort(vals.begin(), vals.end(), std::greater<>());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        width += vals.size();
        distinct[j] = std::move(vals);
    }

    IndicatorTable out;
    out.values = Matrix(n, width, 0.0);
    out.column_origin.reserve(width);
    std::size_t offset = 0;
    for (std::size_t j = 0; j < p; ++j) {
        const auto& vals = distinct[j];
        for (std::size_t r = 0; r < vals.size(); ++r)
            out.column_origin.push_back({j + 1, r + 1});
        for (std::size_t i = 0; i < n; ++i) {
            const auto it =
                std::lower_bound(vals.begin(), vals.end(), matrix(i, j), std::greater<>());
            out.values(i, offset + static_cast<std::size_t>(it - vals.begin())) = 1.0;
        }
        offset += vals.size();
    }
    return out;
}

double chi2_distance(const CountTable& table, std::size_t i, std::size_t i2) {
    const std::size_t n = table.rows();
    const std::size_t p = table.cols();
    if (i >= n || i2 >= n) throw InvalidInput("chi2_distance: row index out of range");

    const double k = table.grand_total;
    const double fi = table.row_totals[i] / k;
    const double fi2 = table.row_totals[i2] / k;
    double acc = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double fj = table.col_totals[j] / k;
        const double diff = table.counts(i, j) / k / fi - table.counts(i2, j) / k / fi2;
        acc += diff * diff / fj;
    }
    return std::sqrt(acc);
}

FactorEmbedding ca_embed(const CountTable& table) {
    const std::size_t n = table.rows();
    const std::size_t p = table.cols();
    if (n < 2 || p < 2) throw InvalidInput("ca_embed needs at least a 2 x 2 table");

    const double k = table.grand_total;
    FactorEmbedding out;
    out.row_masses.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.row_masses[i] = table.row_totals[i] / k;

    // Standardized residuals s_ij = (f_ij - f_i f_j) / sqrt(f_i f_j).
    EigenRowMajor s(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        const double fi = out.row_masses[i];
        for (std::size_t j = 0; j < p; ++j) {
            const double fj = table.col_totals[j] / k;
            const double fij = table.counts(i, j) / k;
            s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                (fij - fi * fj) / std::sqrt(fi * fj);
        }
    }

    Eigen::BDCSVD<EigenRowMajor> svd(s, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    const std::size_t max_rank = std::min(n, p) - 1;  // sqrt margins span the null space
    std::size_t rank = 0;
    while (rank < max_rank && rank < static_cast<std::size_t>(sigma.size()) &&
           sigma(static_cast<Eigen::Index>(rank)) > 1e-12 * std::max(1.0, sigma(0)))
        ++rank;

    out.row_coords = Matrix(n, rank);
    out.eigenvalues.resize(rank);
    for (std::size_t a = 0; a < rank; ++a) {
        const double sv = sigma(static_cast<Eigen::Index>(a));
        out.eigenvalues[a] = sv * sv;
        for (std::size_t i = 0; i < n; ++i)
            out.row_coords(i, a) =
                sv * svd.matrixU()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) /
                std::sqrt(out.row_masses[i]);
    }
    return out;
}

Matrix column_normalize(const Matrix& matrix) {
    if (matrix.rows() == 0 || matrix.cols() == 0)
        throw InvalidInput("column_normalize needs a non-empty matrix");
    require_finite(matrix, "column_normalize input");
    const std::size_t n = matrix.rows();
    const std::size_t p = matrix.cols();

    std::vector<double> sums(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            if (matrix(i, j) < 0.0)
                throw InvalidInput("column_normalize entry at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ") is negative");
            sums[j] += matrix(i, j);
        }
    for (std::size_t j = 0; j < p; ++j)
        if (!(sums[j] > 0.0))
            throw InvalidInput("column " + std::to_string(j + 1) + " has zero sum");

    Matrix out(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) out(i, j) = matrix(i, j) / sums[j];
    return out;
}

}  // namespace umtk
