// Acceptance suite: one pass/fail line per criterion. Exit code is the number
// of failed criteria. `acceptance --only N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "umtk/baire.hpp"
#include "umtk/csv_io.hpp"
#include "umtk/recode.hpp"
#include "umtk/seeding.hpp"
#include "umtk/synth.hpp"
#include "umtk/tsfp.hpp"
#include "umtk/um_core.hpp"

#include "oracles.hpp"

using namespace umtk;

namespace {

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
};

double mean_um_frac(Family family, std::size_t n, std::size_t d, std::size_t reps,
                    std::uint64_t base_seed, std::uint64_t tag) {
    double total = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const GeneratedCloud cloud =
            generate({family, n, d, mix_seed(base_seed, tag, d, rep), 10.0});
        const DistanceMatrix dist = pairwise_euclidean(cloud.cloud);
        total += ultrametricity_triangle(dist, 300, kDefaultAngleTol,
                                         mix_seed(base_seed + 1, tag, d, rep))
                     .um_frac;
    }
    return total / static_cast<double>(reps);
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

// 1. Synthetic sweep: mean umFrac within +-0.15 of the published values and
//    strictly increasing in d for each family; whole sweep under 120 s.
void criterion_table1(Checker& c) {
    const auto start = std::chrono::steady_clock::now();
    struct FamilyRow {
        Family family;
        const char* name;
        std::uint64_t tag;
        double expected[4];
    };
    const FamilyRow rows[3] = {
        {Family::Uniform01, "uniform", 0, {0.13, 0.36, 0.84, 0.94}},
        {Family::HypercubeVertex, "hypercube", 1, {0.16, 0.36, 0.87, 0.96}},
        {Family::GaussianStandard, "gaussian", 2, {0.13, 0.36, 0.80, 0.98}},
    };
    const std::size_t dims[4] = {20, 200, 2000, 20000};

    for (const FamilyRow& row : rows) {
        double previous = -1.0;
        for (int di = 0; di < 4; ++di) {
            const double um = mean_um_frac(row.family, 100, dims[di], 5, 2024, row.tag);
            c.expect(std::abs(um - row.expected[di]) <= 0.15,
                     std::string(row.name) + " d=" + std::to_string(dims[di]) + " umFrac " +
                         fmt(um) + " departs from " + fmt(row.expected[di]));
            c.expect(um > previous, std::string(row.name) + " umFrac not increasing at d=" +
                                        std::to_string(dims[di]));
            previous = um;
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(elapsed <= 120.0, "sweep took " + fmt(elapsed) + " s (budget 120 s)");
}

// 2. Gaussian repeatability at d = 20000: three seeds, all >= 0.90, spread <= 0.06.
void criterion_gaussian_repeatability(Checker& c) {
    double lo = 1.0, hi = 0.0;
    for (std::uint64_t run = 0; run < 3; ++run) {
        const GeneratedCloud cloud =
            generate({Family::GaussianStandard, 100, 20000, mix_seed(7, run), 10.0});
        const double um = ultrametricity_triangle(pairwise_euclidean(cloud.cloud), 300,
                                                  kDefaultAngleTol, mix_seed(8, run))
                              .um_frac;
        c.expect(um >= 0.90, "run " + std::to_string(run) + " umFrac " + fmt(um) + " < 0.90");
        lo = std::min(lo, um);
        hi = std::max(hi, um);
    }
    c.expect(hi - lo <= 0.06, "spread " + fmt(hi - lo) + " > 0.06");
}

// 3. Iris contrast: raw coordinates near zero ultrametricity, the 123-column
//    rank-boolean recoding above 0.90.
void criterion_iris(Checker& c) {
    const Matrix iris = read_matrix_csv(std::string(UMTK_DATA_DIR) + "/iris.csv");
    c.expect(iris.rows() == 150 && iris.cols() == 4, "iris.csv shape unexpected");

    const DistanceMatrix raw = pairwise_euclidean({iris});
    const IndicatorTable recoded = rank_booleanize(iris);
    c.expect(recoded.values.cols() == 123, "rank_booleanize produced " +
                                               std::to_string(recoded.values.cols()) +
                                               " columns, expected 123");
    const DistanceMatrix boolean_dist = pairwise_euclidean({recoded.values});

    double raw_um = 0.0, recoded_um = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        raw_um += ultrametricity_triangle(raw, 300, kDefaultAngleTol, seed).um_frac;
        recoded_um += ultrametricity_triangle(boolean_dist, 300, kDefaultAngleTol, seed).um_frac;
    }
    raw_um /= 5.0;
    recoded_um /= 5.0;
    c.expect(raw_um >= 0.0 && raw_um <= 0.07,
             "raw iris umFrac " + fmt(raw_um) + " outside [0, 0.07]");
    c.expect(recoded_um >= 0.90, "recoded iris umFrac " + fmt(recoded_um) + " < 0.90");
}

// 4. CA: factor-space distances reproduce chi2 distances to 1e-8 and the
//    eigenvalue sum equals the residual inertia to 1e-10, on 20 random tables.
void criterion_ca(Checker& c) {
    std::mt19937_64 gen(404);
    std::uniform_int_distribution<std::size_t> rows(2, 50), cols(2, 20);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = rows(gen), p = cols(gen);
        const Matrix counts = oracles::random_count_table(n, p, mix_seed(405, t));
        const CountTable table = CountTable::from_matrix(counts);
        const FactorEmbedding e = ca_embed(table);

        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t a = 0; a < e.row_coords.cols(); ++a) {
                    const double diff = e.row_coords(i, a) - e.row_coords(j, a);
                    acc += diff * diff;
                }
                worst = std::max(worst, std::abs(std::sqrt(acc) - chi2_distance(table, i, j)));
            }
        c.expect(worst <= 1e-8, "table " + std::to_string(t) + " (" + std::to_string(n) + "x" +
                                    std::to_string(p) + ") distance gap " + fmt(worst));

        double inertia = 0.0;
        for (const double ev : e.eigenvalues) inertia += ev;
        double frobenius = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                const double fi = table.row_totals[i] / table.grand_total;
                const double fj = table.col_totals[j] / table.grand_total;
                const double s =
                    (table.counts(i, j) / table.grand_total - fi * fj) / std::sqrt(fi * fj);
                frobenius += s * s;
            }
        c.expect(std::abs(inertia - frobenius) <= 1e-10,
                 "table " + std::to_string(t) + " inertia gap " + fmt(inertia - frobenius));
    }
}

// 5. Exact ultrametrics: the subdominant is the identity, both defect measures
//    are exactly zero, the triangle measure is exactly 1, and the subdominant
//    output passes the exhaustive strong-triangle check.
void criterion_exact_ultrametrics(Checker& c) {
    std::mt19937_64 gen(505);
    std::uniform_int_distribution<std::size_t> sizes(3, 64);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = sizes(gen);
        const Matrix u = oracles::random_ultrametric(n, mix_seed(506, t));
        const DistanceMatrix d = DistanceMatrix::from_matrix(u);

        const DistanceMatrix sub = subdominant_ultrametric(d);
        c.expect(sub.values() == u, "subdominant changed an ultrametric (n=" +
                                        std::to_string(n) + ")");
        c.expect(oracles::is_ultrametric(sub.values()), "subdominant output not ultrametric");
        c.expect(rammal_degree(d) == 0.0, "rammal_degree nonzero on an ultrametric");
        c.expect(lerman_h(d, 300, t) == 0.0, "lerman_h nonzero on an ultrametric");
        c.expect(ultrametricity_triangle(d, 300, kDefaultAngleTol, t).um_frac == 1.0,
                 "umFrac below 1 on an ultrametric");
    }
}

// 6. Baire distance is exhaustively ultrametric on 50 seeded values; the
//    partition hierarchy refines with nondecreasing cluster counts at k=1..4
//    on 7500 x 20 matrices (one diffuse, one clustered).
void criterion_baire_properties(Checker& c) {
    std::mt19937_64 gen(606);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> values(50);
    for (auto& v : values) v = std::min(u(gen), 0.999999999);
    bool strong = true;
    for (const double x : values)
        for (const double y : values)
            for (const double z : values)
                if (baire_distance(x, z, 4) >
                    std::max(baire_distance(x, y, 4), baire_distance(y, z, 4)))
                    strong = false;
    c.expect(strong, "baire_distance violates the strong triangle inequality");

    const auto check_hierarchy = [&c](const Matrix& m, const char* name) {
        const NormalizedMatrix nm = NormalizedMatrix::from_matrix(m, 4);
        const auto levels = partition_hierarchy(nm, 4);
        for (std::size_t t = 0; t < levels.size(); ++t) {
            if (t == 0) continue;
            c.expect(levels[t].cluster_count() >= levels[t - 1].cluster_count(),
                     std::string(name) + ": cluster count decreased at k=" +
                         std::to_string(t + 1));
            std::vector<std::string> coarse_of(m.rows());
            for (const auto& [key, members] : levels[t - 1].clusters)
                for (const std::size_t i : members) coarse_of[i] = key;
            for (const auto& [key, members] : levels[t].clusters) {
                std::set<std::string> parents;
                for (const std::size_t i : members) parents.insert(coarse_of[i]);
                if (parents.size() != 1) {
                    c.expect(false, std::string(name) + ": refinement broken at k=" +
                                        std::to_string(t + 1));
                    break;
                }
            }
        }
    };

    Matrix diffuse(7500, 20);
    std::mt19937_64 dgen(607);
    for (std::size_t i = 0; i < 7500; ++i)
        for (std::size_t j = 0; j < 20; ++j) diffuse(i, j) = std::min(u(dgen), 0.999999999);
    check_hierarchy(diffuse, "diffuse");

    // Prototype rows plus small noise: clusters actually merge at coarse k.
    Matrix clustered(7500, 20);
    std::mt19937_64 cgen(608);
    std::uniform_int_distribution<int> proto(0, 9);
    std::normal_distribution<double> jitter(0.0, 0.01);
    std::vector<std::vector<double>> prototypes(10, std::vector<double>(20));
    for (auto& row : prototypes)
        for (auto& v : row) v = 0.05 + 0.09 * proto(cgen) + 0.02 * u(cgen);
    for (std::size_t i = 0; i < 7500; ++i) {
        const auto& base = prototypes[static_cast<std::size_t>(proto(cgen))];
        for (std::size_t j = 0; j < 20; ++j)
            clustered(i, j) = std::clamp(base[j] + jitter(cgen), 0.0, 0.999999999);
    }
    check_hierarchy(clustered, "clustered");
}

// 7. Mixture generate -> shift nonnegative -> column_normalize -> Baire k=1
//    -> Lloyd refinement: discrepancies stay within 1% of n.
void criterion_kmeans_refinement(Checker& c) {
    const GeneratedCloud mix = generate({Family::Mixture3Gaussian, 500, 10, 707, 10.0});
    Matrix shifted = mix.cloud.points;
    for (std::size_t j = 0; j < shifted.cols(); ++j) {
        double lo = shifted(0, j);
        for (std::size_t i = 1; i < shifted.rows(); ++i) lo = std::min(lo, shifted(i, j));
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, j) -= lo;
    }
    Matrix normalized = column_normalize(shifted);
    for (std::size_t i = 0; i < normalized.rows(); ++i)
        for (std::size_t j = 0; j < normalized.cols(); ++j)
            if (normalized(i, j) >= 1.0) normalized(i, j) = 1.0 - 1e-4;

    const NormalizedMatrix nm = NormalizedMatrix::from_matrix(std::move(normalized), 4);
    const BairePartition partition = baire_partition(nm, 1);
    const RefinementReport report = kmeans_refine(nm, partition, 100);
    c.expect(report.discrepancy_count <= 5,
             "column-normalized run: " + std::to_string(report.discrepancy_count) +
                 " discrepancies > 5");
    c.expect(report.discrepant_cluster_count <= report.discrepancy_count,
             "discrepant cluster count exceeds discrepancy count");

    // Same data mapped affinely onto [0, 1) per column: many fine Baire
    // clusters, so Lloyd actually iterates; discrepancies must stay tiny.
    Matrix scaled = mix.cloud.points;
    for (std::size_t j = 0; j < scaled.cols(); ++j) {
        double lo = scaled(0, j), hi = scaled(0, j);
        for (std::size_t i = 1; i < scaled.rows(); ++i) {
            lo = std::min(lo, scaled(i, j));
            hi = std::max(hi, scaled(i, j));
        }
        for (std::size_t i = 0; i < scaled.rows(); ++i)
            scaled(i, j) = (scaled(i, j) - lo) / (hi - lo) * (1.0 - 1e-9);
    }
    const NormalizedMatrix nms = NormalizedMatrix::from_matrix(std::move(scaled), 4);
    const RefinementReport rescaled = kmeans_refine(nms, baire_partition(nms, 1), 100);
    c.expect(rescaled.discrepancy_count <= 5,
             "min-max run: " + std::to_string(rescaled.discrepancy_count) +
                 " discrepancies > 5");
}

// 8. Additive-constant limit: a shifted random dissimilarity approaches the
//    all-equilateral regime; umFrac >= 0.99 at c = 1000 * max and the sweep is
//    nondecreasing within a 0.05 noise band.
void criterion_additive_shift(Checker& c) {
    std::mt19937_64 gen(808);
    std::uniform_real_distribution<double> u(1.0, 2.0);  // metric-valid at c = 0
    Matrix m(30, 30, 0.0);
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = i + 1; j < 30; ++j) m(i, j) = m(j, i) = u(gen);
    const DistanceMatrix base = DistanceMatrix::from_matrix(std::move(m));
    double max_entry = 0.0;
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 30; ++j) max_entry = std::max(max_entry, base(i, j));

    const double multipliers[5] = {0.0, 1.0, 10.0, 100.0, 1000.0};
    double previous = -1.0;
    double final_um = 0.0;
    for (const double mult : multipliers) {
        const double um = ultrametricity_triangle(additive_shift(base, mult * max_entry), 300,
                                                  kDefaultAngleTol, 9)
                              .um_frac;
        c.expect(um >= previous - 0.05,
                 "umFrac dropped beyond the noise band at c = " + fmt(mult) + " * max");
        previous = um;
        final_um = um;
    }
    c.expect(final_um >= 0.99, "umFrac " + fmt(final_um) + " < 0.99 at c = 1000 * max");
}

// 9. Time-series direction: the logistic map scores below uniform noise for
//    every m and seed; a constant series scores exactly 1; the fingerprint
//    matches the brute-force oracle to 1e-12.
void criterion_tsfp(Checker& c) {
    const TimeSeries chaotic{oracles::logistic_series(2200)};
    for (const std::size_t m : {5UL, 10UL, 20UL}) {
        const double chaos = series_fingerprint(chaotic, m).aggregate;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const TimeSeries noise{oracles::uniform_series(2200, mix_seed(909, seed))};
            const double uniform = series_fingerprint(noise, m).aggregate;
            c.expect(chaos < uniform, "m=" + std::to_string(m) + " seed " +
                                          std::to_string(seed) + ": chaotic " + fmt(chaos) +
                                          " >= uniform " + fmt(uniform));
        }
    }

    const TimeSeries constant{std::vector<double>(2200, 0.7)};
    for (const std::size_t m : {5UL, 10UL, 20UL})
        c.expect(series_fingerprint(constant, m).aggregate == 1.0,
                 "constant series aggregate != 1 at m=" + std::to_string(m));

    const std::vector<double> series = oracles::uniform_series(200, 910);
    const double lib = series_fingerprint(TimeSeries{series}, 10).aggregate;
    const double oracle = oracles::naive_fingerprint(series, 10);
    c.expect(std::abs(lib - oracle) <= 1e-12, "fingerprint departs from the oracle by " +
                                                  fmt(std::abs(lib - oracle)));
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

    const std::vector<Criterion> criteria = {
        {1, "synthetic sweep matches published ultrametricity values", criterion_table1},
        {2, "Gaussian d=20000 repeatability", criterion_gaussian_repeatability},
        {3, "iris raw vs rank-boolean contrast", criterion_iris},
        {4, "correspondence analysis preserves chi2 distances", criterion_ca},
        {5, "exact ultrametric oracle suite", criterion_exact_ultrametrics},
        {6, "Baire distance and partition hierarchy properties", criterion_baire_properties},
        {7, "k-means refinement of Baire clusters", criterion_kmeans_refinement},
        {8, "additive-constant limit", criterion_additive_shift},
        {9, "time-series fingerprint direction and oracle", criterion_tsfp},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        if (only != 0 && criterion.id != only) continue;
        Checker checker;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(checker);
        } catch (const std::exception& e) {
            checker.ok = false;
            checker.detail << "exception: " << e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (checker.ok ? "[PASS] " : "[FAIL] ") << criterion.id << ". "
                  << criterion.name << " (" << fmt(elapsed) << " s)";
        if (!checker.ok) std::cout << " -- " << checker.detail.str();
        std::cout << '\n';
        if (!checker.ok) ++failures;
    }
    return failures;
}
