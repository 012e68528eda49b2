// umtk command line: generators, ultrametricity measures, recoders,
// time-series fingerprints, and Baire prefix clustering over CSV/JSON files.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "umtk/baire.hpp"
#include "umtk/csv_io.hpp"
#include "umtk/errors.hpp"
#include "umtk/recode.hpp"
#include "umtk/seeding.hpp"
#include "umtk/synth.hpp"
#include "umtk/tsfp.hpp"
#include "umtk/um_core.hpp"
#include "umtk/version.hpp"

namespace {

using nlohmann::json;

void write_json(const std::string& path, const json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw umtk::InvalidInput("cannot write file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw umtk::InvalidInput("write failed: " + path);
}

json report_to_json(const umtk::UmReport& r) {
    return json{{"isoscFrac", r.isosc_frac},
                {"equilFrac", r.equil_frac},
                {"umFrac", r.um_frac},
                {"degenerateCount", r.degenerate_count},
                {"trianglesExamined", r.triangles_examined},
                {"exhaustive", r.exhaustive},
                {"seed", r.seed}};
}

// --tol-degrees unset keeps the library default of 0.0349 rad (2 degrees).
double tol_radians(double tol_degrees) {
    if (std::isnan(tol_degrees)) return umtk::kDefaultAngleTol;
    const double tol = tol_degrees * std::numbers::pi / 180.0;
    if (!(tol > 0)) throw umtk::InvalidInput("--tol-degrees must be positive");
    return tol;
}

struct GenerateArgs {
    std::string family;
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;
    double separation = 10.0;
    std::string out;
};

umtk::Family parse_family(const std::string& name) {
    if (name == "uniform01") return umtk::Family::Uniform01;
    if (name == "hypercube") return umtk::Family::HypercubeVertex;
    if (name == "gaussian") return umtk::Family::GaussianStandard;
    if (name == "mixture3") return umtk::Family::Mixture3Gaussian;
    throw umtk::InvalidInput("unknown family: " + name);
}

void run_generate(const GenerateArgs& a) {
    umtk::GeneratorSpec spec;
    spec.family = parse_family(a.family);
    spec.n = a.n;
    spec.d = a.d;
    spec.seed = a.seed;
    spec.separation = a.separation;
    const umtk::GeneratedCloud cloud = umtk::generate(spec);
    umtk::write_cloud_csv(a.out, cloud.cloud.points, cloud.labels);
}

struct MeasureArgs {
    std::string input;
    bool distances = false;
    std::int64_t triangles = umtk::kDefaultMaxTriangles;
    double tol_degrees = std::nan("");
    std::uint64_t seed = 0;
    bool rammal = false;
    bool lerman = false;
    std::string out;
};

void run_measure(const MeasureArgs& a) {
    umtk::DistanceMatrix dist;
    if (a.distances) {
        dist = umtk::read_distance_csv(a.input);
    } else {
        umtk::PointCloud cloud{umtk::read_matrix_csv(a.input)};
        dist = umtk::pairwise_euclidean(cloud);
    }
    const double tol = tol_radians(a.tol_degrees);
    const umtk::UmReport report =
        umtk::ultrametricity_triangle(dist, a.triangles, tol, a.seed);

    json out{{"version", umtk::kVersion},
             {"seed", a.seed},
             {"parameters",
              {{"input", a.input},
               {"distances", a.distances},
               {"triangles", a.triangles},
               {"tolRadians", tol},
               {"seed", a.seed},
               {"rammal", a.rammal},
               {"lerman", a.lerman}}},
             {"report", report_to_json(report)}};
    if (a.rammal) out["rammalDegree"] = umtk::rammal_degree(dist);
    if (a.lerman) out["lermanH"] = umtk::lerman_h(dist, a.triangles, a.seed);
    write_json(a.out, out);
}

struct RecodeArgs {
    std::string input;
    std::string mode;
    double max_value = std::nan("");
    std::string out;
};

void run_recode(const RecodeArgs& a) {
    const umtk::Matrix input = umtk::read_matrix_csv(a.input);
    if (a.mode == "double") {
        if (std::isnan(a.max_value))
            throw umtk::InvalidInput("--max is required for --mode double");
        umtk::write_matrix_csv(a.out, umtk::doubling(input, a.max_value));
    } else if (a.mode == "rank-boolean") {
        const umtk::IndicatorTable table = umtk::rank_booleanize(input);
        std::vector<std::string> header;
        header.reserve(table.column_origin.size());
        for (const auto& origin : table.column_origin)
            header.push_back("var" + std::to_string(origin.variable) + "_rank" +
                             std::to_string(origin.rank));
        umtk::write_matrix_csv(a.out, table.values, header);
    } else if (a.mode == "colnorm") {
        umtk::write_matrix_csv(a.out, umtk::column_normalize(input));
    } else {
        throw umtk::InvalidInput("unknown recode mode: " + a.mode);
    }
}

struct CaArgs {
    std::string input;
    std::string out;
    std::string eigen_out;
};

void run_ca(const CaArgs& a) {
    const umtk::CountTable table = umtk::CountTable::from_matrix(umtk::read_matrix_csv(a.input));
    const umtk::FactorEmbedding embedding = umtk::ca_embed(table);

    std::vector<std::string> header;
    for (std::size_t f = 1; f <= embedding.row_coords.cols(); ++f)
        header.push_back("f" + std::to_string(f));
    umtk::write_matrix_csv(a.out, embedding.row_coords, header);

    double inertia = 0.0;
    for (const double ev : embedding.eigenvalues) inertia += ev;
    write_json(a.eigen_out, json{{"version", umtk::kVersion},
                                 {"seed", nullptr},  // deterministic subcommand
                                 {"parameters", {{"input", a.input}}},
                                 {"rank", embedding.eigenvalues.size()},
                                 {"eigenvalues", embedding.eigenvalues},
                                 {"totalInertia", inertia},
                                 {"rowMasses", embedding.row_masses}});
}

struct TsfpArgs {
    std::string input;
    std::vector<std::size_t> windows;
    std::string out;
};

void run_tsfp(const TsfpArgs& a) {
    const umtk::TimeSeries series{umtk::read_series_csv(a.input)};
    json fingerprints = json::array();
    for (const std::size_t m : a.windows) {
        const umtk::Fingerprint fp = umtk::series_fingerprint(series, m);
        fingerprints.push_back(json{{"m", fp.m},
                                    {"s", fp.window_count},
                                    {"aggregate", fp.aggregate},
                                    {"perWindow", fp.per_window}});
    }
    write_json(a.out, json{{"version", umtk::kVersion},
                           {"seed", nullptr},  // deterministic subcommand
                           {"parameters", {{"input", a.input}, {"m", a.windows}}},
                           {"fingerprints", fingerprints}});
}

struct BaireArgs {
    std::string input;
    int k_max = 4;
    int precision = 4;
    std::int64_t members_max = -1;
    std::string out;
    std::string summary_out;
};

// Values must land in [0, 1); exact 1.0 (a column whose sum equals its single
// nonzero entry) is clamped just below 1 with a warning on stderr.
umtk::NormalizedMatrix load_normalized(const std::string& path, int precision) {
    umtk::Matrix values = umtk::read_matrix_csv(path);
    std::size_t clamped = 0;
    const double below_one = 1.0 - std::pow(10.0, -precision);
    for (std::size_t i = 0; i < values.rows(); ++i)
        for (std::size_t j = 0; j < values.cols(); ++j)
            if (values(i, j) == 1.0) {
                values(i, j) = below_one;
                ++clamped;
            }
    if (clamped > 0)
        std::cerr << json{{"warning", "clamped values equal to 1.0 to " +
                                          umtk::format_double(below_one)},
                          {"count", clamped}}
                         .dump()
                  << '\n';
    return umtk::NormalizedMatrix::from_matrix(std::move(values), precision);
}

json partition_to_json(const umtk::BairePartition& partition, std::int64_t members_max) {
    json clusters = json::array();
    for (const auto& [key, members] : partition.clusters) {
        json cluster{{"key", key}, {"size", members.size()}};
        if (members_max < 0 || members.size() <= static_cast<std::size_t>(members_max))
            cluster["members"] = members;
        clusters.push_back(std::move(cluster));
    }
    return json{{"k", partition.level},
                {"clusterCount", partition.cluster_count()},
                {"clusters", std::move(clusters)}};
}

void run_baire(const BaireArgs& a) {
    const umtk::NormalizedMatrix matrix = load_normalized(a.input, a.precision);
    const std::vector<umtk::BairePartition> levels = umtk::partition_hierarchy(matrix, a.k_max);

    json levels_json = json::array();
    for (const auto& level : levels) levels_json.push_back(partition_to_json(level, a.members_max));
    write_json(a.out, json{{"version", umtk::kVersion},
                           {"seed", nullptr},  // deterministic subcommand
                           {"parameters",
                            {{"input", a.input},
                             {"kMax", a.k_max},
                             {"precision", a.precision},
                             {"membersMax", a.members_max}}},
                           {"levels", std::move(levels_json)}});

    if (!a.summary_out.empty()) {
        umtk::Matrix summary(levels.size(), 3);
        const auto rows = umtk::hierarchy_summary(levels);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            summary(r, 0) = rows[r].level;
            summary(r, 1) = static_cast<double>(rows[r].cluster_count);
            summary(r, 2) = static_cast<double>(rows[r].largest_cluster_size);
        }
        umtk::write_matrix_csv(a.summary_out, summary,
                               {"k", "clusterCount", "largestClusterSize"});
    }
}

struct RefineArgs {
    std::string input;
    std::string partition_path;
    int level = 1;
    int precision = 4;
    std::size_t max_iters = 100;
    std::string out;
};

umtk::BairePartition load_partition_json(const std::string& path, int level) {
    std::ifstream in(path);
    if (!in) throw umtk::InvalidInput("cannot open partition file: " + path);
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/true);

    json partition_json;
    if (doc.contains("levels")) {
        for (const auto& lvl : doc["levels"])
            if (lvl.at("k").get<int>() == level) partition_json = lvl;
        if (partition_json.is_null())
            throw umtk::InvalidInput("partition file has no level k=" + std::to_string(level));
    } else {
        partition_json = doc;
    }

    umtk::BairePartition partition;
    partition.level = partition_json.at("k").get<int>();
    for (const auto& cluster : partition_json.at("clusters")) {
        if (!cluster.contains("members"))
            throw umtk::InvalidInput("partition cluster '" +
                                     cluster.at("key").get<std::string>() +
                                     "' lacks members; regenerate without --members-max");
        partition.clusters[cluster.at("key").get<std::string>()] =
            cluster.at("members").get<std::vector<std::size_t>>();
    }
    return partition;
}

void run_refine(const RefineArgs& a) {
    const umtk::NormalizedMatrix matrix = load_normalized(a.input, a.precision);
    const umtk::BairePartition partition =
        a.partition_path.empty() ? umtk::baire_partition(matrix, a.level)
                                 : load_partition_json(a.partition_path, a.level);
    const umtk::RefinementReport report = umtk::kmeans_refine(matrix, partition, a.max_iters);
    write_json(a.out, json{{"version", umtk::kVersion},
                           {"seed", nullptr},  // deterministic subcommand
                           {"parameters",
                            {{"input", a.input},
                             {"partition", a.partition_path},
                             {"k", partition.level},
                             {"precision", a.precision},
                             {"maxIters", a.max_iters}}},
                           {"report",
                            {{"clusterCount", report.cluster_count},
                             {"largestClusterSize", report.largest_cluster_size},
                             {"discrepancyCount", report.discrepancy_count},
                             {"discrepantClusterCount", report.discrepant_cluster_count},
                             {"iterations", report.iterations}}}});
}

struct Table1Args {
    std::string out;
    std::size_t n = 100;
    std::int64_t triangles = umtk::kDefaultMaxTriangles;
    double tol_degrees = std::nan("");
    std::uint64_t seed = 1;
    std::size_t reps = 5;
    bool full = false;
};

void run_table1(const Table1Args& a) {
    const double tol = tol_radians(a.tol_degrees);
    const std::vector<std::pair<std::string, umtk::Family>> families = {
        {"uniform", umtk::Family::Uniform01},
        {"hypercube", umtk::Family::HypercubeVertex},
        {"gaussian", umtk::Family::GaussianStandard}};
    std::vector<std::size_t> dims = {20, 200, 2000, 20000};
    if (a.full) dims.push_back(200000);

    std::ofstream out(a.out);
    if (!out) throw umtk::InvalidInput("cannot write file: " + a.out);
    out << "family,d,isoscFrac,equilFrac,umFrac\n";
    for (std::size_t f = 0; f < families.size(); ++f) {
        for (std::size_t di = 0; di < dims.size(); ++di) {
            double isosc = 0.0, equil = 0.0, um = 0.0;
            for (std::size_t rep = 0; rep < a.reps; ++rep) {
                umtk::GeneratorSpec spec;
                spec.family = families[f].second;
                spec.n = a.n;
                spec.d = dims[di];
                spec.seed = umtk::mix_seed(a.seed, f, di, rep);
                const umtk::GeneratedCloud cloud = umtk::generate(spec);
                const umtk::DistanceMatrix dist = umtk::pairwise_euclidean(cloud.cloud);
                const umtk::UmReport report = umtk::ultrametricity_triangle(
                    dist, a.triangles, tol, umtk::mix_seed(a.seed + 1, f, di, rep));
                isosc += report.isosc_frac;
                equil += report.equil_frac;
                um += report.um_frac;
            }
            const auto scale = static_cast<double>(a.reps);
            out << families[f].first << ',' << dims[di] << ','
                << umtk::format_double(isosc / scale) << ','
                << umtk::format_double(equil / scale) << ','
                << umtk::format_double(um / scale) << '\n';
        }
    }
    if (!out) throw umtk::InvalidInput("write failed: " + a.out);
}

}  // namespace

int run_app(int argc, char** argv) {
    CLI::App app{"ultrametricity measures, data recoding, and Baire prefix clustering"};

    try {
        app.set_version_flag("--version", std::string(umtk::kVersion));
        app.require_subcommand(1);
        GenerateArgs gen_args;
        auto* gen = app.add_subcommand("generate", "generate a synthetic point cloud CSV");
        gen->add_option("--family", gen_args.family, "uniform01 | hypercube | gaussian | mixture3")
            ->required();
        gen->add_option("-n,--n", gen_args.n, "number of points")->required();
        gen->add_option("-d,--d", gen_args.d, "ambient dimensionality")->required();
        gen->add_option("--seed", gen_args.seed, "RNG seed (default 0)");
        gen->add_option("--separation", gen_args.separation,
                        "mixture3 center distance in sigma units (default 10)");
        gen->add_option("--out", gen_args.out, "output CSV path")->required();

        MeasureArgs measure_args;
        auto* measure = app.add_subcommand("measure", "triangle/Rammal/Lerman ultrametricity of a "
                                                      "point cloud or distance matrix CSV");
        measure->add_option("input", measure_args.input, "input CSV")->required();
        measure->add_flag("--distances", measure_args.distances,
                          "input is a distance matrix (square or lower triangle)");
        measure->add_option("--triangles", measure_args.triangles,
                            "triangle sample budget (default 300)");
        measure->add_option("--tol-degrees", measure_args.tol_degrees,
                            "angle tolerance in degrees (default: 0.0349 rad = 2 degrees)");
        measure->add_option("--seed", measure_args.seed, "sampling seed (default 0)");
        measure->add_flag("--rammal", measure_args.rammal, "also compute the Rammal degree");
        measure->add_flag("--lerman", measure_args.lerman, "also compute Lerman's H");
        measure->add_option("--out", measure_args.out, "output JSON path (default stdout)");

        RecodeArgs recode_args;
        auto* recode = app.add_subcommand("recode", "double | rank-boolean | colnorm recoding");
        recode->add_option("input", recode_args.input, "input CSV")->required();
        recode->add_option("--mode", recode_args.mode, "double | rank-boolean | colnorm")->required();
        recode->add_option("--max", recode_args.max_value, "scale M for --mode double");
        recode->add_option("--out", recode_args.out, "output CSV path")->required();

        CaArgs ca_args;
        auto* ca = app.add_subcommand("ca", "correspondence-analysis row embedding of a count table");
        ca->add_option("input", ca_args.input, "count table CSV")->required();
        ca->add_option("--out", ca_args.out, "row coordinates CSV path")->required();
        ca->add_option("--eigen-out", ca_args.eigen_out, "eigenvalue JSON path (default stdout)");

        TsfpArgs tsfp_args;
        auto* tsfp = app.add_subcommand("tsfp", "time-series ultrametricity fingerprint");
        tsfp->add_option("input", tsfp_args.input, "series CSV (single column)")->required();
        tsfp->add_option("--m", tsfp_args.windows, "window lengths, e.g. --m 5,10,20")
            ->required()
            ->delimiter(',');
        tsfp->add_option("--out", tsfp_args.out, "output JSON path (default stdout)");

        BaireArgs baire_args;
        auto* baire = app.add_subcommand("baire", "Baire prefix partition hierarchy of a "
                                                  "normalized matrix");
        baire->add_option("input", baire_args.input, "normalized matrix CSV, values in [0, 1)")
            ->required();
        baire->add_option("--kmax", baire_args.k_max, "deepest digit level (default 4)");
        baire->add_option("--precision", baire_args.precision, "digits available, K (default 4)");
        baire->add_option("--members-max", baire_args.members_max,
                          "omit member lists for clusters larger than this (default: keep all)");
        baire->add_option("--out", baire_args.out, "hierarchy JSON path (default stdout)");
        baire->add_option("--summary-out", baire_args.summary_out,
                          "per-level summary CSV (k, clusterCount, largestClusterSize)");

        RefineArgs refine_args;
        auto* refine = app.add_subcommand("refine", "k-means refinement seeded by a Baire partition");
        refine->add_option("input", refine_args.input, "normalized matrix CSV")->required();
        refine->add_option("--partition", refine_args.partition_path,
                           "partition JSON from `baire` (default: recompute at --k)");
        refine->add_option("--k", refine_args.level, "Baire level to refine (default 1)");
        refine->add_option("--precision", refine_args.precision, "digits available, K (default 4)");
        refine->add_option("--max-iters", refine_args.max_iters, "Lloyd iteration cap (default 100)");
        refine->add_option("--out", refine_args.out, "report JSON path (default stdout)");

        Table1Args table1_args;
        auto* table1 = app.add_subcommand("table1", "ultrametricity sweep over the three synthetic "
                                                    "families and d in {20, 200, 2000, 20000}");
        table1->add_option("--out", table1_args.out, "output CSV path")->required();
        table1->add_option("--n", table1_args.n, "points per cloud (default 100)");
        table1->add_option("--triangles", table1_args.triangles, "triangle budget (default 300)");
        table1->add_option("--tol-degrees", table1_args.tol_degrees,
                           "angle tolerance in degrees (default: 0.0349 rad = 2 degrees)");
        table1->add_option("--seed", table1_args.seed, "base seed (default 1)");
        table1->add_option("--reps", table1_args.reps, "seeds averaged per cell (default 5)");
        table1->add_flag("--full", table1_args.full, "also run d = 200000");

        app.parse(argc, argv);
        if (gen->parsed()) run_generate(gen_args);
        if (measure->parsed()) run_measure(measure_args);
        if (recode->parsed()) run_recode(recode_args);
        if (ca->parsed()) run_ca(ca_args);
        if (tsfp->parsed()) run_tsfp(tsfp_args);
        if (baire->parsed()) run_baire(baire_args);
        if (refine->parsed()) run_refine(refine_args);
        if (table1->parsed()) run_table1(table1_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const umtk::CsvError& e) {
        std::cerr << json{{"error", e.what()},
                          {"file", e.file()},
                          {"row", e.row()},
                          {"column", e.column()}}
                         .dump()
                  << '\n';
        return 2;
    } catch (const umtk::InvalidInput& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 3;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (...) {
        return 1;
    }
}
