// netens command-line tool: degree-sequence generation, kernel feasibility
// checks, Monte-Carlo ensembles, closed-form predictions, and
// prediction-vs-simulation comparison, as reproducible file-based pipelines.
//
// Exit codes: 0 success, 1 precondition/parse failure, 2 kernel
// infeasibility, 3 tolerance failure in compare.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "netens/netens.hpp"

using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_tolerance = 3;

constexpr const char* pooling_note =
    "per-vertex values pooled across realizations, grouped by realized degree";

struct GenseqOptions {
    std::string dist;
    std::uint32_t n = 0;
    double gamma = 2.5;
    std::uint32_t k_min = 1;
    std::uint32_t k_max = 0;
    double mean = 0.0;
    std::uint32_t k = 0;
    std::uint64_t seed = 0;
    std::string input;
    std::string out;
};

struct KernelOptions {
    std::string variant = "additive";
    bool clamp = false;
    double constant_p = -1.0;  // <0: use the sequence's p
};

struct EnsembleOptions {
    std::string seq_file;
    KernelOptions kernel;
    std::uint64_t realizations = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::uint64_t min_count = 30;
    std::string out_prefix;
};

struct CompareOptions {
    std::string prefix;
    std::string knn_file, clustering_file, summary_file, predict_file;
    std::uint64_t min_count = 30;
    double knn_slope_tol = 0.15;
    double knn_r2_min = 0.9;
    double c_slope_tol = 0.2;
    double linear_slope_tol = 0.15;   // relative to 2/N
    double intercept_tol = 0.25;      // relative to -p
};

netens::DegreeSequence load_sequence(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw netens::invalid_params("cannot open sequence file: " + path);
    return netens::read_degree_sequence(in);
}

netens::Kernel build_kernel(const KernelOptions& opt, const netens::DegreeSequence& seq) {
    const auto policy = opt.clamp ? netens::ClampPolicy::Clamp : netens::ClampPolicy::Strict;
    if (opt.variant == "constant" && opt.constant_p >= 0.0)
        return netens::make_constant(opt.constant_p, policy);
    return netens::kernel_for_sequence(opt.variant, seq, policy);
}

json sequence_stats(const netens::DegreeSequence& seq) {
    return json{{"n", seq.n()},
                {"z", seq.avg_degree()},
                {"p", seq.avg_connect_prob()},
                {"q", seq.variance_q()}};
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw netens::invalid_params("cannot open output file: " + path);
    out << contents;
}

int cmd_genseq(const GenseqOptions& opt) {
    netens::DegreeSequence seq = [&] {
        if (opt.dist == "powerlaw")
            return netens::sample_power_law(opt.n, {opt.gamma, opt.k_min, opt.k_max}, opt.seed);
        if (opt.dist == "poisson") return netens::sample_poisson(opt.n, opt.mean, opt.seed);
        if (opt.dist == "regular") return netens::regular_sequence(opt.n, opt.k);
        if (opt.dist == "file") {
            if (opt.input.empty())
                throw netens::invalid_params("--dist file requires --input");
            return load_sequence(opt.input);
        }
        throw netens::invalid_params("unknown --dist \"" + opt.dist +
                                     "\" (expected powerlaw, poisson, regular, or file)");
    }();

    std::ostringstream body;
    netens::write_degree_sequence(body, seq);
    write_file(opt.out, body.str());

    json out = sequence_stats(seq);
    out["command"] = "genseq";
    out["dist"] = opt.dist;
    out["out"] = opt.out;
    out["version"] = netens::tool_version;
    if (opt.dist == "powerlaw") {
        out["gamma"] = opt.gamma;
        out["kmin"] = opt.k_min;
        out["kmax"] = opt.k_max;
        out["seed"] = opt.seed;
    } else if (opt.dist == "poisson") {
        out["mean"] = opt.mean;
        out["seed"] = opt.seed;
    } else if (opt.dist == "regular") {
        out["k"] = opt.k;
    } else {
        out["input"] = opt.input;
    }
    std::cout << out.dump(2) << '\n';
    return exit_ok;
}

int cmd_validate(const std::string& seq_file, const KernelOptions& kopt) {
    const auto seq = load_sequence(seq_file);
    const auto kernel = build_kernel(kopt, seq);
    const auto report = netens::validate_feasibility(kernel, seq);

    json out{{"command", "validate"},
             {"version", netens::tool_version},
             {"seq", seq_file},
             {"kernel", kernel.name()},
             {"clamp_policy", netens::to_string(kernel.clamp_policy)},
             {"clamped_low", report.clamped_low},
             {"clamped_high", report.clamped_high},
             {"total_pairs", report.total_pairs},
             {"feasible", report.clean()}};
    out.update(sequence_stats(seq));
    std::cout << out.dump(2) << '\n';
    return report.clean() ? exit_ok : exit_infeasible;
}

// Content-defining configuration embedded in every ensemble output. Worker
// count is deliberately absent: it only schedules work, results are
// bit-identical for any value.
netens::Metadata ensemble_metadata(const EnsembleOptions& opt, const netens::EnsembleSummary& s) {
    netens::Metadata meta;
    meta["version"] = netens::tool_version;
    meta["command"] = "ensemble";
    meta["seq"] = opt.seq_file;
    meta["kernel"] = s.kernel.name();
    meta["clamp_policy"] = netens::to_string(s.kernel.clamp_policy);
    meta["realizations"] = std::to_string(s.realizations);
    meta["master_seed"] = std::to_string(s.master_seed);
    meta["min_count"] = std::to_string(opt.min_count);
    meta["n"] = std::to_string(s.n);
    meta["z"] = netens::format_double(s.z);
    meta["p"] = netens::format_double(s.p);
    meta["q"] = netens::format_double(s.q);
    meta["pooling"] = pooling_note;
    return meta;
}

int cmd_ensemble(const EnsembleOptions& opt) {
    const auto seq = load_sequence(opt.seq_file);
    const auto kernel = build_kernel(opt.kernel, seq);
    const auto summary = netens::run_ensemble(seq, kernel, opt.realizations, opt.seed, opt.workers);

    auto meta = ensemble_metadata(opt, summary);

    std::ostringstream knn_csv;
    meta["kind"] = "knn_spectrum";
    netens::write_spectrum_csv(knn_csv, summary.knn_spectrum(), meta);
    write_file(opt.out_prefix + "_knn.csv", knn_csv.str());

    std::ostringstream clust_csv;
    meta["kind"] = "clustering_spectrum";
    netens::write_spectrum_csv(clust_csv, summary.clustering_spectrum(), meta);
    write_file(opt.out_prefix + "_clustering.csv", clust_csv.str());

    const auto mean_r = summary.mean_r();
    const auto mean_c = summary.mean_clustering();
    const auto mean_e = summary.mean_edge_count();
    json sj{{"n", summary.n},
            {"z", summary.z},
            {"p", summary.p},
            {"q", summary.q},
            {"realizations", summary.realizations},
            {"master_seed", summary.master_seed},
            {"mean_r", mean_r.defined() ? json(mean_r.mean) : json(nullptr)},
            {"mean_r_stderr", mean_r.defined() ? json(mean_r.stderr_) : json(nullptr)},
            {"mean_clustering", mean_c.defined() ? json(mean_c.mean) : json(nullptr)},
            {"mean_clustering_stderr", mean_c.defined() ? json(mean_c.stderr_) : json(nullptr)},
            {"mean_edge_count", mean_e.mean},
            {"mean_edge_count_stderr", mean_e.stderr_},
            {"clamped_low", summary.clamp_totals.clamped_low},
            {"clamped_high", summary.clamp_totals.clamped_high},
            {"kernel", kernel.name()},
            {"clamp_policy", netens::to_string(kernel.clamp_policy)},
            {"clamp_warning", !summary.clamp_totals.clean()},
            {"realized_mean_degree", summary.realized_mean_k()},
            {"realized_mean_k2", summary.realized_mean_k2()},
            {"realized_mean_k3", summary.realized_mean_k3()},
            {"version", netens::tool_version}};
    json config{{"command", "ensemble"},
                {"seq", opt.seq_file},
                {"kernel", kernel.name()},
                {"clamp_policy", netens::to_string(kernel.clamp_policy)},
                {"realizations", opt.realizations},
                {"master_seed", opt.seed},
                {"min_count", opt.min_count},
                {"pooling", pooling_note}};
    sj["config"] = config;
    write_file(opt.out_prefix + "_summary.json", sj.dump(2) + "\n");

    json echo{{"command", "ensemble"},
              {"knn_csv", opt.out_prefix + "_knn.csv"},
              {"clustering_csv", opt.out_prefix + "_clustering.csv"},
              {"summary_json", opt.out_prefix + "_summary.json"},
              {"realizations", summary.realizations},
              {"clamped_low", summary.clamp_totals.clamped_low},
              {"clamped_high", summary.clamp_totals.clamped_high}};
    std::cout << echo.dump(2) << '\n';
    return exit_ok;
}

int cmd_predict(const std::string& seq_file, const std::string& out_file) {
    const auto seq = load_sequence(seq_file);
    const auto pred = netens::make_prediction(seq);

    netens::Metadata meta;
    meta["version"] = netens::tool_version;
    meta["command"] = "predict";
    meta["kind"] = "prediction";
    meta["seq"] = seq_file;
    meta["n"] = std::to_string(pred.n);
    meta["z"] = netens::format_double(pred.z);
    meta["p"] = netens::format_double(pred.p);
    meta["q"] = netens::format_double(pred.q);
    meta["r"] = pred.r ? netens::format_double(*pred.r) : "";
    meta["mean_clustering"] = netens::format_double(pred.mean_clustering);
    meta["linear_slope"] = netens::format_double(pred.linear_slope);
    meta["linear_intercept"] = netens::format_double(pred.linear_intercept);

    std::ostringstream csv;
    netens::write_prediction_csv(csv, pred, seq.min_degree(), seq.max_degree(), meta);
    write_file(out_file, csv.str());

    json out{{"command", "predict"},
             {"version", netens::tool_version},
             {"seq", seq_file},
             {"out", out_file},
             {"n", pred.n},
             {"z", pred.z},
             {"p", pred.p},
             {"q", pred.q},
             {"r", pred.r ? json(*pred.r) : json(nullptr)},
             {"mean_clustering", pred.mean_clustering},
             {"linear_slope", pred.linear_slope},
             {"linear_intercept", pred.linear_intercept}};
    std::cout << out.dump(2) << '\n';
    return exit_ok;
}

bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

int cmd_compare(const CompareOptions& opt) {
    auto open = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw netens::invalid_params("cannot open file: " + path);
        return in;
    };

    auto knn_in = open(opt.knn_file);
    const auto knn = netens::read_spectrum_csv(knn_in);
    auto clust_in = open(opt.clustering_file);
    const auto clust = netens::read_spectrum_csv(clust_in);
    auto pred_in = open(opt.predict_file);
    const auto pred = netens::read_prediction_csv(pred_in);

    auto meta_num = [](const netens::Metadata& meta, const std::string& key,
                       const std::string& path) {
        const auto it = meta.find(key);
        if (it == meta.end())
            throw netens::invalid_params("missing metadata key \"" + key + "\" in " + path);
        return netens::parse_double(it->second, 0);
    };

    const double n_pred = meta_num(pred.meta, "n", opt.predict_file);
    const double z_pred = meta_num(pred.meta, "z", opt.predict_file);
    const double p_pred = meta_num(pred.meta, "p", opt.predict_file);
    for (const auto* sim : {&knn, &clust}) {
        const std::string& path = (sim == &knn) ? opt.knn_file : opt.clustering_file;
        if (!close_rel(meta_num(sim->meta, "n", path), n_pred, 1e-9) ||
            !close_rel(meta_num(sim->meta, "z", path), z_pred, 1e-9))
            throw netens::invalid_params("incompatible inputs: " + path +
                                         " and " + opt.predict_file +
                                         " disagree on n or z");
    }
    if (!opt.summary_file.empty()) {
        auto sin = open(opt.summary_file);
        const json sj = json::parse(sin);
        if (!close_rel(sj.at("n").get<double>(), n_pred, 1e-9) ||
            !close_rel(sj.at("z").get<double>(), z_pred, 1e-9))
            throw netens::invalid_params("incompatible inputs: " + opt.summary_file +
                                         " disagrees on n or z");
    }

    // per-degree deviations in stderr units
    json deviations = json::array();
    for (const auto& row : knn.spectrum.rows) {
        for (const auto& prow : pred.rows) {
            if (prow.degree != row.degree) continue;
            json d{{"degree", row.degree},
                   {"knn_sim", row.mean},
                   {"knn_pred", prow.knn_pred},
                   {"knn_dev_stderr",
                    row.stderr_ > 0 ? json((row.mean - prow.knn_pred) / row.stderr_)
                                    : json(nullptr)}};
            if (const auto* crow = clust.spectrum.find(row.degree)) {
                d["c_sim"] = crow->mean;
                d["c_pred"] = prow.c_pred;
                d["c_dev_stderr"] = crow->stderr_ > 0
                                        ? json((crow->mean - prow.c_pred) / crow->stderr_)
                                        : json(nullptr);
            }
            deviations.push_back(std::move(d));
        }
    }

    netens::DegreeSpectrum knn_kept, clust_kept;
    for (const auto& row : knn.spectrum.rows)
        if (row.count >= opt.min_count) knn_kept.rows.push_back(row);
    for (const auto& row : clust.spectrum.rows)
        if (row.count >= opt.min_count) clust_kept.rows.push_back(row);

    json report{{"command", "compare"},
                {"version", netens::tool_version},
                {"deviations", deviations}};
    bool all_pass = true;
    auto record_fit = [&](const std::string& name, auto&& run) {
        try {
            run();
        } catch (const netens::insufficient_data& e) {
            report[name] = json{{"error", e.what()}, {"pass", false}};
            all_pass = false;
        }
    };

    record_fit("knn_fit", [&] {
        const auto fit = netens::fit_power_slope(knn_kept, z_pred, opt.min_count);
        const bool slope_ok = std::abs(fit.slope - (-1.0)) <= opt.knn_slope_tol;
        const bool r2_ok = fit.r_squared >= opt.knn_r2_min;
        report["knn_fit"] = json{{"slope", fit.slope},           {"target", -1.0},
                                 {"tolerance", opt.knn_slope_tol}, {"r_squared", fit.r_squared},
                                 {"r_squared_min", opt.knn_r2_min}, {"rows_used", fit.rows_used},
                                 {"pass", slope_ok && r2_ok}};
        all_pass = all_pass && slope_ok && r2_ok;
    });

    record_fit("clustering_fit", [&] {
        const auto fit = netens::fit_power_slope(clust_kept, p_pred, opt.min_count);
        const bool slope_ok = std::abs(fit.slope - (-1.0)) <= opt.c_slope_tol;
        report["clustering_fit"] = json{{"slope", fit.slope},
                                        {"target", -1.0},
                                        {"tolerance", opt.c_slope_tol},
                                        {"r_squared", fit.r_squared},
                                        {"rows_used", fit.rows_used},
                                        {"pass", slope_ok}};
        all_pass = all_pass && slope_ok;
    });

    record_fit("linear_fit", [&] {
        const auto fit = netens::fit_linear(knn_kept, clust_kept);
        const double slope_target = 2.0 / n_pred;
        const double icept_target = -p_pred;
        const bool slope_ok =
            std::abs(fit.slope - slope_target) <= opt.linear_slope_tol * std::abs(slope_target);
        const bool icept_ok =
            std::abs(fit.intercept - icept_target) <= opt.intercept_tol * std::abs(icept_target);
        report["linear_fit"] = json{{"slope", fit.slope},
                                    {"slope_target", slope_target},
                                    {"slope_tolerance_rel", opt.linear_slope_tol},
                                    {"intercept", fit.intercept},
                                    {"intercept_target", icept_target},
                                    {"intercept_tolerance_rel", opt.intercept_tol},
                                    {"rows_used", fit.rows_used},
                                    {"pass", slope_ok && icept_ok}};
        all_pass = all_pass && slope_ok && icept_ok;
    });

    report["pass"] = all_pass;
    std::cout << report.dump(2) << '\n';
    return all_pass ? exit_ok : exit_tolerance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-graph ensembles from a degree sequence under additive, "
                 "Chung-Lu, or constant connection kernels"};
    app.require_subcommand(1);

    GenseqOptions gopt;
    auto* genseq = app.add_subcommand("genseq", "sample a degree sequence and write it to a file");
    genseq->add_option("--dist", gopt.dist, "powerlaw | poisson | regular | file")->required();
    genseq->add_option("--n", gopt.n, "number of vertices");
    genseq->add_option("--gamma", gopt.gamma, "power-law exponent (> 1)");
    genseq->add_option("--kmin", gopt.k_min, "power-law minimum degree");
    genseq->add_option("--kmax", gopt.k_max, "power-law maximum degree");
    genseq->add_option("--mean", gopt.mean, "poisson mean (> 0)");
    genseq->add_option("--k", gopt.k, "regular degree");
    genseq->add_option("--seed", gopt.seed, "sampler seed");
    genseq->add_option("--input", gopt.input, "existing sequence file for --dist file");
    genseq->add_option("--out", gopt.out, "output degree-sequence file")->required();

    std::string v_seq;
    KernelOptions v_kernel;
    auto* validate = app.add_subcommand("validate", "clamp census of a kernel over a sequence");
    validate->add_option("--seq", v_seq, "degree-sequence file")->required();
    validate->add_option("--kernel", v_kernel.variant, "additive | chung-lu | constant");
    validate->add_option("--p", v_kernel.constant_p, "probability for the constant kernel");
    validate->add_flag("--clamp", v_kernel.clamp, "clamp out-of-range pairs instead of failing");

    EnsembleOptions eopt;
    auto* ensemble = app.add_subcommand("ensemble", "run realizations and write spectra + summary");
    ensemble->add_option("--seq", eopt.seq_file, "degree-sequence file")->required();
    ensemble->add_option("--kernel", eopt.kernel.variant, "additive | chung-lu | constant");
    ensemble->add_option("--p", eopt.kernel.constant_p, "probability for the constant kernel");
    ensemble->add_flag("--clamp", eopt.kernel.clamp, "clamp out-of-range pairs instead of failing");
    ensemble->add_option("--realizations", eopt.realizations, "number of realizations (>= 1)")
        ->required();
    ensemble->add_option("--seed", eopt.seed, "master seed (required for reproducibility)")
        ->required();
    ensemble->add_option("--workers", eopt.workers, "worker threads (does not affect results)");
    ensemble->add_option("--min-count", eopt.min_count, "min bin count recorded for fits");
    ensemble->add_option("--out-prefix", eopt.out_prefix, "prefix for _knn.csv, _clustering.csv, _summary.json")
        ->required();

    std::string p_seq, p_out;
    auto* predict = app.add_subcommand("predict", "closed-form predictions for a sequence");
    predict->add_option("--seq", p_seq, "degree-sequence file")->required();
    predict->add_option("--out", p_out, "output prediction CSV")->required();

    CompareOptions copt;
    auto* compare = app.add_subcommand("compare", "check simulated spectra against predictions");
    compare->add_option("--ensemble-prefix", copt.prefix, "prefix used by the ensemble command");
    compare->add_option("--knn", copt.knn_file, "simulated knn spectrum CSV");
    compare->add_option("--clustering", copt.clustering_file, "simulated clustering spectrum CSV");
    compare->add_option("--summary", copt.summary_file, "ensemble summary JSON");
    compare->add_option("--predict", copt.predict_file, "prediction CSV")->required();
    compare->add_option("--min-count", copt.min_count, "ignore bins with fewer samples");
    compare->add_option("--knn-slope-tol", copt.knn_slope_tol, "band around -1 for the knn fit");
    compare->add_option("--knn-r2-min", copt.knn_r2_min, "minimum r^2 for the knn fit");
    compare->add_option("--c-slope-tol", copt.c_slope_tol, "band around -1 for the clustering fit");
    compare->add_option("--linear-slope-tol", copt.linear_slope_tol,
                        "relative band around 2/N for the linear fit");
    compare->add_option("--intercept-tol", copt.intercept_tol,
                        "relative band around -p for the linear fit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (genseq->parsed()) return cmd_genseq(gopt);
        if (validate->parsed()) return cmd_validate(v_seq, v_kernel);
        if (ensemble->parsed()) return cmd_ensemble(eopt);
        if (predict->parsed()) return cmd_predict(p_seq, p_out);
        if (compare->parsed()) {
            if (!copt.prefix.empty()) {
                if (copt.knn_file.empty()) copt.knn_file = copt.prefix + "_knn.csv";
                if (copt.clustering_file.empty()) copt.clustering_file = copt.prefix + "_clustering.csv";
                if (copt.summary_file.empty()) copt.summary_file = copt.prefix + "_summary.json";
            }
            if (copt.knn_file.empty() || copt.clustering_file.empty())
                throw netens::invalid_params(
                    "compare needs --ensemble-prefix or both --knn and --clustering");
            return cmd_compare(copt);
        }
    } catch (const netens::infeasible_pair& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_infeasible;
    } catch (const netens::insufficient_data& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_tolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    return exit_invalid;
}
