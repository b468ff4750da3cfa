// Acceptance suite: end-to-end checks of the ensemble toolkit at desk scale.
// Prints one PASS/FAIL line per criterion and exits with the number of
// failures. argv[1] must be the path to the netens CLI binary (used by the
// byte-determinism criterion); argv[2] optionally overrides the scratch dir.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netens/netens.hpp"

using namespace netens;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", criterion, name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

struct MeanStderr {
    double mean;
    double se;
};

MeanStderr stats(double sum, double sumsq, double n) {
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

// ---- criteria 1-3: paper-scale spectra ------------------------------------
//
// Power-law sequence, g = 2.5, N = 1000, support [4, 100]. The empirical mean
// degree of such a sequence is z ~ 8.7 > 2*k_min = 8, so pairs of minimum-
// degree vertices have raw p_ij < 0 and a strict kernel can never run; the
// ensemble uses the clamping kernel (clamps are counted and are ~8% of pairs
// at ~|0.0007| each, negligible against the fitted slopes).
void criteria_1_2_3() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto seq = sample_power_law(1000, {2.5, 4, 100}, 1);
    const auto kernel = kernel_for_sequence("additive", seq, ClampPolicy::Clamp);
    const auto summary = run_ensemble(seq, kernel, 1000, 1, 1);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto knn = summary.knn_spectrum();
    const auto clust = summary.clustering_spectrum();

    try {
        const auto fit = fit_power_slope(knn, summary.z, 30);
        const bool pass = std::abs(fit.slope + 1.0) <= 0.15 && fit.r_squared >= 0.9 &&
                          elapsed < 180.0;
        report(1, "knn spectrum follows (knn - z) ~ k^-1", pass,
               fmt("slope=%.4f (band -1+-0.15), r2=%.4f (min 0.9), rows=%zu, z=%.3f, "
                   "runtime %.1fs single-threaded (limit 180s)",
                   fit.slope, fit.r_squared, fit.rows_used, summary.z, elapsed));
    } catch (const std::exception& e) {
        report(1, "knn spectrum follows (knn - z) ~ k^-1", false, e.what());
    }

    try {
        const auto fit = fit_power_slope(clust, summary.p, 30);
        report(2, "clustering spectrum follows (C - p) ~ k^-1",
               std::abs(fit.slope + 1.0) <= 0.2,
               fmt("slope=%.4f (band -1+-0.2), r2=%.4f, rows=%zu", fit.slope, fit.r_squared,
                   fit.rows_used));
    } catch (const std::exception& e) {
        report(2, "clustering spectrum follows (C - p) ~ k^-1", false, e.what());
    }

    try {
        DegreeSpectrum knn_kept, clust_kept;
        for (const auto& row : knn.rows)
            if (row.count >= 30) knn_kept.rows.push_back(row);
        for (const auto& row : clust.rows)
            if (row.count >= 30) clust_kept.rows.push_back(row);
        const auto fit = fit_linear(knn_kept, clust_kept);
        const double slope_target = 2.0 / summary.n;
        const double icept_target = -summary.p;
        const bool slope_ok = std::abs(fit.slope - slope_target) <= 0.15 * slope_target;
        const bool icept_ok =
            std::abs(fit.intercept - icept_target) <= 0.25 * std::abs(icept_target);
        report(3, "C(k) is linear in knn(k) with slope 2/N and intercept -p",
               slope_ok && icept_ok,
               fmt("slope=%.6f (target %.6f +-15%%), intercept=%.6f (target %.6f +-25%%)",
                   fit.slope, slope_target, fit.intercept, icept_target));
    } catch (const std::exception& e) {
        report(3, "C(k) is linear in knn(k) with slope 2/N and intercept -p", false, e.what());
    }
}

// ---- criteria 4-5: expected degree + assortativity -------------------------

struct VertexDegreePools {
    std::vector<std::uint64_t> sum, sumsq;
    double r_sum = 0, r_sumsq = 0;
    std::uint64_t r_count = 0;
    uint128 m1 = 0, m2 = 0, m3 = 0;
    std::uint64_t samples = 0;
};

VertexDegreePools degree_ensemble(const DegreeSequence& seq, const Kernel& kernel,
                                  std::uint64_t r_count, std::uint64_t master_seed) {
    VertexDegreePools pools;
    pools.sum.assign(seq.n(), 0);
    pools.sumsq.assign(seq.n(), 0);
    for (std::uint64_t t = 0; t < r_count; ++t) {
        const auto g = generate(seq, kernel, rng::realization_seed(master_seed, t)).graph;
        for (std::uint32_t i = 0; i < seq.n(); ++i) {
            const std::uint64_t d = g.adj[i].size();
            pools.sum[i] += d;
            pools.sumsq[i] += d * d;
            pools.m1 += d;
            pools.m2 += d * d;
            pools.m3 += static_cast<uint128>(d * d) * d;
        }
        pools.samples += seq.n();
        if (const auto r = assortativity(g)) {
            pools.r_sum += *r;
            pools.r_sumsq += *r * *r;
            ++pools.r_count;
        }
    }
    return pools;
}

bool check_expected_degrees(const DegreeSequence& seq, const VertexDegreePools& pools,
                            std::uint64_t r_count, double& worst) {
    worst = 0.0;
    bool pass = true;
    for (std::uint32_t i = 0; i < seq.n(); ++i) {
        const auto s = stats(static_cast<double>(pools.sum[i]),
                             static_cast<double>(pools.sumsq[i]), static_cast<double>(r_count));
        const double k = seq.degree(i);
        const double self_pair_bias = (2.0 * k - seq.avg_degree()) / seq.n();
        const double band = std::max(3.0 * s.se, self_pair_bias + 3.0 * s.se);
        const double dev = std::abs(s.mean - k);
        worst = std::max(worst, band > 0 ? dev / band : 0.0);
        if (dev > band) pass = false;
    }
    return pass;
}

void criteria_4_5() {
    const std::uint64_t r_count = 10000;

    const auto regular = regular_sequence(100, 4);
    const auto reg_pools =
        degree_ensemble(regular, kernel_for_sequence("additive", regular), r_count, 2001);

    const auto powerlaw = sample_power_law(100, {2.5, 8, 30}, 11);  // feasible: 2*k_min > z
    const auto pl_pools =
        degree_ensemble(powerlaw, kernel_for_sequence("additive", powerlaw), r_count, 2002);

    double worst_reg = 0, worst_pl = 0;
    const bool reg_ok = check_expected_degrees(regular, reg_pools, r_count, worst_reg);
    const bool pl_ok = check_expected_degrees(powerlaw, pl_pools, r_count, worst_pl);
    report(4, "ensemble-mean vertex degrees match desired degrees", reg_ok && pl_ok,
           fmt("regular N=100 worst dev/band=%.2f; power-law N=100 (z=%.2f) worst dev/band=%.2f; "
               "R=%llu",
               worst_reg, powerlaw.avg_degree(), worst_pl,
               static_cast<unsigned long long>(r_count)));

    // Assortativity. The per-realization Pearson estimator carries a
    // finite-size bias of order 1/N (about -0.024 for the N=100 regular
    // baseline, where the model itself is uncorrelated), and realized-degree
    // moments are broadened by per-realization fluctuations, so the
    // moment-based prediction and the measured mean differ systematically by
    // far more than three standard errors of the mean at R=10^4. The checks
    // below state the nominal bands and report the measured gap honestly.
    const auto pl_r = stats(pl_pools.r_sum, pl_pools.r_sumsq,
                            static_cast<double>(pl_pools.r_count));
    const double samples = static_cast<double>(pl_pools.samples);
    const auto pred_realized =
        predict_r_from_moments(to_double(pl_pools.m1) / samples, to_double(pl_pools.m2) / samples,
                               to_double(pl_pools.m3) / samples);
    const auto pred_desired = predict_r(powerlaw);

    const bool pl_negative = pl_r.mean < 0.0;
    const bool pl_within =
        pred_realized && std::abs(pl_r.mean - *pred_realized) <= 3.0 * pl_r.se;

    const auto reg_r = stats(reg_pools.r_sum, reg_pools.r_sumsq,
                             static_cast<double>(reg_pools.r_count));
    const bool reg_within = reg_pools.r_count == 0 || std::abs(reg_r.mean) <= 3.0 * reg_r.se;

    report(5, "measured assortativity matches moment prediction within 3 stderr",
           pl_negative && pl_within && reg_within,
           fmt("power-law: mean_r=%.5f stderr=%.5f, predicted(realized moments)=%.5f "
               "[gap %.1f se], predicted(desired moments)=%.5f [gap %.1f se]; "
               "regular: mean_r=%.5f stderr=%.5f [%.1f se from 0]",
               pl_r.mean, pl_r.se, pred_realized ? *pred_realized : 0.0,
               pred_realized ? std::abs(pl_r.mean - *pred_realized) / pl_r.se : -1.0,
               pred_desired ? *pred_desired : 0.0,
               pred_desired ? std::abs(pl_r.mean - *pred_desired) / pl_r.se : -1.0, reg_r.mean,
               reg_r.se, std::abs(reg_r.mean) / reg_r.se));
}

// ---- criterion 6: exact small-N enumeration --------------------------------

void criterion_6() {
    const auto seq = DegreeSequence::from_list({2, 2, 3, 3});
    const auto kernel = kernel_for_sequence("additive", seq);
    const std::uint32_t n = seq.n();

    // enumerate all 2^6 weighted graphs
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<double> enum_degree(n, 0.0), enum_triangles(n, 0.0);
    for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
        double weight = 1.0;
        bool adj[4][4] = {};
        for (std::size_t e = 0; e < pairs.size(); ++e) {
            const auto [i, j] = pairs[e];
            const double p = pair_prob(kernel, seq.degree(i), seq.degree(j)).value;
            if (mask >> e & 1) {
                weight *= p;
                adj[i][j] = adj[j][i] = true;
            } else {
                weight *= 1.0 - p;
            }
        }
        for (std::uint32_t v = 0; v < n; ++v) {
            std::uint32_t d = 0, tri = 0;
            for (std::uint32_t u = 0; u < n; ++u) d += adj[v][u];
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = a + 1; b < n; ++b)
                    if (adj[v][a] && adj[v][b] && adj[a][b]) ++tri;
            enum_degree[v] += weight * d;
            enum_triangles[v] += weight * tri;
        }
    }

    bool analytic_ok = true;
    double worst_rel = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) {
        const double deg_pred = predict_expected_degree(seq, v).simple_graph;
        const double tri_pred = predict_expected_triangles_at(seq, kernel, v);
        const double deg_rel = std::abs(deg_pred - enum_degree[v]) / enum_degree[v];
        const double tri_rel = std::abs(tri_pred - enum_triangles[v]) / enum_triangles[v];
        worst_rel = std::max({worst_rel, deg_rel, tri_rel});
        if (deg_rel > 1e-10 || tri_rel > 1e-10) analytic_ok = false;
    }

    // 10^5-realization ensemble against the same enumeration
    const std::uint64_t r_count = 100000;
    std::vector<std::uint64_t> deg_sum(n, 0), deg_sumsq(n, 0), tri_sum(n, 0), tri_sumsq(n, 0);
    for (std::uint64_t t = 0; t < r_count; ++t) {
        const auto g = generate(seq, kernel, rng::realization_seed(1003, t)).graph;
        const auto counts = vertex_counts(g);
        for (std::uint32_t v = 0; v < n; ++v) {
            const std::uint64_t d = counts[v].degree, e = counts[v].triangle_edges;
            deg_sum[v] += d;
            deg_sumsq[v] += d * d;
            tri_sum[v] += e;
            tri_sumsq[v] += e * e;
        }
    }
    bool mc_ok = true;
    double worst_se = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto d = stats(static_cast<double>(deg_sum[v]), static_cast<double>(deg_sumsq[v]),
                             static_cast<double>(r_count));
        const auto e = stats(static_cast<double>(tri_sum[v]), static_cast<double>(tri_sumsq[v]),
                             static_cast<double>(r_count));
        worst_se = std::max({worst_se, std::abs(d.mean - enum_degree[v]) / d.se,
                             std::abs(e.mean - enum_triangles[v]) / e.se});
        if (std::abs(d.mean - enum_degree[v]) > 3.0 * d.se ||
            std::abs(e.mean - enum_triangles[v]) > 3.0 * e.se)
            mc_ok = false;
    }

    report(6, "exact enumeration at N=4 matches analytics and Monte Carlo",
           analytic_ok && mc_ok,
           fmt("worst analytic rel dev=%.2e (limit 1e-10); worst MC dev=%.2f se (limit 3)",
               worst_rel, worst_se));
}

// ---- criterion 7: edge-count oracle ----------------------------------------

void criterion_7() {
    const auto seq = DegreeSequence::from_list({2, 3, 3, 4, 4, 4, 5, 7});
    const auto kernel = kernel_for_sequence("additive", seq);
    // direct pair sweep; equals (sum k_i - sum_i (2k_i - z)/N)/2 = 14 exactly
    const double expected = expected_edge_total(seq, kernel);
    const auto summary = run_ensemble(seq, kernel, 100000, 1004, 2);
    const auto edges = summary.mean_edge_count();
    const double dev = std::abs(edges.mean - expected) / edges.stderr_;
    report(7, "ensemble mean edge count matches pair-probability sum",
           std::abs(edges.mean - expected) <= 3.0 * edges.stderr_ &&
               std::abs(expected - 14.0) < 1e-12,
           fmt("mean=%.5f expected=%.5f stderr=%.5f dev=%.2f se, R=100000", edges.mean, expected,
               edges.stderr_, dev));
}

// ---- criterion 8: byte-identical CLI outputs --------------------------------

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void criterion_8(const std::string& cli, const fs::path& scratch) {
    const fs::path seq_file = scratch / "seq.txt";
    {
        std::ofstream out(seq_file);
        for (int k : {2, 3, 3, 4, 4, 4, 5, 7}) out << k << '\n';
    }
    auto run_cli = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " >" + (scratch / "out.log").string() +
                                " 2>" + (scratch / "err.log").string();
        return std::system(cmd.c_str()) == 0;
    };
    const std::string base = "ensemble --seq " + seq_file.string() +
                             " --kernel additive --realizations 200 --seed 42 ";
    bool ran = run_cli(base + "--workers 1 --out-prefix " + (scratch / "a").string());
    ran = run_cli(base + "--workers 1 --out-prefix " + (scratch / "b").string()) && ran;
    ran = run_cli(base + "--workers 8 --out-prefix " + (scratch / "c").string()) && ran;

    bool identical = ran;
    std::string mismatch = "all outputs byte-identical across reruns and workers {1,8}";
    for (const char* suffix : {"_knn.csv", "_clustering.csv", "_summary.json"}) {
        const auto a = slurp(scratch / (std::string("a") + suffix));
        const auto b = slurp(scratch / (std::string("b") + suffix));
        const auto c = slurp(scratch / (std::string("c") + suffix));
        if (a.empty() || a != b || a != c) {
            identical = false;
            mismatch = std::string("mismatch or empty output in *") + suffix;
        }
    }
    if (!ran) mismatch = "CLI invocation failed";
    report(8, "CLI ensemble outputs are byte-identical", identical, mismatch);
}

// ---- criterion 9: algebraic identities --------------------------------------

void criterion_9() {
    std::mt19937_64 rng(4242);
    bool pass = true;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint32_t> degrees(5 + rng() % 300);
        const std::uint32_t spread = 1 + rng() % 40;
        for (auto& k : degrees) k = 1 + rng() % spread;
        const auto seq = DegreeSequence::from_list(degrees);
        const double z = seq.avg_degree(), p = seq.avg_connect_prob(), q = seq.variance_q();
        const double n = static_cast<double>(seq.n());
        for (std::uint32_t k = 1; k <= 100; ++k) {
            const double knn = predict_knn(seq, k);
            const double ck = predict_clustering_of_k(seq, k);
            const double rel1 =
                std::abs(ck - (2.0 / n * knn - p)) / std::max(1e-300, std::abs(ck));
            const double rel2 = std::abs((knn - z) * k - q) / std::max(1.0, q);
            const double rel3 =
                std::abs((ck - p) * k - 2.0 * q / n) / std::max(1e-300, 2.0 * q / n + 1e-30);
            worst = std::max({worst, rel1, rel2, q == 0.0 ? 0.0 : rel3});
            if (rel1 > 1e-12 || rel2 > 1e-12 || (q > 0.0 && rel3 > 1e-12)) pass = false;
        }
    }
    report(9, "closed-form identities hold to 1e-12", pass,
           fmt("100 random sequences, k in [1,100], worst relative deviation %.2e", worst));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <netens-cli-path> [scratch-dir]\n", argv[0]);
        return 64;
    }
    const std::string cli = argv[1];
    const fs::path scratch =
        argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "netens_acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    criteria_1_2_3();
    criteria_4_5();
    criterion_6();
    criterion_7();
    criterion_8(cli, scratch);
    criterion_9();

    fs::remove_all(scratch);
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
