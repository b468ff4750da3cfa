#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "netens/degseq.hpp"
#include "netens/errors.hpp"
#include "netens/generator.hpp"
#include "netens/graph.hpp"
#include "netens/kernel.hpp"
#include "netens/metrics.hpp"
#include "netens/rng.hpp"
#include "netens/wideint.hpp"

namespace netens {

struct SpectrumRow {
    std::uint32_t degree;
    double mean;
    double stderr_;  // sample standard deviation / sqrt(count)
    std::uint64_t count;
};

// Per-degree aggregated statistics of a vertex quantity; rows sorted by
// degree, one row per populated degree.
struct DegreeSpectrum {
    std::vector<SpectrumRow> rows;

    const SpectrumRow* find(std::uint32_t degree) const {
        for (const auto& r : rows)
            if (r.degree == degree) return &r;
        return nullptr;
    }
};

struct ScalarStat {
    std::uint64_t count = 0;
    double mean = 0.0;
    double stderr_ = 0.0;

    bool defined() const { return count > 0; }
};

namespace detail {

// Pooled integer samples for one degree bin. Integer sums make the pool
// exact, so merging bins is associative and worker-count invariant.
struct SpectrumBin {
    std::uint64_t count = 0;
    uint128 sum = 0;
    uint128 sumsq = 0;

    bool operator==(const SpectrumBin&) const = default;

    void add(std::uint64_t value) {
        ++count;
        sum += value;
        sumsq += static_cast<uint128>(value) * value;
    }

    void merge(const SpectrumBin& other) {
        count += other.count;
        sum += other.sum;
        sumsq += other.sumsq;
    }

    // Sample variance of the raw integer samples, from the exact numerator
    // n*sumsq - sum^2 (zero iff all samples are equal).
    double variance() const {
        if (count < 2) return 0.0;
        const uint128 numer = static_cast<uint128>(count) * sumsq - sum * sum;
        return to_double(numer) / (static_cast<double>(count) * static_cast<double>(count - 1));
    }
};

struct SpectrumAccum {
    std::vector<SpectrumBin> bins;  // indexed by degree

    bool operator==(const SpectrumAccum&) const = default;

    void add(std::uint32_t degree, std::uint64_t value) {
        if (degree >= bins.size()) bins.resize(degree + 1);
        bins[degree].add(value);
    }

    void merge(const SpectrumAccum& other) {
        if (other.bins.size() > bins.size()) bins.resize(other.bins.size());
        for (std::size_t d = 0; d < other.bins.size(); ++d) bins[d].merge(other.bins[d]);
    }
};

// Pool of per-realization scalars in [-1,1], accumulated as exact 2^-62
// fixed-point integers (see wideint.hpp).
struct FixedScalarAccum {
    std::uint64_t count = 0;
    int128 sum = 0;
    int128 sumsq = 0;

    bool operator==(const FixedScalarAccum&) const = default;

    void add(double x) {
        ++count;
        sum += to_fixed62(x);
        sumsq += to_fixed62(x * x);
    }

    void merge(const FixedScalarAccum& other) {
        count += other.count;
        sum += other.sum;
        sumsq += other.sumsq;
    }

    ScalarStat stat() const {
        ScalarStat s;
        s.count = count;
        if (count == 0) return s;
        const double sx = from_fixed62(sum);
        const double sxx = from_fixed62(sumsq);
        s.mean = sx / static_cast<double>(count);
        if (count >= 2) {
            const double var =
                std::max(0.0, (sxx - sx * s.mean) / static_cast<double>(count - 1));
            s.stderr_ = std::sqrt(var / static_cast<double>(count));
        }
        return s;
    }
};

// Pool of per-realization integer scalars (edge counts).
struct IntScalarAccum {
    std::uint64_t count = 0;
    uint128 sum = 0;
    uint128 sumsq = 0;

    bool operator==(const IntScalarAccum&) const = default;

    void add(std::uint64_t x) {
        ++count;
        sum += x;
        sumsq += static_cast<uint128>(x) * x;
    }

    void merge(const IntScalarAccum& other) {
        count += other.count;
        sum += other.sum;
        sumsq += other.sumsq;
    }

    ScalarStat stat() const {
        ScalarStat s;
        s.count = count;
        if (count == 0) return s;
        s.mean = to_double(sum) / static_cast<double>(count);
        if (count >= 2) {
            const uint128 numer = static_cast<uint128>(count) * sumsq - sum * sum;
            const double var =
                to_double(numer) / (static_cast<double>(count) * static_cast<double>(count - 1));
            s.stderr_ = std::sqrt(var / static_cast<double>(count));
        }
        return s;
    }
};

}  // namespace detail

// Aggregated spectra and scalars over a contiguous block of realizations
// [first_realization, first_realization + realizations). All pooled state is
// integer-exact, so merge_summaries is associative and a run is bit-identical
// for any worker count.
//
// Pooling conventions (the analytic formulas are stated over desired degrees,
// so the spectra measure them the same way):
//   - knn values are mean *desired* degree over a vertex's neighbors,
//     grouped by the vertex's *realized* degree;
//   - clustering values are realized 2 E_i / (d_i (d_i - 1)), grouped by
//     realized degree;
//   - per-vertex values with undefined entries (d < 1 resp. d < 2) are
//     excluded from the pools.
struct EnsembleSummary {
    // lineage
    std::uint32_t n = 0;
    double z = 0, p = 0, q = 0;
    Kernel kernel;
    std::uint64_t master_seed = 0;
    std::uint64_t first_realization = 0;
    std::uint64_t realizations = 0;

    // pooled state
    detail::SpectrumAccum knn_acc;    // raw values: sum of neighbor desired degrees
    detail::SpectrumAccum clust_acc;  // raw values: E_i (edges among neighbors)
    std::vector<std::uint64_t> degree_histogram;  // realized degree counts, incl. 0
    detail::FixedScalarAccum r_acc;
    detail::FixedScalarAccum mean_clust_acc;
    detail::IntScalarAccum edge_acc;
    uint128 realized_moment1 = 0, realized_moment2 = 0, realized_moment3 = 0;
    std::uint64_t moment_samples = 0;
    ClampReport clamp_totals;

    bool operator==(const EnsembleSummary&) const = default;

    static EnsembleSummary make_empty(const DegreeSequence& seq, const Kernel& kernel,
                                      std::uint64_t master_seed, std::uint64_t first = 0) {
        EnsembleSummary s;
        s.n = seq.n();
        s.z = seq.avg_degree();
        s.p = seq.avg_connect_prob();
        s.q = seq.variance_q();
        s.kernel = kernel;
        s.master_seed = master_seed;
        s.first_realization = first;
        return s;
    }

    // knn value at degree k is S/k for integer S: mean = sum(S)/(k*count),
    // stderr scales the integer-sample stderr by 1/k.
    DegreeSpectrum knn_spectrum() const {
        DegreeSpectrum spec;
        for (std::uint32_t d = 0; d < knn_acc.bins.size(); ++d) {
            const auto& bin = knn_acc.bins[d];
            if (bin.count == 0) continue;
            const double scale = 1.0 / static_cast<double>(d);
            spec.rows.push_back({d,
                                 to_double(bin.sum) * scale / static_cast<double>(bin.count),
                                 std::sqrt(bin.variance() / static_cast<double>(bin.count)) * scale,
                                 bin.count});
        }
        return spec;
    }

    // clustering value at degree k is 2E/(k(k-1)).
    DegreeSpectrum clustering_spectrum() const {
        DegreeSpectrum spec;
        for (std::uint32_t d = 0; d < clust_acc.bins.size(); ++d) {
            const auto& bin = clust_acc.bins[d];
            if (bin.count == 0) continue;
            const double scale = 2.0 / (static_cast<double>(d) * (static_cast<double>(d) - 1.0));
            spec.rows.push_back({d,
                                 to_double(bin.sum) * scale / static_cast<double>(bin.count),
                                 std::sqrt(bin.variance() / static_cast<double>(bin.count)) * scale,
                                 bin.count});
        }
        return spec;
    }

    ScalarStat mean_r() const { return r_acc.stat(); }
    ScalarStat mean_clustering() const { return mean_clust_acc.stat(); }
    ScalarStat mean_edge_count() const { return edge_acc.stat(); }

    // Realized-degree moments pooled over all (vertex, realization) samples.
    double realized_mean_k() const { return to_double(realized_moment1) / moment_samples; }
    double realized_mean_k2() const { return to_double(realized_moment2) / moment_samples; }
    double realized_mean_k3() const { return to_double(realized_moment3) / moment_samples; }
};

namespace detail {

inline void accumulate_realization(EnsembleSummary& acc, const DegreeSequence& seq,
                                   const Graph& graph) {
    const std::uint32_t n = graph.n;
    if (acc.degree_histogram.empty()) acc.degree_histogram.resize(1, 0);

    double clust_sum = 0.0;
    std::uint64_t clust_eligible = 0;

    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& nb = graph.adj[i];
        const std::uint64_t d = nb.size();
        if (d >= acc.degree_histogram.size()) acc.degree_histogram.resize(d + 1, 0);
        ++acc.degree_histogram[d];
        acc.realized_moment1 += d;
        acc.realized_moment2 += d * d;
        acc.realized_moment3 += static_cast<uint128>(d * d) * d;
        if (d == 0) continue;

        std::uint64_t desired_sum = 0;
        for (std::uint32_t j : nb) desired_sum += seq.degree(j);
        acc.knn_acc.add(static_cast<std::uint32_t>(d), desired_sum);

        if (d >= 2) {
            std::uint64_t tri2 = 0;
            for (std::uint32_t j : nb) tri2 += sorted_intersection_size(nb, graph.adj[j]);
            const std::uint64_t e_i = tri2 / 2;
            acc.clust_acc.add(static_cast<std::uint32_t>(d), e_i);
            clust_sum += 2.0 * static_cast<double>(e_i) /
                         (static_cast<double>(d) * (static_cast<double>(d) - 1.0));
            ++clust_eligible;
        }
    }
    acc.moment_samples += n;

    acc.edge_acc.add(graph.edge_count);
    if (const auto r = assortativity(graph)) acc.r_acc.add(*r);
    if (clust_eligible > 0) acc.mean_clust_acc.add(clust_sum / static_cast<double>(clust_eligible));
}

inline EnsembleSummary run_block(const DegreeSequence& seq, const Kernel& kernel,
                                 std::uint64_t master_seed, std::uint64_t t_begin,
                                 std::uint64_t t_end) {
    EnsembleSummary acc = EnsembleSummary::make_empty(seq, kernel, master_seed, t_begin);
    acc.realizations = t_end - t_begin;
    for (std::uint64_t t = t_begin; t < t_end; ++t) {
        const auto result = generate(seq, kernel, rng::realization_seed(master_seed, t));
        acc.clamp_totals += result.clamps;
        accumulate_realization(acc, seq, result.graph);
    }
    return acc;
}

}  // namespace detail

// Pool two summaries over adjacent realization blocks. Bit-identical to a
// single run over the union: every pooled quantity is an integer sum.
inline EnsembleSummary merge_summaries(const EnsembleSummary& a, const EnsembleSummary& b) {
    if (a.realizations == 0 && a.moment_samples == 0) {
        if (a.n != 0 && (a.n != b.n || a.master_seed != b.master_seed || !(a.kernel == b.kernel)))
            throw incompatible_summaries("empty summary lineage does not match");
        return b;
    }
    if (b.realizations == 0 && b.moment_samples == 0) {
        if (b.n != 0 && (b.n != a.n || b.master_seed != a.master_seed || !(b.kernel == a.kernel)))
            throw incompatible_summaries("empty summary lineage does not match");
        return a;
    }
    if (a.n != b.n || a.z != b.z || a.p != b.p || a.q != b.q)
        throw incompatible_summaries("summaries come from different degree sequences");
    if (!(a.kernel == b.kernel))
        throw incompatible_summaries("summaries come from different kernels");
    if (a.master_seed != b.master_seed)
        throw incompatible_summaries("summaries have different master seeds");
    if (a.first_realization + a.realizations != b.first_realization)
        throw incompatible_summaries(
            "realization ranges are not adjacent: [" + std::to_string(a.first_realization) + ", " +
            std::to_string(a.first_realization + a.realizations) + ") then [" +
            std::to_string(b.first_realization) + ", ...)");

    EnsembleSummary out = a;
    out.realizations += b.realizations;
    out.knn_acc.merge(b.knn_acc);
    out.clust_acc.merge(b.clust_acc);
    if (b.degree_histogram.size() > out.degree_histogram.size())
        out.degree_histogram.resize(b.degree_histogram.size(), 0);
    for (std::size_t d = 0; d < b.degree_histogram.size(); ++d)
        out.degree_histogram[d] += b.degree_histogram[d];
    out.r_acc.merge(b.r_acc);
    out.mean_clust_acc.merge(b.mean_clust_acc);
    out.edge_acc.merge(b.edge_acc);
    out.realized_moment1 += b.realized_moment1;
    out.realized_moment2 += b.realized_moment2;
    out.realized_moment3 += b.realized_moment3;
    out.moment_samples += b.moment_samples;
    out.clamp_totals += b.clamp_totals;
    return out;
}

// Run r_count independent realizations. Realization t draws its seed
// injectively from (master_seed, t); workers split [0, r_count) into
// contiguous blocks merged in index order. Output is bit-identical for any
// workers value.
inline EnsembleSummary run_ensemble(const DegreeSequence& seq, const Kernel& kernel,
                                    std::uint64_t r_count, std::uint64_t master_seed,
                                    unsigned workers = 1) {
    if (r_count < 1) throw invalid_params("r_count must be >= 1");
    if (workers < 1) throw invalid_params("workers must be >= 1");

    // surface strict-mode infeasibility before spawning anything
    if (kernel.clamp_policy == ClampPolicy::Strict) {
        const ClampReport census = validate_feasibility(kernel, seq);
        if (!census.clean())
            throw infeasible_pair("strict kernel infeasible for this sequence: " +
                                  std::to_string(census.clamped_low) + " pairs below 0, " +
                                  std::to_string(census.clamped_high) + " pairs above 1");
    }

    const std::uint64_t n_blocks = std::min<std::uint64_t>(workers, r_count);
    if (n_blocks == 1) return detail::run_block(seq, kernel, master_seed, 0, r_count);

    std::vector<EnsembleSummary> partials(n_blocks);
    std::vector<std::thread> threads;
    threads.reserve(n_blocks);
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        const std::uint64_t t_begin = r_count * b / n_blocks;
        const std::uint64_t t_end = r_count * (b + 1) / n_blocks;
        threads.emplace_back([&, b, t_begin, t_end] {
            partials[b] = detail::run_block(seq, kernel, master_seed, t_begin, t_end);
        });
    }
    for (auto& th : threads) th.join();

    EnsembleSummary result = std::move(partials[0]);
    for (std::uint64_t b = 1; b < n_blocks; ++b)
        result = merge_summaries(result, partials[b]);
    return result;
}

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    std::size_t rows_used = 0;
};

namespace detail {

inline FitResult least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw insufficient_data("zero variance in x; cannot fit a slope");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.rows_used = xs.size();
    if (syy == 0.0) {
        fit.r_squared = 1.0;  // exactly flat data, exactly reproduced
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ss_res += resid * resid;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

}  // namespace detail

// Least-squares fit of log(mean - offset) vs log(degree) over rows with
// count >= min_count and positive residual mean.
inline FitResult fit_power_slope(const DegreeSpectrum& spectrum, double offset,
                                 std::uint64_t min_count) {
    std::vector<double> xs, ys;
    for (const auto& row : spectrum.rows) {
        if (row.count < min_count) continue;
        const double resid = row.mean - offset;
        if (!(resid > 0.0)) continue;
        xs.push_back(std::log(static_cast<double>(row.degree)));
        ys.push_back(std::log(resid));
    }
    if (xs.size() < 3)
        throw insufficient_data("power-law fit needs >= 3 eligible rows, found " +
                                std::to_string(xs.size()));
    return detail::least_squares(xs, ys);
}

// Least-squares fit of y_spectrum.mean against x_spectrum.mean over degrees
// populated in both.
inline FitResult fit_linear(const DegreeSpectrum& x_spectrum, const DegreeSpectrum& y_spectrum) {
    std::vector<double> xs, ys;
    for (const auto& xrow : x_spectrum.rows) {
        const SpectrumRow* yrow = y_spectrum.find(xrow.degree);
        if (!yrow) continue;
        xs.push_back(xrow.mean);
        ys.push_back(yrow->mean);
    }
    if (xs.size() < 3)
        throw insufficient_data("linear fit needs >= 3 shared degree rows, found " +
                                std::to_string(xs.size()));
    return detail::least_squares(xs, ys);
}

}  // namespace netens
