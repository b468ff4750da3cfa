#pragma once

#include <cstdint>
#include <vector>

#include "netens/degseq.hpp"
#include "netens/graph.hpp"
#include "netens/kernel.hpp"
#include "netens/rng.hpp"

namespace netens {

struct GenerateResult {
    Graph graph;
    ClampReport clamps;
};

// One realization: every unordered pair (i, j) gets an independent Bernoulli
// trial with probability pair_prob(k_i, k_j). Each trial draws from a
// counter-based stream keyed by (realization_seed, i*n + j), so the result
// is bit-identical no matter how the pair sweep is ordered or partitioned.
//
// Full O(N^2) sweep by design: the additive kernel does not factor, so
// Chung-Lu style skip sampling does not apply.
inline GenerateResult generate(const DegreeSequence& seq, const Kernel& kernel,
                               std::uint64_t realization_seed) {
    if (kernel.clamp_policy == ClampPolicy::Strict) {
        const ClampReport census = validate_feasibility(kernel, seq);
        if (!census.clean())
            throw infeasible_pair("strict kernel infeasible for this sequence: " +
                                  std::to_string(census.clamped_low) + " pairs below 0, " +
                                  std::to_string(census.clamped_high) + " pairs above 1");
    }

    const std::uint32_t n = seq.n();
    const auto& degrees = seq.degrees();

    ClampReport report;
    report.total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;

    std::vector<std::vector<std::uint32_t>> upper(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint64_t row_base = static_cast<std::uint64_t>(i) * n;
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double p = raw_pair_prob(kernel, degrees[i], degrees[j]);
            if (p < 0.0) {
                ++report.clamped_low;  // unreachable under Strict (census above)
                p = 0.0;
            } else if (p > 1.0) {
                ++report.clamped_high;
                p = 1.0;
            }
            if (rng::pair_unit(realization_seed, row_base + j) < p)
                upper[i].push_back(j);
        }
    }
    return {Graph::from_upper(n, upper), report};
}

// sum over i<j of pair_prob(k_i, k_j), exact pair sweep. Self-pairs are
// excluded, so for the additive kernel this is l - sum_i (2k_i - z)/(2N),
// not l itself.
inline double expected_edge_total(const DegreeSequence& seq, const Kernel& kernel) {
    const std::uint32_t n = seq.n();
    const auto& degrees = seq.degrees();
    double sum = 0.0, comp = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const double p = pair_prob(kernel, degrees[i], degrees[j]).value;
            const double t = sum + p;
            comp += (std::abs(sum) >= std::abs(p)) ? (sum - t) + p : (p - t) + sum;
            sum = t;
        }
    }
    return sum + comp;
}

}  // namespace netens
