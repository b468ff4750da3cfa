#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "netens/degseq.hpp"
#include "netens/kernel.hpp"
#include "netens/wideint.hpp"

namespace netens {

// Closed-form ensemble predictions from the degree sequence alone. All of
// them are functions of (z, p, Q, N) plus higher moments; none touch a
// realized graph.

// Mean degree of a neighbor of a degree-k vertex: z + Q/k.
inline double predict_knn(const DegreeSequence& seq, std::uint32_t k) {
    if (k < 1) throw invalid_params("predict_knn requires k >= 1");
    return seq.avg_degree() + seq.variance_q() / static_cast<double>(k);
}

// Mean sum of neighbor degrees: z*k + Q.
inline double predict_knn_sum(const DegreeSequence& seq, std::uint32_t k) {
    if (k < 1) throw invalid_params("predict_knn_sum requires k >= 1");
    return seq.avg_degree() * static_cast<double>(k) + seq.variance_q();
}

// Newman coefficient from raw moments: -Q^2 / (<k><k^3> - <k^2>^2).
// Undefined when the denominator vanishes (all degrees equal: 0/0).
inline std::optional<double> predict_r_from_moments(double m1, double m2, double m3) {
    const double q = m2 - m1 * m1;
    const double denom = m1 * m3 - m2 * m2;
    if (!(denom > 0.0)) return std::nullopt;
    return -(q * q) / denom;
}

// Same, but with the denominator sign test done on the exact integer
// numerator N^2 * (S1*S3 - S2^2), so regular sequences are detected
// without tolerance.
inline std::optional<double> predict_r(const DegreeSequence& seq) {
    const uint128 s1 = seq.sum_k();
    const uint128 denom_num = s1 * seq.sum_k3() - seq.sum_k2() * seq.sum_k2();
    if (denom_num == 0) return std::nullopt;
    const double dn2 = static_cast<double>(seq.n()) * static_cast<double>(seq.n());
    const double q = seq.variance_q();
    return -(q * q) / (to_double(denom_num) / dn2);
}

// Clustering spectrum: C(k) = p + 2Q/(N k).
inline double predict_clustering_of_k(const DegreeSequence& seq, std::uint32_t k) {
    if (k < 1) throw invalid_params("predict_clustering_of_k requires k >= 1");
    return seq.avg_connect_prob() +
           2.0 * seq.variance_q() / (static_cast<double>(seq.n()) * static_cast<double>(k));
}

// Network mean clustering: p + (2Q/N) <1/k>.
inline double predict_mean_clustering(const DegreeSequence& seq) {
    return seq.avg_connect_prob() +
           2.0 * seq.variance_q() / static_cast<double>(seq.n()) * seq.inv_degree_mean();
}

struct ExpectedDegree {
    double idealized;     // k_i: the self-pair-inclusive identity
    double simple_graph;  // k_i - (2 k_i - z)/N: self-pair excluded
};

inline ExpectedDegree predict_expected_degree(const DegreeSequence& seq, std::uint32_t i) {
    if (i >= seq.n())
        throw std::out_of_range("vertex index " + std::to_string(i) + " out of range for n = " +
                                std::to_string(seq.n()));
    const double k = seq.degree(i);
    const double bias = (2.0 * k - seq.avg_degree()) / static_cast<double>(seq.n());
    return {k, k - bias};
}

// Exact expected edge count among the prospective neighbors of vertex i:
//   sum over unordered pairs m < n (both != i) of p_im * p_in * p_mn.
// This is the pre-approximation numerator of the clustering spectrum;
// O(N^2) per vertex.
inline double predict_expected_triangles_at(const DegreeSequence& seq, const Kernel& kernel,
                                            std::uint32_t i) {
    if (i >= seq.n())
        throw std::out_of_range("vertex index " + std::to_string(i) + " out of range for n = " +
                                std::to_string(seq.n()));
    const auto& deg = seq.degrees();
    const std::uint32_t n = seq.n();
    double sum = 0.0, comp = 0.0;
    for (std::uint32_t m = 0; m < n; ++m) {
        if (m == i) continue;
        const double p_im = pair_prob(kernel, deg[i], deg[m]).value;
        for (std::uint32_t v = m + 1; v < n; ++v) {
            if (v == i) continue;
            const double term = p_im * pair_prob(kernel, deg[i], deg[v]).value *
                                pair_prob(kernel, deg[m], deg[v]).value;
            const double t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
    }
    return sum + comp;
}

// Bundle of every prediction the CLI emits for one sequence.
struct AnalyticPrediction {
    std::uint32_t n;
    double z;
    double p;
    double q;
    std::optional<double> r;
    double mean_clustering;
    double linear_slope;      // 2/N
    double linear_intercept;  // -p

    double knn_of_k(std::uint32_t k) const { return z + q / static_cast<double>(k); }
    double knn_sum_of_k(std::uint32_t k) const { return z * static_cast<double>(k) + q; }
    double clustering_of_k(std::uint32_t k) const {
        return p + 2.0 * q / (static_cast<double>(n) * static_cast<double>(k));
    }
};

inline AnalyticPrediction make_prediction(const DegreeSequence& seq) {
    return AnalyticPrediction{
        seq.n(),
        seq.avg_degree(),
        seq.avg_connect_prob(),
        seq.variance_q(),
        predict_r(seq),
        predict_mean_clustering(seq),
        2.0 / static_cast<double>(seq.n()),
        -seq.avg_connect_prob(),
    };
}

}  // namespace netens
