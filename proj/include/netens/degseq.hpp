#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "netens/errors.hpp"
#include "netens/rng.hpp"
#include "netens/wideint.hpp"

namespace netens {

struct PowerLawParams {
    double gamma;        // exponent g > 1, P(k) proportional to k^-g
    std::uint32_t k_min; // >= 1
    std::uint32_t k_max; // >= k_min; must be <= n-1 when sampling for n vertices
};

// A desired degree sequence {k_i} with cached moments. Degree power sums are
// accumulated in 128-bit integers, so every cached moment is the correctly
// rounded double of an exact rational and recomputation reproduces it bit for
// bit. Immutable after construction; safe to share across threads.
class DegreeSequence {
public:
    static DegreeSequence from_list(std::vector<std::uint32_t> degrees) {
        if (degrees.size() < 2)
            throw invalid_params("degree sequence needs at least 2 entries, got " +
                                 std::to_string(degrees.size()));
        for (std::size_t i = 0; i < degrees.size(); ++i)
            if (degrees[i] < 1)
                throw invalid_params("degree at index " + std::to_string(i) +
                                     " is " + std::to_string(degrees[i]) + "; degrees must be >= 1");
        return DegreeSequence(std::move(degrees));
    }

    std::uint32_t n() const { return static_cast<std::uint32_t>(degrees_.size()); }
    const std::vector<std::uint32_t>& degrees() const { return degrees_; }
    std::uint32_t degree(std::uint32_t i) const { return degrees_[i]; }
    std::uint32_t min_degree() const { return min_degree_; }
    std::uint32_t max_degree() const { return max_degree_; }

    std::uint64_t degree_sum() const { return sum1_; }

    // l = (1/2) sum k_i
    double edge_count_expected() const { return 0.5 * static_cast<double>(sum1_); }
    // z = sum k_i / N
    double avg_degree() const { return z_; }
    // p = 2l / N^2 = z / N
    double avg_connect_prob() const { return p_; }
    // Q = <k^2> - <k>^2, from the exact integer numerator N*S2 - S1^2
    double variance_q() const { return q_; }
    double moment2() const { return m2_; }
    double moment3() const { return m3_; }
    // <1/k>, Neumaier-compensated summation
    double inv_degree_mean() const { return inv_mean_; }

    bool is_regular() const { return min_degree_ == max_degree_; }

    // Exact integer power sums, exposed for predictors that want the
    // unrounded numerators.
    std::uint64_t sum_k() const { return sum1_; }
    uint128 sum_k2() const { return sum2_; }
    uint128 sum_k3() const { return sum3_; }

private:
    explicit DegreeSequence(std::vector<std::uint32_t> degrees) : degrees_(std::move(degrees)) {
        const std::uint64_t n = degrees_.size();
        min_degree_ = degrees_[0];
        max_degree_ = degrees_[0];
        double inv_sum = 0.0, inv_comp = 0.0;
        for (std::uint32_t k : degrees_) {
            min_degree_ = std::min(min_degree_, k);
            max_degree_ = std::max(max_degree_, k);
            const std::uint64_t k2 = static_cast<std::uint64_t>(k) * k;
            sum1_ += k;
            sum2_ += k2;
            sum3_ += static_cast<uint128>(k2) * k;
            // Neumaier compensation for the reciprocal sum
            const double term = 1.0 / static_cast<double>(k);
            const double t = inv_sum + term;
            inv_comp += (std::abs(inv_sum) >= std::abs(term)) ? (inv_sum - t) + term
                                                              : (term - t) + inv_sum;
            inv_sum = t;
        }
        const double dn = static_cast<double>(n);
        z_ = static_cast<double>(sum1_) / dn;
        p_ = z_ / dn;
        m2_ = to_double(sum2_) / dn;
        m3_ = to_double(sum3_) / dn;
        // N*S2 - S1^2 >= 0 with equality iff all degrees equal
        const uint128 q_num = static_cast<uint128>(n) * sum2_ -
                              static_cast<uint128>(sum1_) * sum1_;
        q_ = to_double(q_num) / (dn * dn);
        inv_mean_ = (inv_sum + inv_comp) / dn;
    }

    std::vector<std::uint32_t> degrees_;
    std::uint32_t min_degree_ = 0, max_degree_ = 0;
    std::uint64_t sum1_ = 0;
    uint128 sum2_ = 0, sum3_ = 0;
    double z_ = 0, p_ = 0, q_ = 0, m2_ = 0, m3_ = 0, inv_mean_ = 0;
};

// i.i.d. draws from the discrete power law P(k) proportional to k^-gamma on
// [k_min, k_max], by inverse CDF over the exact finite normalization.
inline DegreeSequence sample_power_law(std::uint32_t n, const PowerLawParams& params,
                                       std::uint64_t seed) {
    if (n < 2)
        throw invalid_params("need n >= 2, got " + std::to_string(n));
    if (!(params.gamma > 1.0))
        throw invalid_params("power-law exponent must be > 1, got " + std::to_string(params.gamma));
    if (params.k_min < 1 || params.k_min > params.k_max)
        throw invalid_params("need 1 <= k_min <= k_max");
    if (params.k_max > n - 1)
        throw invalid_params("k_max " + std::to_string(params.k_max) +
                             " exceeds n-1 = " + std::to_string(n - 1));

    // Cumulative weights over the finite support; compensated summation keeps
    // the normalization exact to double precision.
    const std::size_t support = params.k_max - params.k_min + 1;
    std::vector<double> cdf(support);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
        const double k = static_cast<double>(params.k_min + i);
        const double w = std::pow(k, -params.gamma);
        const double t = sum + w;
        comp += (std::abs(sum) >= std::abs(w)) ? (sum - t) + w : (w - t) + sum;
        sum = t;
        cdf[i] = sum + comp;
    }
    const double total = cdf.back();

    SequenceRng rng(seed);
    std::vector<std::uint32_t> degrees(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double u = rng.unit() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), support - 1);
        degrees[i] = params.k_min + static_cast<std::uint32_t>(idx);
    }
    return DegreeSequence::from_list(std::move(degrees));
}

// i.i.d. Poisson(mean) conditioned on k >= 1 (zeros are redrawn).
inline DegreeSequence sample_poisson(std::uint32_t n, double mean, std::uint64_t seed) {
    if (n < 2)
        throw invalid_params("need n >= 2, got " + std::to_string(n));
    if (!(mean > 0.0))
        throw invalid_params("poisson mean must be > 0, got " + std::to_string(mean));

    SequenceRng rng(seed);
    const double p0 = std::exp(-mean);
    // hard stop far beyond any realistic draw; keeps the walk finite
    const std::uint32_t k_cap = static_cast<std::uint32_t>(mean + 40.0 * std::sqrt(mean) + 64.0);

    std::vector<std::uint32_t> degrees(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t k = 0;
        while (k == 0) {
            // CDF inversion via the pmf recurrence f(k+1) = f(k)*mean/(k+1)
            const double u = rng.unit();
            double f = p0, cum = p0;
            std::uint32_t kk = 0;
            while (u >= cum && kk < k_cap) {
                ++kk;
                f *= mean / static_cast<double>(kk);
                cum += f;
            }
            k = kk;
        }
        degrees[i] = k;
    }
    return DegreeSequence::from_list(std::move(degrees));
}

// All-equal baseline; Q = 0 by construction.
inline DegreeSequence regular_sequence(std::uint32_t n, std::uint32_t k) {
    if (n < 2)
        throw invalid_params("need n >= 2, got " + std::to_string(n));
    if (k < 1 || k > n - 1)
        throw invalid_params("regular degree must satisfy 1 <= k <= n-1, got k=" +
                             std::to_string(k) + " with n=" + std::to_string(n));
    return DegreeSequence::from_list(std::vector<std::uint32_t>(n, k));
}

// File format: one positive integer per line, no header. Blank or garbage
// lines are rejected with their line number.
inline DegreeSequence read_degree_sequence(std::istream& in) {
    std::vector<std::uint32_t> degrees;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty())
            throw parse_error("blank line in degree sequence file", line_no);
        std::size_t pos = 0;
        long long value = 0;
        try {
            value = std::stoll(line, &pos);
        } catch (const std::exception&) {
            throw parse_error("expected a positive integer, got \"" + line + "\"", line_no);
        }
        if (pos != line.size())
            throw parse_error("trailing characters after integer: \"" + line + "\"", line_no);
        if (value < 1)
            throw parse_error("degrees must be >= 1, got " + std::to_string(value), line_no);
        degrees.push_back(static_cast<std::uint32_t>(value));
    }
    if (degrees.size() < 2)
        throw parse_error("degree sequence file needs at least 2 entries", line_no);
    return DegreeSequence::from_list(std::move(degrees));
}

inline void write_degree_sequence(std::ostream& out, const DegreeSequence& seq) {
    for (std::uint32_t k : seq.degrees()) out << k << '\n';
}

}  // namespace netens
