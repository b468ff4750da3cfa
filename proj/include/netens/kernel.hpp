#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <variant>

#include "netens/degseq.hpp"
#include "netens/errors.hpp"

namespace netens {

enum class ClampPolicy { Strict, Clamp };

inline const char* to_string(ClampPolicy p) {
    return p == ClampPolicy::Strict ? "strict" : "clamp";
}

// p_ij = (k_i + k_j - z) / n
struct AdditiveKernel {
    double z;
    std::uint32_t n;
    bool operator==(const AdditiveKernel&) const = default;
};

// p_ij = k_i * k_j / 2m
struct ChungLuKernel {
    double two_m;
    bool operator==(const ChungLuKernel&) const = default;
};

// p_ij = p for every pair
struct ConstantKernel {
    double p;
    bool operator==(const ConstantKernel&) const = default;
};

struct Kernel {
    std::variant<AdditiveKernel, ChungLuKernel, ConstantKernel> rule;
    ClampPolicy clamp_policy = ClampPolicy::Strict;

    bool operator==(const Kernel&) const = default;

    std::string name() const {
        switch (rule.index()) {
            case 0: return "additive";
            case 1: return "chung-lu";
            default: return "constant";
        }
    }
};

inline Kernel make_additive(double z, std::uint32_t n, ClampPolicy policy = ClampPolicy::Strict) {
    if (!(z > 0.0) || n < 2)
        throw invalid_params("additive kernel requires z > 0 and n >= 2");
    return Kernel{AdditiveKernel{z, n}, policy};
}

inline Kernel make_chung_lu(double two_m, ClampPolicy policy = ClampPolicy::Strict) {
    if (!(two_m > 0.0))
        throw invalid_params("chung-lu kernel requires 2m > 0");
    return Kernel{ChungLuKernel{two_m}, policy};
}

inline Kernel make_constant(double p, ClampPolicy policy = ClampPolicy::Strict) {
    if (!(p >= 0.0 && p <= 1.0))
        throw invalid_params("constant kernel requires 0 <= p <= 1");
    return Kernel{ConstantKernel{p}, policy};
}

// Kernel parameterized from a sequence: additive gets (z, n), chung-lu gets
// 2m = sum k_i, constant gets p = z/N.
inline Kernel kernel_for_sequence(const std::string& variant, const DegreeSequence& seq,
                                  ClampPolicy policy = ClampPolicy::Strict) {
    if (variant == "additive") return make_additive(seq.avg_degree(), seq.n(), policy);
    if (variant == "chung-lu") return make_chung_lu(static_cast<double>(seq.degree_sum()), policy);
    if (variant == "constant") return make_constant(seq.avg_connect_prob(), policy);
    throw invalid_params("unknown kernel variant \"" + variant +
                         "\" (expected additive, chung-lu, or constant)");
}

enum class ClampFlag { None, Low, High };

// Raw kernel value before any clamping. One canonical expression per
// variant; the generator, the feasibility census, and the analytic oracles
// must all see bit-identical values for the same degree pair.
inline double raw_pair_prob(const Kernel& kernel, std::uint32_t k_i, std::uint32_t k_j) {
    if (const auto* a = std::get_if<AdditiveKernel>(&kernel.rule))
        return (static_cast<double>(k_i) + static_cast<double>(k_j) - a->z) /
               static_cast<double>(a->n);
    if (const auto* c = std::get_if<ChungLuKernel>(&kernel.rule))
        return static_cast<double>(k_i) * static_cast<double>(k_j) / c->two_m;
    return std::get<ConstantKernel>(kernel.rule).p;
}

struct PairProb {
    double value;     // in [0,1] after policy
    ClampFlag clamp;  // None under Strict (it throws instead)
};

inline PairProb pair_prob(const Kernel& kernel, std::uint32_t k_i, std::uint32_t k_j) {
    const double raw = raw_pair_prob(kernel, k_i, k_j);
    if (raw < 0.0) {
        if (kernel.clamp_policy == ClampPolicy::Strict)
            throw infeasible_pair("raw p_ij = " + std::to_string(raw) + " < 0 for degrees (" +
                                  std::to_string(k_i) + ", " + std::to_string(k_j) + ")");
        return {0.0, ClampFlag::Low};
    }
    if (raw > 1.0) {
        if (kernel.clamp_policy == ClampPolicy::Strict)
            throw infeasible_pair("raw p_ij = " + std::to_string(raw) + " > 1 for degrees (" +
                                  std::to_string(k_i) + ", " + std::to_string(k_j) + ")");
        return {1.0, ClampFlag::High};
    }
    return {raw, ClampFlag::None};
}

struct ClampReport {
    std::uint64_t clamped_low = 0;   // pairs with raw p_ij < 0
    std::uint64_t clamped_high = 0;  // pairs with raw p_ij > 1
    std::uint64_t total_pairs = 0;

    bool operator==(const ClampReport&) const = default;

    bool clean() const { return clamped_low == 0 && clamped_high == 0; }

    ClampReport& operator+=(const ClampReport& other) {
        clamped_low += other.clamped_low;
        clamped_high += other.clamped_high;
        total_pairs += other.total_pairs;
        return *this;
    }
};

// Exact clamp census over all N(N-1)/2 pairs. Kernel values depend only on
// the degree values, so the census runs over distinct-degree pairs with
// multiplicities: O(D^2) for D distinct degrees instead of O(N^2).
// Never throws on out-of-range values regardless of policy; callers decide.
inline ClampReport validate_feasibility(const Kernel& kernel, const DegreeSequence& seq) {
    if (const auto* a = std::get_if<AdditiveKernel>(&kernel.rule)) {
        if (a->n != seq.n())
            throw invalid_params("kernel n = " + std::to_string(a->n) +
                                 " does not match sequence n = " + std::to_string(seq.n()));
        if (a->z != seq.avg_degree())
            throw invalid_params("kernel z = " + std::to_string(a->z) +
                                 " does not match sequence z = " + std::to_string(seq.avg_degree()));
    } else if (const auto* c = std::get_if<ChungLuKernel>(&kernel.rule)) {
        if (c->two_m != static_cast<double>(seq.degree_sum()))
            throw invalid_params("kernel 2m = " + std::to_string(c->two_m) +
                                 " does not match sequence sum = " + std::to_string(seq.degree_sum()));
    }

    std::map<std::uint32_t, std::uint64_t> multiplicity;
    for (std::uint32_t k : seq.degrees()) ++multiplicity[k];

    ClampReport report;
    const std::uint64_t n = seq.n();
    report.total_pairs = n * (n - 1) / 2;
    for (auto ita = multiplicity.begin(); ita != multiplicity.end(); ++ita) {
        for (auto itb = ita; itb != multiplicity.end(); ++itb) {
            const std::uint64_t pairs = (ita == itb)
                                            ? ita->second * (ita->second - 1) / 2
                                            : ita->second * itb->second;
            if (pairs == 0) continue;
            const double raw = raw_pair_prob(kernel, ita->first, itb->first);
            if (raw < 0.0)
                report.clamped_low += pairs;
            else if (raw > 1.0)
                report.clamped_high += pairs;
        }
    }
    return report;
}

}  // namespace netens
