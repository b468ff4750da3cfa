#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netens/errors.hpp"
#include "netens/graph.hpp"
#include "netens/wideint.hpp"

namespace netens {

// Integer per-vertex counts; everything downstream (knn, clustering, pooled
// ensemble statistics) derives from these exactly.
struct VertexCounts {
    std::uint32_t degree = 0;
    std::uint64_t neighbor_degree_sum = 0;  // sum of realized degrees over neighbors
    std::uint64_t triangle_edges = 0;       // E_i: edges among the neighbors of i
};

struct VertexMetrics {
    std::uint32_t degree = 0;
    std::optional<double> knn;         // defined iff degree >= 1
    std::optional<double> clustering;  // defined iff degree >= 2
};

namespace detail {

// |a intersect b| for sorted ranges, two-pointer sweep.
inline std::uint64_t sorted_intersection_size(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
    std::uint64_t count = 0;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++count; ++ia; ++ib; }
    }
    return count;
}

}  // namespace detail

inline std::vector<VertexCounts> vertex_counts(const Graph& g) {
    std::vector<VertexCounts> counts(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) {
        const auto& nb = g.adj[i];
        counts[i].degree = static_cast<std::uint32_t>(nb.size());
        std::uint64_t deg_sum = 0, tri2 = 0;
        for (std::uint32_t j : nb) {
            deg_sum += g.adj[j].size();
            tri2 += detail::sorted_intersection_size(nb, g.adj[j]);
        }
        counts[i].neighbor_degree_sum = deg_sum;
        counts[i].triangle_edges = tri2 / 2;  // each in-neighborhood edge seen from both ends
    }
    return counts;
}

// knn_i = (1/d_i) sum of neighbor degrees; C_i = 2 E_i / (d_i (d_i - 1)).
// Undefined entries stay empty, never zero-filled.
inline std::vector<VertexMetrics> vertex_metrics(const Graph& g) {
    const auto counts = vertex_counts(g);
    std::vector<VertexMetrics> out(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) {
        const auto& c = counts[i];
        out[i].degree = c.degree;
        if (c.degree >= 1)
            out[i].knn = static_cast<double>(c.neighbor_degree_sum) / c.degree;
        if (c.degree >= 2)
            out[i].clustering = 2.0 * static_cast<double>(c.triangle_edges) /
                                (static_cast<double>(c.degree) * (c.degree - 1.0));
    }
    return out;
}

// Newman's degree correlation coefficient over edge endpoints (both
// orientations). With S_xy = sum over edges of d_u d_v, S_x = sum of
// (d_u + d_v), S_xx = sum of (d_u^2 + d_v^2), and M edges:
//   r = (4 M S_xy - S_x^2) / (2 M S_xx - S_x^2)
// computed in exact integer arithmetic. Undefined (nullopt) when the
// endpoint-degree variance is zero, e.g. on regular graphs.
inline std::optional<double> assortativity(const Graph& g) {
    if (g.edge_count == 0) return std::nullopt;
    uint128 s_xy = 0, s_x = 0, s_xx = 0;
    for (std::uint32_t u = 0; u < g.n; ++u) {
        const std::uint64_t du = g.adj[u].size();
        for (std::uint32_t v : g.adj[u]) {
            if (v <= u) continue;
            const std::uint64_t dv = g.adj[v].size();
            s_xy += static_cast<uint128>(du) * dv;
            s_x += du + dv;
            s_xx += du * du + dv * dv;
        }
    }
    const uint128 m = g.edge_count;
    const int128 numer = static_cast<int128>(4 * m * s_xy) - static_cast<int128>(s_x * s_x);
    const int128 denom = static_cast<int128>(2 * m * s_xx) - static_cast<int128>(s_x * s_x);
    if (denom == 0) return std::nullopt;
    return to_double(numer) / to_double(denom);
}

// Mean of the defined local clustering values; vertices with degree < 2 are
// excluded from the average, not counted as zero.
inline double mean_clustering(const Graph& g) {
    const auto counts = vertex_counts(g);
    double sum = 0.0;
    std::uint64_t eligible = 0;
    for (const auto& c : counts) {
        if (c.degree < 2) continue;
        sum += 2.0 * static_cast<double>(c.triangle_edges) /
               (static_cast<double>(c.degree) * (c.degree - 1.0));
        ++eligible;
    }
    if (eligible == 0)
        throw no_eligible_vertices("mean_clustering: every vertex has degree < 2");
    return sum / static_cast<double>(eligible);
}

}  // namespace netens
