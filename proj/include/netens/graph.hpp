#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "netens/errors.hpp"

namespace netens {

// One simple undirected realization. Neighbor lists are sorted ascending;
// no self-loops, no multi-edges.
struct Graph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::uint32_t>> adj;
    std::uint64_t edge_count = 0;

    std::uint32_t degree(std::uint32_t v) const {
        return static_cast<std::uint32_t>(adj[v].size());
    }

    bool has_edge(std::uint32_t u, std::uint32_t v) const {
        const auto& nb = adj[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    // Build from the upper-triangle adjacency (for each i, the sorted
    // neighbors j > i). Single deterministic pass in row order.
    static Graph from_upper(std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& upper) {
        Graph g;
        g.n = n;
        g.adj.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j : upper[i]) {
                g.adj[i].push_back(j);
                g.adj[j].push_back(i);
                ++g.edge_count;
            }
        }
        for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
        return g;
    }
};

// Edge-list format: one "u v" pair per line, 0-indexed, u < v, no header.
inline void write_edge_list(std::ostream& out, const Graph& g) {
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::uint32_t v : g.adj[u])
            if (u < v) out << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& in, std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> upper(n);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(ls >> u >> v) || (ls >> extra))
            throw parse_error("expected \"u v\", got \"" + line + "\"", line_no);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw parse_error("vertex index out of range [0, " + std::to_string(n) + ")", line_no);
        if (u >= v)
            throw parse_error("edges must satisfy u < v", line_no);
        auto& row = upper[static_cast<std::uint32_t>(u)];
        const auto w = static_cast<std::uint32_t>(v);
        if (std::find(row.begin(), row.end(), w) != row.end())
            throw parse_error("duplicate edge " + std::to_string(u) + " " + std::to_string(v),
                              line_no);
        row.push_back(w);
    }
    for (auto& row : upper) std::sort(row.begin(), row.end());
    return Graph::from_upper(n, upper);
}

}  // namespace netens
