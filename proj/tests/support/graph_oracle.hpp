#pragma once

#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "roengine/category_graph.hpp"

namespace roengine::test_support {

/// Random DAG on nodes n00..n(N-1) rooted at n00; every other node gets
/// 1 to 3 parents chosen among earlier nodes.
struct RandomDag {
    std::size_t n = 0;
    std::vector<std::vector<bool>> edge;  // edge[p][c]
    CategoryGraph graph;

    static std::string name(std::size_t i) { return (i < 10 ? "n0" : "n") + std::to_string(i); }
};

inline RandomDag random_dag(std::mt19937_64& rng, std::size_t max_nodes = 50) {
    RandomDag d;
    d.n = std::uniform_int_distribution<std::size_t>(1, max_nodes)(rng);
    d.edge.assign(d.n, std::vector<bool>(d.n, false));
    d.graph.add_node(RandomDag::name(0));
    for (std::size_t c = 1; c < d.n; ++c) {
        const auto k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, c))(rng);
        for (std::size_t t = 0; t < k; ++t) {
            const auto p = std::uniform_int_distribution<std::size_t>(0, c - 1)(rng);
            if (d.edge[p][c]) continue;
            d.edge[p][c] = true;
            d.graph.add_edge(RandomDag::name(p), RandomDag::name(c));
        }
    }
    return d;
}

/// Reachability by Warshall closure, depth by Bellman-style relaxation, then
/// an exhaustive scan of the ancestor intersection.
inline std::string brute_force_lcs(const RandomDag& d, std::size_t a, std::size_t b) {
    const auto n = d.n;
    auto reach = d.edge;
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    constexpr auto inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> depth(n, inf);
    depth[0] = 0;
    for (std::size_t round = 0; round < n; ++round)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t c = 0; c < n; ++c)
                if (d.edge[p][c] && depth[p] != inf && depth[p] + 1 < depth[c]) depth[c] = depth[p] + 1;
    std::optional<std::size_t> best;
    std::size_t best_size = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (!reach[c][a] || !reach[c][b]) continue;
        std::size_t size = 0;
        for (std::size_t j = 0; j < n; ++j) size += reach[c][j];
        const bool better = !best || depth[c] > depth[*best] ||
                            (depth[c] == depth[*best] &&
                             (size < best_size || (size == best_size && RandomDag::name(c) < RandomDag::name(*best))));
        if (better) {
            best = c;
            best_size = size;
        }
    }
    return RandomDag::name(*best);
}

/// The paper's example neighbourhood around Oceanography.
inline CategoryGraph example_graph() {
    CategoryGraph g;
    g.add_edge("Earth Science", "Oceanography");
    g.add_edge("Earth Science", "Geology");
    g.add_edge("Oceanography", "Marine Biology");
    g.add_edge("Oceanography", "Marine Geology");
    g.add_edge("Marine Biology", "Marine Botany");
    g.add_edge("Marine Biology", "Cetology");
    g.add_edge("Marine Geology", "Ocean Exploration");
    g.add_edge("Geology", "Volcanology");
    return g;
}

}  // namespace roengine::test_support
