// Brute-force reference computations and random generators used by the
// tests. Nothing here calls into the library paths it is compared against.
#ifndef LINKSOM_TESTS_ORACLES_HPP
#define LINKSOM_TESTS_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "linksom/linkgraph.hpp"
#include "linksom/som.hpp"

namespace linksom::testing {

/// Lowest-index argmin of squared Euclidean distance over every unit,
/// with no early exit.
inline std::size_t exhaustive_argmin(const std::vector<std::vector<double>>& codebook,
                                     const std::vector<double>& input) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < codebook.size(); ++u) {
        double d = 0.0;
        for (std::size_t k = 0; k < input.size(); ++k) d += (input[k] - codebook[u][k]) * (input[k] - codebook[u][k]);
        if (d < best_d) {
            best_d = d;
            best = u;
        }
    }
    return best;
}

/// Closeness from an all-pairs Floyd-Warshall hop matrix.
inline std::vector<double> closeness_floyd_warshall(std::size_t n,
                                                    const std::vector<std::pair<std::size_t, std::size_t>>& arcs) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& [a, b] : arcs) {
        if (a != b) d[a][b] = 1.0;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    std::vector<double> score(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double reach = 0.0, total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || d[i][j] == inf) continue;
            reach += 1.0;
            total += d[i][j];
        }
        if (reach > 0) score[i] = (reach / static_cast<double>(n - 1)) * (reach / total);
    }
    return score;
}

/// Random graph with labels n0..n{size-1}; every node is declared, arcs
/// appear with probability p and carry weights 1..max_weight.
inline LinkGraph random_graph(std::mt19937_64& gen, std::size_t size, double p, unsigned max_weight = 9) {
    LinkGraph g;
    for (std::size_t i = 0; i < size; ++i) g.add_node("n" + std::to_string(i));
    std::bernoulli_distribution arc(p);
    std::uniform_int_distribution<unsigned> weight(1, max_weight);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            if (arc(gen)) g.add_edge(g.label(i), g.label(j), weight(gen));
    return g;
}

inline DataSet random_dataset(std::mt19937_64& gen, std::size_t records, std::size_t dim, double lo = 0.0,
                              double hi = 10.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    DataSet d;
    d.dimension = dim;
    for (std::size_t i = 0; i < records; ++i) {
        Record r{"r" + std::to_string(i), std::vector<double>(dim)};
        for (double& v : r.values) v = u(gen);
        d.records.push_back(std::move(r));
    }
    return d;
}

inline SomMap random_map(std::mt19937_64& gen, GridTopology topo, std::size_t dim, double lo = -5.0,
                         double hi = 5.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> cb(topo.units() * dim);
    for (double& v : cb) v = u(gen);
    return SomMap(topo, dim, std::move(cb));
}

/// Planted partition: `blocks` equal blocks, arcs inside a block with
/// probability p_in, across blocks with p_out, weights uniform in 1..5.
struct PlantedGraph {
    LinkGraph graph;
    std::vector<std::size_t> block_of;
};

inline PlantedGraph planted_partition(std::uint64_t seed, std::size_t nodes, std::size_t blocks, double p_in,
                                      double p_out) {
    std::mt19937_64 gen(seed);
    PlantedGraph out;
    for (std::size_t i = 0; i < nodes; ++i) {
        out.graph.add_node("v" + std::to_string(i));
        out.block_of.push_back(i * blocks / nodes);
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(1, 5);
    for (std::size_t i = 0; i < nodes; ++i) {
        for (std::size_t j = 0; j < nodes; ++j) {
            if (i == j) continue;
            const double p = out.block_of[i] == out.block_of[j] ? p_in : p_out;
            if (coin(gen) < p) out.graph.add_edge(out.graph.label(i), out.graph.label(j), weight(gen));
        }
    }
    return out;
}

}  // namespace linksom::testing

#endif
