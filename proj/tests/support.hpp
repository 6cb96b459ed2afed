#pragma once

#include <random>
#include <string>

#include "doctest.h"
#include "geodlab/common.hpp"
#include "geodlab/graph_core.hpp"

namespace testsupport {

inline geodlab::Graph corpus(const std::string& name) {
    return geodlab::Graph::load_file(std::string(GEODLAB_DATA_DIR) + "/graphs/" + name + ".json");
}

// Runs f and returns the error code it throws, or "" if it returns.
template <class F>
std::string error_code(F&& f) {
    try {
        f();
    } catch (const geodlab::Error& e) {
        return e.code();
    }
    return "";
}

// Random connected multigraph with loops: a spanning tree plus extra pairs.
inline geodlab::Graph random_graph(std::mt19937_64& rng, int nv, int extra, bool loops = true) {
    geodlab::Graph g;
    for (int i = 0; i < nv; ++i) g.add_vertex("v" + std::to_string(i));
    int k = 0;
    for (int i = 1; i < nv; ++i) {
        int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
        g.add_edge_pair("e" + std::to_string(k), "e" + std::to_string(k) + "_", j, i);
        ++k;
    }
    std::uniform_int_distribution<int> pick(0, nv - 1);
    for (int x = 0; x < extra; ++x) {
        int a = pick(rng), b = pick(rng);
        if (a == b && !loops) continue;
        g.add_edge_pair("e" + std::to_string(k), "e" + std::to_string(k) + "_", a, b);
        ++k;
    }
    return g;
}

// Random connected bipartite graph on classes of sizes n0, n1.
inline geodlab::Graph random_bipartite(std::mt19937_64& rng, int n0, int n1, int extra) {
    geodlab::Graph g;
    for (int i = 0; i < n0 + n1; ++i) g.add_vertex("v" + std::to_string(i));
    int k = 0;
    auto add = [&](int a, int b) {
        g.add_edge_pair("e" + std::to_string(k), "e" + std::to_string(k) + "_", a, b);
        ++k;
    };
    std::uniform_int_distribution<int> p0(0, n0 - 1), p1(n0, n0 + n1 - 1);
    // Spanning tree: each new vertex hangs off an earlier one of the other class.
    std::vector<int> have0{0}, have1{n0};
    add(0, n0);
    auto any = [&](const std::vector<int>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    for (int i = 1; i < n0; ++i) {
        add(i, any(have1));
        have0.push_back(i);
    }
    for (int i = n0 + 1; i < n0 + n1; ++i) {
        add(any(have0), i);
        have1.push_back(i);
    }
    for (int x = 0; x < extra; ++x) add(p0(rng), p1(rng));
    return g;
}

inline void randomize_conductance(geodlab::Graph& g, std::mt19937_64& rng, bool reversible) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int e = 0; e < g.num_edges(); ++e) g.edge_mut(e).conductance = u(rng);
    if (reversible)
        for (int e = 0; e < g.num_edges(); ++e)
            if (g.edge(e).rev < e) g.edge_mut(e).conductance = g.edge(g.edge(e).rev).conductance;
}

} // namespace testsupport
