#pragma once

// Finite graphs in Serre's conventions (every geometric edge is a pair of
// mutually reverse directed edges), decorated with vertex and edge group
// orders and a conductance per directed edge.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geodlab/common.hpp"
#include "geodlab/linalg.hpp"
#include "json.hpp"

namespace geodlab {

struct Vertex {
    std::string id;
    long order = 1;
};

struct Edge {
    std::string id;
    int from = -1, to = -1, rev = -1;
    long order = 1;
    double conductance = 0.0;
    // Optional exact weight standing in for e^c in exact-weight mode.
    std::optional<Rational> weight;
};

struct Subgraph {
    std::vector<int> vertices;
    std::vector<int> edges;
};

class Graph {
public:
    // Parses and validates a document in the graph JSON schema.
    static Graph from_json(const nlohmann::json& doc);
    static Graph load_file(const std::string& path);
    nlohmann::json to_json() const;

    int add_vertex(const std::string& id, long order = 1);
    // Adds e: from -> to and its reverse; returns (e, reverse).
    std::pair<int, int> add_edge_pair(const std::string& id, const std::string& rev_id, int from, int to,
                                      long order = 1, double c = 0.0, double c_rev = 0.0);
    void add_subgraph(const std::string& name, Subgraph s);
    // Checks every invariant; errors name the offending id.
    void validate() const;

    int num_vertices() const { return static_cast<int>(v_.size()); }
    int num_edges() const { return static_cast<int>(e_.size()); }
    const Vertex& vertex(int i) const { return v_.at(i); }
    const Edge& edge(int i) const { return e_.at(i); }
    Edge& edge_mut(int i) { return e_.at(i); }
    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;
    const std::vector<int>& out_edges(int v) const { return out_.at(v); }
    const std::map<std::string, Subgraph>& subgraphs() const { return sub_; }
    const Subgraph& subgraph(const std::string& name) const;
    // A subgraph name or, failing that, a single vertex id.
    Subgraph resolve(const std::string& name_or_vertex) const;

    // i(e) = |G_o(e)| / |G_e|.
    long index(int e) const { return v_[e_[e].from].order / e_[e].order; }
    long tree_degree(int v) const;
    bool trivial_groups() const;
    bool conductance_zero() const;

private:
    std::vector<Vertex> v_;
    std::vector<Edge> e_;
    std::vector<std::vector<int>> out_;
    std::map<std::string, int> vid_, eid_;
    std::map<std::string, Subgraph> sub_;
};

Subgraph point_subgraph(int v);
// Vertex 2-colouring; nullopt when some cycle is odd.
std::optional<std::vector<int>> two_coloring(const Graph& g);

struct VolumeReport {
    Rational vol;              // sum of 1/|G_v|
    Rational tvol;             // sum over directed edges of 1/|G_e|
    std::vector<long> degrees; // tree degrees
    bool bipartite = false;
    std::vector<int> color;    // class 0/1 per vertex when bipartite
};
VolumeReport volumes(const Graph& g);

struct Transfer {
    Matrix B;                // B[e][e'] = e^{c(e')} [t(e) = o(e'), e' != rev(e)]
    bool orders_ignored = false;
};
Transfer nb_transfer(const Graph& g);
// Successor lists of the non-backtracking relation.
std::vector<std::vector<int>> nb_successors(const Graph& g);

} // namespace geodlab
