#include "geodlab/graph_core.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace geodlab {

namespace {
const char* kMod = "graph_core";

// Connected on its own vertex set using only the listed edges.
bool connected_via(int nv_total, const std::vector<int>& verts, const std::vector<int>& edges, const Graph& g) {
    if (verts.empty()) return true;
    std::vector<char> in(nv_total, 0), seen(nv_total, 0);
    for (int v : verts) in[v] = 1;
    std::vector<std::vector<int>> adj(nv_total);
    for (int e : edges) adj[g.edge(e).from].push_back(g.edge(e).to);
    std::vector<int> stack{verts.front()};
    seen[verts.front()] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (in[w] && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    for (int v : verts)
        if (!seen[v]) return false;
    return true;
}
} // namespace

int Graph::add_vertex(const std::string& id, long order) {
    if (vid_.count(id)) throw Error("duplicate-id", kMod, "add_vertex", id);
    vid_[id] = num_vertices();
    v_.push_back({id, order});
    out_.emplace_back();
    return num_vertices() - 1;
}

std::pair<int, int> Graph::add_edge_pair(const std::string& id, const std::string& rev_id, int from, int to,
                                         long order, double c, double c_rev) {
    if (eid_.count(id) || eid_.count(rev_id) || id == rev_id) throw Error("duplicate-id", kMod, "add_edge", id);
    int e = num_edges(), r = e + 1;
    e_.push_back({id, from, to, r, order, c, std::nullopt});
    e_.push_back({rev_id, to, from, e, order, c_rev, std::nullopt});
    eid_[id] = e;
    eid_[rev_id] = r;
    out_[from].push_back(e);
    out_[to].push_back(r);
    return {e, r};
}

void Graph::add_subgraph(const std::string& name, Subgraph s) { sub_[name] = std::move(s); }

int Graph::vertex_index(const std::string& id) const {
    auto it = vid_.find(id);
    if (it == vid_.end()) throw Error("dangling-reference", kMod, "lookup", "vertex " + id);
    return it->second;
}

int Graph::edge_index(const std::string& id) const {
    auto it = eid_.find(id);
    if (it == eid_.end()) throw Error("dangling-reference", kMod, "lookup", "edge " + id);
    return it->second;
}

const Subgraph& Graph::subgraph(const std::string& name) const {
    auto it = sub_.find(name);
    if (it == sub_.end()) throw Error("dangling-reference", kMod, "subgraph", name);
    return it->second;
}

Subgraph Graph::resolve(const std::string& name) const {
    auto it = sub_.find(name);
    if (it != sub_.end()) return it->second;
    if (vid_.count(name)) return point_subgraph(vertex_index(name));
    throw Error("dangling-reference", kMod, "resolve", name);
}

long Graph::tree_degree(int v) const {
    long d = 0;
    for (int e : out_[v]) d += index(e);
    return d;
}

bool Graph::trivial_groups() const {
    for (const auto& v : v_)
        if (v.order != 1) return false;
    for (const auto& e : e_)
        if (e.order != 1) return false;
    return true;
}

bool Graph::conductance_zero() const {
    for (const auto& e : e_)
        if (e.conductance != 0.0 || e.weight) return false;
    return true;
}

void Graph::validate() const {
    if (v_.empty()) throw Error("disconnected", kMod, "validate", "no vertices");
    for (const auto& v : v_)
        if (v.order < 1) throw Error("order-divisibility", kMod, "validate", "vertex " + v.id + " has order < 1");
    for (int i = 0; i < num_edges(); ++i) {
        const Edge& e = e_[i];
        if (e.from < 0 || e.from >= num_vertices() || e.to < 0 || e.to >= num_vertices())
            throw Error("dangling-reference", kMod, "validate", "edge " + e.id);
        if (e.rev < 0 || e.rev >= num_edges()) throw Error("dangling-reference", kMod, "validate", "edge " + e.id);
        const Edge& r = e_[e.rev];
        if (e.rev == i || r.rev != i || r.from != e.to || r.to != e.from)
            throw Error("bad-involution", kMod, "validate", "edge " + e.id);
        if (e.order < 1 || e.order != r.order)
            throw Error("order-divisibility", kMod, "validate", "edge " + e.id + " order differs from its reverse");
        if (v_[e.from].order % e.order != 0 || v_[e.to].order % e.order != 0)
            throw Error("order-divisibility", kMod, "validate", "edge " + e.id);
        if (!std::isfinite(e.conductance)) throw Error("bad-conductance", kMod, "validate", "edge " + e.id);
        if (e.weight && *e.weight <= 0) throw Error("bad-conductance", kMod, "validate", "edge " + e.id);
    }
    std::vector<int> all(num_vertices()), alle(num_edges());
    for (int i = 0; i < num_vertices(); ++i) all[i] = i;
    for (int i = 0; i < num_edges(); ++i) alle[i] = i;
    if (!connected_via(num_vertices(), all, alle, *this))
        throw Error("disconnected", kMod, "validate", "graph");
    for (const auto& [name, s] : sub_) {
        std::set<int> vs(s.vertices.begin(), s.vertices.end()), es(s.edges.begin(), s.edges.end());
        for (int e : s.edges) {
            if (!es.count(e_[e].rev)) throw Error("bad-involution", kMod, "validate", "subgraph " + name + " edge " + e_[e].id);
            if (!vs.count(e_[e].from) || !vs.count(e_[e].to))
                throw Error("dangling-reference", kMod, "validate", "subgraph " + name + " edge " + e_[e].id);
        }
        if (s.vertices.empty() || !connected_via(num_vertices(), s.vertices, s.edges, *this))
            throw Error("disconnected", kMod, "validate", "subgraph " + name);
    }
}

Graph Graph::from_json(const nlohmann::json& doc) {
    Graph g;
    try {
        for (const auto& v : doc.at("vertices")) g.add_vertex(v.at("id").get<std::string>(), v.value("order", 1L));
        // Edges may arrive in any order; reverses are resolved after all ids are known.
        std::vector<std::string> rev_of;
        for (const auto& je : doc.at("edges")) {
            Edge e;
            e.id = je.at("id").get<std::string>();
            if (g.eid_.count(e.id)) throw Error("duplicate-id", kMod, "load_validate", e.id);
            e.from = g.vertex_index(je.at("from").get<std::string>());
            e.to = g.vertex_index(je.at("to").get<std::string>());
            e.order = je.value("order", 1L);
            e.conductance = je.value("conductance", 0.0);
            if (je.contains("weight")) {
                const auto& w = je.at("weight");
                if (w.is_array()) e.weight = Rational(BigInt(w.at(0).get<long long>()), BigInt(w.at(1).get<long long>()));
                else e.weight = Rational(BigInt(w.get<std::string>()));
            }
            g.eid_[e.id] = g.num_edges();
            g.out_[e.from].push_back(g.num_edges());
            g.e_.push_back(e);
            rev_of.push_back(je.at("reverse").get<std::string>());
        }
        for (int i = 0; i < g.num_edges(); ++i) g.e_[i].rev = g.edge_index(rev_of[i]);
        if (doc.contains("subgraphs")) {
            for (const auto& [name, js] : doc.at("subgraphs").items()) {
                Subgraph s;
                for (const auto& v : js.value("vertices", nlohmann::json::array()))
                    s.vertices.push_back(g.vertex_index(v.get<std::string>()));
                for (const auto& e : js.value("edges", nlohmann::json::array()))
                    s.edges.push_back(g.edge_index(e.get<std::string>()));
                g.sub_[name] = s;
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error("bad-document", kMod, "load_validate", ex.what());
    }
    g.validate();
    return g;
}

Graph Graph::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", kMod, "load_validate", path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& ex) {
        throw Error("bad-document", kMod, "load_validate", ex.what());
    }
    return from_json(doc);
}

nlohmann::json Graph::to_json() const {
    nlohmann::json doc;
    doc["vertices"] = nlohmann::json::array();
    for (const auto& v : v_) doc["vertices"].push_back({{"id", v.id}, {"order", v.order}});
    doc["edges"] = nlohmann::json::array();
    for (const auto& e : e_) {
        nlohmann::json je = {{"id", e.id},       {"from", v_[e.from].id}, {"to", v_[e.to].id},
                             {"reverse", e_[e.rev].id}, {"order", e.order},  {"conductance", e.conductance}};
        if (e.weight) je["weight"] = {static_cast<long long>(numerator(*e.weight)),
                                      static_cast<long long>(denominator(*e.weight))};
        doc["edges"].push_back(je);
    }
    doc["subgraphs"] = nlohmann::json::object();
    for (const auto& [name, s] : sub_) {
        nlohmann::json js;
        js["vertices"] = nlohmann::json::array();
        js["edges"] = nlohmann::json::array();
        for (int v : s.vertices) js["vertices"].push_back(v_[v].id);
        for (int e : s.edges) js["edges"].push_back(e_[e].id);
        doc["subgraphs"][name] = js;
    }
    return doc;
}

Subgraph point_subgraph(int v) { return Subgraph{{v}, {}}; }

std::optional<std::vector<int>> two_coloring(const Graph& g) {
    std::vector<int> col(g.num_vertices(), -1);
    for (int s = 0; s < g.num_vertices(); ++s) {
        if (col[s] >= 0) continue;
        col[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e : g.out_edges(v)) {
                int w = g.edge(e).to;
                if (col[w] < 0) {
                    col[w] = 1 - col[v];
                    stack.push_back(w);
                } else if (col[w] == col[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return col;
}

VolumeReport volumes(const Graph& g) {
    VolumeReport r;
    r.vol = 0;
    r.tvol = 0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        r.vol += Rational(1, g.vertex(v).order);
        r.degrees.push_back(g.tree_degree(v));
    }
    for (int e = 0; e < g.num_edges(); ++e) r.tvol += Rational(1, g.edge(e).order);
    if (auto c = two_coloring(g)) {
        r.bipartite = true;
        r.color = *c;
    }
    return r;
}

std::vector<std::vector<int>> nb_successors(const Graph& g) {
    std::vector<std::vector<int>> s(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e)
        for (int f : g.out_edges(g.edge(e).to))
            if (f != g.edge(e).rev) s[e].push_back(f);
    return s;
}

Transfer nb_transfer(const Graph& g) {
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.tree_degree(v) <= 1)
            throw Error("degenerate", kMod, "nb_transfer", "vertex " + g.vertex(v).id + " has tree degree <= 1");
    Transfer t;
    t.orders_ignored = !g.trivial_groups();
    t.B = Matrix(g.num_edges(), g.num_edges());
    const auto succ = nb_successors(g);
    for (int e = 0; e < g.num_edges(); ++e)
        for (int f : succ[e]) t.B(e, f) = std::exp(g.edge(f).conductance);
    return t;
}

} // namespace geodlab
