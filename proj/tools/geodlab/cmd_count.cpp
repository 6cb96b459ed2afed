#include <memory>

#include "commands.hpp"
#include "geodlab/perp_count.hpp"

namespace geodlab::cli {

namespace {
struct CountOpts {
    std::string graph, minus, plus, cycle;
    std::string x0;
    int nmax = 15;
    int q = 2, p = 2;
    double tol = 0.05;
};
} // namespace

void add_count_commands(CLI::App& app, Runner& run) {
    auto* grp = app.add_subcommand("count", "Common perpendiculars, closed orbits and conjugacy classes");
    grp->require_subcommand(1);
    auto o = std::make_shared<CountOpts>();

    auto* perp = grp->add_subcommand("perp", "Non-backtracking paths from --minus to --plus; columns: n,count,"
                                             "cumulative,weighted,cum_weighted");
    perp->add_option("--graph", o->graph, "Graph JSON file")->required();
    perp->add_option("--minus", o->minus, "Subgraph name or vertex id")->required();
    perp->add_option("--plus", o->plus, "Subgraph name or vertex id")->required();
    perp->add_option("--nmax", o->nmax, "Largest length")->capture_default_str();
    perp->callback([&run, o] {
        run = [o] {
            const Graph g = Graph::load_file(o->graph);
            const CountSeries s = count_perpendiculars(g, g.resolve(o->minus), g.resolve(o->plus), o->nmax);
            Table t({"n", "count", "cumulative", "weighted", "cum_weighted"});
            for (int n = 0; n <= o->nmax; ++n)
                t.add({static_cast<long long>(n), s.count[n], s.cumulative[n], s.weighted[n], s.cum_weighted[n]});
            return t;
        };
    });

    auto* cst = grp->add_subcommand("constant", "Counts against the predicted asymptotic; columns: n,count,"
                                                "expected,ratio,diagnostic_expected,diagnostic_ratio,pass");
    cst->add_option("--graph", o->graph, "Graph JSON file")->required();
    cst->add_option("--minus", o->minus, "Subgraph name or vertex id")->required();
    cst->add_option("--plus", o->plus, "Subgraph name or vertex id")->required();
    cst->add_option("--nmax", o->nmax, "Largest length")->capture_default_str();
    cst->add_option("--tol", o->tol, "Relative tolerance of the verdict at nmax")->capture_default_str();
    cst->callback([&run, o] {
        run = [o] {
            const Graph g = Graph::load_file(o->graph);
            const Subgraph m = g.resolve(o->minus), pl = g.resolve(o->plus);
            const CountSeries s = count_perpendiculars(g, m, pl, o->nmax);
            const AsymptoticReport r = theoretical_constant(g, m, pl, s, o->tol);
            Table t({"n", "count", "expected", "ratio", "diagnostic_expected", "diagnostic_ratio", "pass"});
            for (int n = 0; n <= o->nmax; ++n) {
                const bool diag = n < static_cast<int>(r.diagnostic_expected.size());
                t.add({static_cast<long long>(n), s.cumulative[n], r.expected[n], r.ratio[n],
                       diag ? Cell(r.diagnostic_expected[n]) : Cell(std::string()),
                       diag ? Cell(r.diagnostic_ratio[n]) : Cell(std::string()), r.pass});
            }
            return t;
        };
    });

    auto* orb = grp->add_subcommand("orbits", "Closed non-backtracking orbits; columns: n,fix,primitive,orbits,"
                                              "cumulative,weighted,theory,ratio");
    orb->add_option("--graph", o->graph, "Graph JSON file")->required();
    orb->add_option("--nmax", o->nmax, "Largest length")->capture_default_str();
    orb->callback([&run, o] {
        run = [o] {
            const Graph g = Graph::load_file(o->graph);
            const OrbitSeries s = closed_orbit_count(g, o->nmax);
            Table t({"n", "fix", "primitive", "orbits", "cumulative", "weighted", "theory", "ratio"});
            for (int n = 1; n <= o->nmax; ++n)
                t.add({static_cast<long long>(n), s.fix[n], s.primitive[n], s.orbits[n], s.cumulative[n], s.weighted[n],
                       s.theory[n], s.ratio[n]});
            return t;
        };
    });

    auto* conj = grp->add_subcommand("conjugacy", "Paths from --x0 into a cycle class; columns: n,count,ratio");
    conj->add_option("--graph", o->graph, "Graph JSON file")->required();
    conj->add_option("--x0", o->x0, "Base vertex id")->required();
    conj->add_option("--cycle", o->cycle, "Comma-separated edge ids of a simple cycle")->required();
    conj->add_option("--nmax", o->nmax, "Largest length")->capture_default_str();
    conj->callback([&run, o] {
        run = [o] {
            const Graph g = Graph::load_file(o->graph);
            std::vector<int> cyc;
            for (const auto& id : split(o->cycle, ',')) cyc.push_back(g.edge_index(id));
            const ConjugacyReport r = conjugacy_count(g, g.vertex_index(o->x0), cyc, o->nmax);
            Table t({"n", "count", "ratio"});
            for (int n = 0; n <= o->nmax; ++n) t.add({static_cast<long long>(n), r.count[n], r.ratio[n]});
            return t;
        };
    });

    auto* bm = grp->add_subcommand("bm", "Bowen-Margulis mass of a regular (--q) or biregular (--p, --q) quotient; "
                                         "columns: kind,value,exact,normalisation");
    bm->add_option("--graph", o->graph, "Graph JSON file")->required();
    bm->add_option("--q", o->q, "Tree degree minus one")->required();
    auto* popt = bm->add_option("--p", o->p, "Second degree minus one (biregular)");
    bm->callback([&run, o, popt] {
        const bool bireg = popt->count() > 0;
        run = [o, bireg] {
            const Graph g = Graph::load_file(o->graph);
            const MassValue m = bireg ? bm_mass_biregular(g, o->p, o->q) : bm_mass_regular(g, o->q);
            Table t({"kind", "value", "exact", "normalisation"});
            t.add({std::string(bireg ? "biregular" : "regular"), m.value,
                   m.exact ? Cell(*m.exact) : Cell(std::string()), m.normalisation});
            return t;
        };
    });
}

} // namespace geodlab::cli
