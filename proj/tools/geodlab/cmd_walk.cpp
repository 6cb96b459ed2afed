#include <memory>

#include "commands.hpp"
#include "geodlab/random_walks.hpp"

namespace geodlab::cli {

namespace {
struct WalkOpts {
    std::string graph, start, f;
    int n = 60, q = 2, depth = 1, dy = 1, dz = 2;
    double c = 0;
    std::uint64_t reps = 0, seed = 0;
};
} // namespace

void add_walk_commands(CLI::App& app, Runner& run) {
    auto* grp = app.add_subcommand("walk", "Random walks on graphs of groups and on regular trees");
    grp->require_subcommand(1);
    auto o = std::make_shared<WalkOpts>();

    auto* nb = grp->add_subcommand("nbrw", "Law of the non-backtracking walk at step n; columns: vertex,prob,target,"
                                           "empirical,tally,tv,bipartite_warning");
    nb->add_option("--graph", o->graph, "Graph JSON file")->required();
    nb->add_option("--start", o->start, "Start subgraph name or vertex id")->required();
    nb->add_option("--n", o->n, "Step")->capture_default_str();
    auto* reps = nb->add_option("--reps", o->reps, "Monte-Carlo paths (0: exact law only)")->capture_default_str();
    nb->add_option("--seed", o->seed, "Master seed (required with --reps)")->needs(reps);
    nb->callback([&run, o, nb] {
        if (o->reps > 0 && nb->count("--seed") == 0)
            throw CLI::ValidationError("--seed", "sampling needs an explicit seed");
        run = [o] {
            const Graph g = Graph::load_file(o->graph);
            const Subgraph s = g.resolve(o->start);
            const VertexLaw law = nbrw_exact(g, s, o->n);
            std::optional<VertexSample> mc;
            if (o->reps > 0) mc = nbrw_sample(g, s, o->n, o->reps, o->seed);
            Table t({"vertex", "prob", "target", "empirical", "tally", "tv", "bipartite_warning"});
            for (int v = 0; v < g.num_vertices(); ++v)
                t.add({g.vertex(v).id, law.prob[v], law.target[v], mc ? Cell(mc->empirical[v]) : Cell(std::string()),
                       mc ? Cell(static_cast<long long>(mc->tally[v])) : Cell(std::string()), law.tv,
                       law.bipartite_warning});
            return t;
        };
    });

    auto* hm = grp->add_subcommand("harmonic", "Shadow masses of the walk on the (q+1)-regular tree; columns: "
                                               "shadow,mass,stderr,target");
    hm->add_option("--q", o->q, "Tree degree minus one")->capture_default_str();
    hm->add_option("--depth", o->depth, "Shadow depth")->capture_default_str();
    hm->add_option("--c", o->c, "Constant conductance")->capture_default_str();
    hm->add_option("--reps", o->reps, "Paths")->required();
    hm->add_option("--seed", o->seed, "Master seed")->required();
    hm->callback([&run, o] {
        run = [o] {
            const ShadowEstimate s = tree_harmonic_measure(o->q, o->depth, o->reps, o->seed, o->c);
            Table t({"shadow", "mass", "stderr", "target"});
            for (std::size_t i = 0; i < s.mass.size(); ++i)
                t.add({static_cast<long long>(i), s.mass[i], s.stderr_[i], s.target});
            return t;
        };
    });

    auto* gr = grp->add_subcommand("green", "Green kernel ratio G(x,y)/G(x,z) along one ray; columns: ratio,stderr,"
                                            "target,visits_y,visits_z");
    gr->add_option("--q", o->q, "Tree degree minus one")->capture_default_str();
    gr->add_option("--c", o->c, "Constant conductance")->capture_default_str();
    gr->add_option("--dy", o->dy, "Distance from x to y")->capture_default_str();
    gr->add_option("--dz", o->dz, "Distance from x to z")->capture_default_str();
    gr->add_option("--reps", o->reps, "Paths")->required();
    gr->add_option("--seed", o->seed, "Master seed")->required();
    gr->callback([&run, o] {
        run = [o] {
            const GreenRatio r = green_ratio_check(o->q, o->c, o->dy, o->dz, o->reps, o->seed);
            Table t({"ratio", "stderr", "target", "visits_y", "visits_z"});
            t.add({r.ratio, r.stderr_, r.target, r.visits_y, r.visits_z});
            return t;
        };
    });

    auto* lp = grp->add_subcommand("laplacian", "Conductance Laplacian of f and d*d f; columns: vertex,f,laplacian,"
                                                "dstar_d");
    lp->add_option("--graph", o->graph, "Graph JSON file")->required();
    lp->add_option("--f", o->f, "Function per vertex, comma-separated")->required();
    lp->callback([&run, o] {
        run = [o] {
            const Graph g = Graph::load_file(o->graph);
            const auto f = parse_reals(o->f);
            if (static_cast<int>(f.size()) != g.num_vertices())
                throw Error("usage", "cli", "laplacian", "--f needs one value per vertex");
            const auto L = laplacian_apply(g, f), M = d_c_star(g, d_c(g, f));
            Table t({"vertex", "f", "laplacian", "dstar_d"});
            for (int v = 0; v < g.num_vertices(); ++v) t.add({g.vertex(v).id, f[v], L[v], M[v]});
            return t;
        };
    });
}

} // namespace geodlab::cli
