#include <memory>

#include "commands.hpp"
#include "geodlab/geodesic_shift.hpp"

namespace geodlab::cli {

namespace {
struct ShiftOpts {
    std::string graph, adjacency, phi, f, g;
    int maxlen = 8, nmax = 60, starts = 32;
    std::uint64_t seed = 1;
};

// A shift from either --graph (edge shift with its conductances) or
// --adjacency "1,1;1,0" with an optional per-letter --phi.
EdgeShift load_shift(const ShiftOpts& o) {
    if (o.graph.empty() == o.adjacency.empty())
        throw Error("usage", "cli", "shift", "give exactly one of --graph and --adjacency");
    if (!o.graph.empty()) return EdgeShift::from_graph(Graph::load_file(o.graph));
    const auto rows = split(o.adjacency, ';');
    Matrix A(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto r = parse_reals(rows[i]);
        if (r.size() != rows.size()) throw Error("usage", "cli", "shift", "adjacency matrix must be square");
        for (std::size_t j = 0; j < r.size(); ++j) A(i, j) = r[j];
    }
    std::vector<double> phi = o.phi.empty() ? std::vector<double>(rows.size(), 0.0) : parse_reals(o.phi);
    if (phi.size() != rows.size()) throw Error("usage", "cli", "shift", "--phi needs one value per letter");
    return EdgeShift::from_matrix(A, std::move(phi));
}

void add_input(CLI::App* cmd, ShiftOpts& o) {
    cmd->add_option("--graph", o.graph, "Graph JSON file (edge shift, potential = conductance)");
    cmd->add_option("--adjacency", o.adjacency, "0/1 transition matrix, rows separated by ';'");
    cmd->add_option("--phi", o.phi, "Per-letter potential, comma-separated");
}
} // namespace

void add_shift_commands(CLI::App& app, Runner& run) {
    auto* grp = app.add_subcommand("shift", "Pressure and equilibrium states of Markov shifts");
    grp->require_subcommand(1);
    auto o = std::make_shared<ShiftOpts>();

    auto* pr = grp->add_subcommand("pressure", "Gurevic pressure; columns: letters,pressure,rho,iterations");
    add_input(pr, *o);
    pr->callback([&run, o] {
        run = [o] {
            const EdgeShift s = load_shift(*o);
            require_irreducible(s);
            const Perron P = perron(s.weighted());
            Table t({"letters", "pressure", "rho", "iterations"});
            t.add({static_cast<long long>(s.letters()), pressure(s), P.rho, static_cast<long long>(P.iterations)});
            return t;
        };
    });

    auto* eq = grp->add_subcommand("equilibrium", "Equilibrium Markov measure; columns: letter,label,stationary,"
                                                  "entropy,integral,pressure");
    add_input(eq, *o);
    eq->callback([&run, o] {
        run = [o] {
            const EdgeShift s = load_shift(*o);
            const MarkovMeasure m = equilibrium_measure(s);
            Table t({"letter", "label", "stationary", "entropy", "integral", "pressure"});
            for (int i = 0; i < s.letters(); ++i)
                t.add({static_cast<long long>(i), s.labels[i], m.p[i], m.entropy, m.integral, m.pressure});
            return t;
        };
    });

    auto* gb = grp->add_subcommand("gibbs", "Weak Gibbs ratios over periodic cylinders; columns: letter,ratio_min,"
                                            "ratio_max,C,spread,words");
    add_input(gb, *o);
    gb->add_option("--maxlen", o->maxlen, "Longest cylinder")->capture_default_str();
    gb->callback([&run, o] {
        run = [o] {
            const EdgeShift s = load_shift(*o);
            const GibbsAudit a = weak_gibbs_audit(s, equilibrium_measure(s), o->maxlen);
            Table t({"letter", "ratio_min", "ratio_max", "C", "spread", "words"});
            for (int i = 0; i < s.letters(); ++i)
                t.add({static_cast<long long>(i), a.ratio_min[i], a.ratio_max[i], a.C[i], a.spread,
                       static_cast<long long>(a.words)});
            return t;
        };
    });

    auto* dc = grp->add_subcommand("decay", "Correlations cov(f, g o T^n); columns: n,cov,rate");
    add_input(dc, *o);
    dc->add_option("--f", o->f, "Observable per letter (default: indicator of letter 0)");
    dc->add_option("--g", o->g, "Observable per letter (default: same as f)");
    dc->add_option("--nmax", o->nmax, "Largest lag")->capture_default_str();
    dc->callback([&run, o] {
        run = [o] {
            const EdgeShift s = load_shift(*o);
            std::vector<double> f(s.letters(), 0.0);
            if (o->f.empty()) f[0] = 1;
            else f = parse_reals(o->f);
            const std::vector<double> g = o->g.empty() ? f : parse_reals(o->g);
            if (static_cast<int>(f.size()) != s.letters() || static_cast<int>(g.size()) != s.letters())
                throw Error("usage", "cli", "decay", "observables need one value per letter");
            const DecayReport r = correlation_decay(equilibrium_measure(s), f, g, o->nmax);
            Table t({"n", "cov", "rate"});
            for (std::size_t n = 0; n < r.cov.size(); ++n) t.add({static_cast<long long>(n), r.cov[n], r.rate});
            return t;
        };
    });

    auto* bf = grp->add_subcommand("bruteforce", "Direct maximisation of h + integral over Markov measures; "
                                                 "columns: value,pressure,tv,starts");
    add_input(bf, *o);
    bf->add_option("--seed", o->seed, "Master seed")->required();
    bf->add_option("--starts", o->starts, "Random starting points")->capture_default_str();
    bf->callback([&run, o] {
        run = [o] {
            const EdgeShift s = load_shift(*o);
            const BruteForceResult b = brute_force_equilibrium(s, o->seed, o->starts);
            Table t({"value", "pressure", "tv", "starts"});
            t.add({b.value, pressure(s), tv_two_cylinders(b.best, equilibrium_measure(s)),
                   static_cast<long long>(b.starts)});
            return t;
        };
    });
}

} // namespace geodlab::cli
