#include <memory>

#include "commands.hpp"
#include "geodlab/ff_arith.hpp"
#include "quad_input.hpp"

namespace geodlab::cli {

namespace {
struct FFOpts {
    int q = 3, n = 1, prec = 16, branch = 1, count = 12;
    std::string f, x, quad;
};

BigInt mertens_closed_form(int q, int n) {
    return BigInt(q) * (q - 1) * (big_pow(q, 2 * n) - 1) / (q + 1);
}
} // namespace

void add_ff_commands(CLI::App& app, Runner& run) {
    auto* grp = app.add_subcommand("ff", "Arithmetic over F_q[Y] and F_q((1/Y))");
    grp->require_subcommand(1);
    auto o = std::make_shared<FFOpts>();
    auto quad_flags = [o](CLI::App* cmd) {
        cmd->add_option("--quad", o->quad, "Quadratic \"A;B;C\" with root (-B + branch sqrt(D))/2A");
        cmd->add_option("--branch", o->branch, "+1 or -1")->capture_default_str();
    };

    auto* me = grp->add_subcommand("mertens", "Sum of phi over 0 < deg f <= n; columns: q,n,sum,closed_form,"
                                              "monic_n,match");
    me->add_option("--q", o->q, "Field size (prime)")->required();
    me->add_option("--n", o->n, "Largest degree")->required();
    me->callback([&run, o] {
        run = [o] {
            Table t({"q", "n", "sum", "closed_form", "monic_n", "match"});
            const BigInt s = mertens_sum(o->q, o->n), cf = mertens_closed_form(o->q, o->n);
            t.add({static_cast<long long>(o->q), static_cast<long long>(o->n), s, cf, monic_phi_sum(o->q, o->n),
                   s == cf});
            return t;
        };
    });

    auto* ph = grp->add_subcommand("phi", "Euler function of a polynomial; columns: f,phi,factors");
    ph->add_option("--q", o->q, "Field size (prime)")->required();
    ph->add_option("--f", o->f, "Polynomial in Y")->required();
    ph->callback([&run, o] {
        run = [o] {
            const Poly f = parse_poly(o->f, o->q);
            std::string fs;
            for (const auto& [p, e] : factor(f)) fs += (fs.empty() ? "" : " ") + ("(" + p.str() + ")^" + std::to_string(e));
            Table t({"f", "phi", "factors"});
            t.add({f.str(), euler_phi(f), fs});
            return t;
        };
    });

    auto* ex = grp->add_subcommand("expand", "Laurent expansion in 1/Y; columns: index,coeff (coefficient of Y^-index)");
    ex->add_option("--q", o->q, "Field size (prime)")->required();
    ex->add_option("--x", o->x, "Rational function");
    quad_flags(ex);
    ex->add_option("--prec", o->prec, "Number of coefficients")->capture_default_str();
    ex->callback([&run, o] {
        run = [o] {
            if (o->x.empty() == o->quad.empty()) throw Error("usage", "cli", "expand", "give exactly one of --x, --quad");
            const LaurentSeries s = o->x.empty() ? laurent_expand(parse_quad(o->quad, o->branch, o->q), o->prec)
                                                 : laurent_expand(parse_ratfunc(o->x, o->q), o->prec);
            Table t({"index", "coeff"});
            for (int k = s.lo(); k < s.lo() + s.prec(); ++k)
                t.add({static_cast<long long>(k), static_cast<long long>(s.coeff(k))});
            return t;
        };
    });

    auto* cf = grp->add_subcommand("cf", "Continued fraction; columns: part,index,quotient");
    cf->add_option("--q", o->q, "Field size (prime)")->required();
    cf->add_option("--x", o->x, "Rational function");
    quad_flags(cf);
    cf->callback([&run, o] {
        run = [o] {
            if (o->x.empty() == o->quad.empty()) throw Error("usage", "cli", "cf", "give exactly one of --x, --quad");
            const CFExpansion e = o->x.empty() ? cf_expand(parse_quad(o->quad, o->branch, o->q))
                                               : cf_expand(parse_ratfunc(o->x, o->q));
            Table t({"part", "index", "quotient"});
            for (std::size_t i = 0; i < e.preperiod.size(); ++i)
                t.add({std::string("preperiod"), static_cast<long long>(i), e.preperiod[i].str()});
            for (std::size_t i = 0; i < e.period.size(); ++i)
                t.add({std::string("period"), static_cast<long long>(i), e.period[i].str()});
            return t;
        };
    });

    auto* qi = grp->add_subcommand("quad", "Invariants of a quadratic irrational; columns: tr,n,h,conj_branch");
    qi->add_option("--q", o->q, "Field size (odd prime)")->required();
    quad_flags(qi);
    qi->callback([&run, o] {
        run = [o] {
            const QuadInvariants v = quad_invariants(parse_quad(o->quad, o->branch, o->q));
            Table t({"tr", "n", "h", "conj_branch"});
            t.add({v.tr.str(), v.n.str(), v.h, static_cast<long long>(v.conj.branch())});
            return t;
        };
    });
}

} // namespace geodlab::cli
