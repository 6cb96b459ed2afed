#include <memory>

#include "commands.hpp"
#include "geodlab/bruhat_tits.hpp"
#include "quad_input.hpp"

namespace geodlab::cli {

namespace {
struct BTOpts {
    int q = 2, n = 0, radius = 6, branch = 1, branch2 = 1, t = 8, depth = 1, L = 6, bins = 8;
    std::string matrix, mode, center = "0", lminus, lplus, rho, points, quad, quad2, x, y, ideal, grid;
    bool enumerate = true;
};

BTMatrix parse_bt_matrix(const std::string& s, int q) {
    const auto e = parse_matrix(s, q);
    return BTMatrix(e[0], e[1], e[2], e[3]);
}

KPoint parse_point(const std::string& s, int q) {
    if (s == "inf" || s == "infinity") return KPoint::infinity(q);
    return KPoint(parse_ratfunc(s, q));
}

QuadIrr need_quad(const std::string& text, int branch, int q, const char* flag) {
    if (text.empty()) throw Error("usage", "cli", "bt", std::string(flag) + " is required");
    return parse_quad(text, branch, q);
}
} // namespace

void add_bt_commands(CLI::App& app, Runner& run) {
    auto* grp = app.add_subcommand("bt", "The Bruhat-Tits tree over F_q((1/Y)) and its arithmetic");
    grp->require_subcommand(1);
    auto o = std::make_shared<BTOpts>();
    auto q_flag = [o](CLI::App* cmd) { cmd->add_option("--q", o->q, "Field size (prime)")->required(); };
    auto m_flag = [o](CLI::App* cmd) {
        cmd->add_option("--matrix", o->matrix, "Entries \"a;b;c;d\", rational functions in Y")->required();
    };

    auto* di = grp->add_subcommand("dist", "d(*, g*); columns: distance,oracle,det_valuation,min_valuation");
    q_flag(di);
    m_flag(di);
    di->callback([&run, o] {
        run = [o] {
            const BTMatrix g = parse_bt_matrix(o->matrix, o->q);
            Table t({"distance", "oracle", "det_valuation", "min_valuation"});
            t.add({static_cast<long long>(vertex_distance(g)), static_cast<long long>(vertex_distance_oracle(g)),
                   static_cast<long long>(g.det_valuation()), static_cast<long long>(g.min_entry_valuation())});
            return t;
        };
    });

    auto* ht = grp->add_subcommand("height", "Image of the horoball at infinity; columns: height,center");
    q_flag(ht);
    m_flag(ht);
    ht->callback([&run, o] {
        run = [o] {
            const HoroballImage h = horoball_height(parse_bt_matrix(o->matrix, o->q));
            Table t({"height", "center"});
            t.add({static_cast<long long>(h.height), h.center.str()});
            return t;
        };
    });

    auto* tl = grp->add_subcommand("translen", "Translation length; columns: length,oracle,radius");
    q_flag(tl);
    m_flag(tl);
    tl->add_option("--radius", o->radius, "Oracle search radius around the base point")->capture_default_str();
    tl->callback([&run, o] {
        run = [o] {
            const BTMatrix g = parse_bt_matrix(o->matrix, o->q);
            Table t({"length", "oracle", "radius"});
            t.add({static_cast<long long>(translation_length(g)),
                   static_cast<long long>(translation_length_oracle(g, o->radius)), static_cast<long long>(o->radius)});
            return t;
        };
    });

    auto* ms = grp->add_subcommand("measure", "Patterson and skinning masses; columns: mode,value,exp");
    q_flag(ms);
    ms->add_option("--mode", o->mode, "point-ball | point-total | horoball-ball | line-density")
        ->required()
        ->check(CLI::IsMember({"point-ball", "point-total", "horoball-ball", "line-density"}));
    ms->add_option("--center", o->center, "Ball centre")->capture_default_str();
    ms->add_option("--n", o->n, "Ball radius q^-n")->capture_default_str();
    ms->add_option("--lminus", o->lminus, "Line endpoint L- (or inf)");
    ms->add_option("--lplus", o->lplus, "Line endpoint L+ (or inf)");
    ms->add_option("--rho", o->rho, "Boundary point");
    ms->callback([&run, o] {
        run = [o] {
            Table t({"mode", "value", "exp"});
            if (o->mode == "point-ball") {
                t.add({o->mode, patterson_point_ball(o->q, parse_ratfunc(o->center, o->q), o->n), std::string()});
            } else if (o->mode == "point-total") {
                t.add({o->mode, patterson_point_total(o->q), std::string()});
            } else if (o->mode == "horoball-ball") {
                t.add({o->mode, horoball_ball_mass(o->q, o->n), static_cast<long long>(-o->n)});
            } else {
                if (o->lminus.empty() || o->lplus.empty() || o->rho.empty())
                    throw Error("usage", "cli", "measure", "line-density needs --lminus, --lplus and --rho");
                const QPower d = line_density(parse_point(o->lminus, o->q), parse_point(o->lplus, o->q),
                                              parse_point(o->rho, o->q));
                t.add({o->mode, d.value(), static_cast<long long>(d.exp)});
            }
            return t;
        };
    });

    auto* cr = grp->add_subcommand("crossratio", "Absolute crossratio |a,b,c,d|; columns: value,exp");
    q_flag(cr);
    cr->add_option("--points", o->points, "\"a;b;c;d\", each a rational function or inf")->required();
    cr->callback([&run, o] {
        run = [o] {
            const auto p = split(o->points, ';');
            if (p.size() != 4) throw Error("usage", "cli", "crossratio", "need four points");
            const QPower c = crossratio_abs(parse_point(p[0], o->q), parse_point(p[1], o->q), parse_point(p[2], o->q),
                                            parse_point(p[3], o->q));
            Table t({"value", "exp"});
            t.add({c.value(), static_cast<long long>(c.exp)});
            return t;
        };
    });

    auto* rh = grp->add_subcommand("relheight", "Relative height h_alpha(beta); columns: value,exp,axis_distance");
    q_flag(rh);
    rh->add_option("--alpha", o->quad, "\"A;B;C\" for alpha")->required();
    rh->add_option("--branch", o->branch, "Branch of alpha")->capture_default_str();
    rh->add_option("--beta", o->quad2, "\"A;B;C\" for beta")->required();
    rh->add_option("--beta-branch", o->branch2, "Branch of beta")->capture_default_str();
    rh->callback([&run, o] {
        run = [o] {
            const QuadIrr a = parse_quad(o->quad, o->branch, o->q), b = parse_quad(o->quad2, o->branch2, o->q);
            const QPower h = relative_height(a, b);
            Table t({"value", "exp", "axis_distance"});
            t.add({h.value(), static_cast<long long>(h.exp), static_cast<long long>(axis_distance(a, b))});
            return t;
        };
    });

    auto* nf = grp->add_subcommand("normform", "Norm form values, or the transformation law with --matrix; "
                                               "columns: x,y,value,exp (or points,failures,pass)");
    q_flag(nf);
    nf->add_option("--alpha", o->quad, "\"A;B;C\" for alpha")->required();
    nf->add_option("--branch", o->branch, "Branch of alpha")->capture_default_str();
    nf->add_option("--x", o->x, "Polynomial x (default: grid)");
    nf->add_option("--y", o->y, "Polynomial y (default: grid)");
    nf->add_option("--matrix", o->matrix, "g in GL_2(F_q[Y]) as \"a;b;c;d\": check the transformation law");
    nf->callback([&run, o] {
        run = [o] {
            const QuadIrr a = parse_quad(o->quad, o->branch, o->q);
            if (!o->matrix.empty()) {
                const auto g = parse_poly_list(o->matrix, o->q);
                if (g.size() != 4) throw Error("usage", "cli", "normform", "a matrix needs 4 entries");
                const TransformCheck c = transform_check(a, g[0], g[1], g[2], g[3], default_grid(o->q));
                Table t({"points", "failures", "pass"});
                t.add({static_cast<long long>(c.points), static_cast<long long>(c.failures), c.pass()});
                return t;
            }
            const auto grid = default_grid(o->q);
            const std::vector<Poly> xs = o->x.empty() ? grid : std::vector<Poly>{parse_poly(o->x, o->q)};
            const std::vector<Poly> ys = o->y.empty() ? grid : std::vector<Poly>{parse_poly(o->y, o->q)};
            Table t({"x", "y", "value", "exp"});
            for (const Poly& x : xs)
                for (const Poly& y : ys) {
                    if (x.is_zero() && y.is_zero()) continue;
                    const QPower v = norm_form(a, x, y);
                    t.add({x.str(), y.str(), v.value(), static_cast<long long>(v.exp)});
                }
            return t;
        };
    });

    auto* cv = grp->add_subcommand("covolume", "Lattice covolume two ways; columns: q,genus,nagao,zeta,closed_form,"
                                               "ideal,ideal_covol,pass");
    q_flag(cv);
    cv->add_option("--ideal", o->ideal, "Also report Haar(K_v / I) for this polynomial");
    cv->callback([&run, o] {
        run = [o] {
            const CovolumeReport r = covolume_suite(o->q);
            Table t({"q", "genus", "nagao", "zeta", "closed_form", "ideal", "ideal_covol", "pass"});
            Cell ideal = std::string(), cov = std::string();
            if (!o->ideal.empty()) {
                const Poly I = parse_poly(o->ideal, o->q);
                ideal = I.str();
                cov = ideal_covolume(I, r.genus);
            }
            t.add({static_cast<long long>(r.q), static_cast<long long>(r.genus), r.nagao_series, r.via_zeta,
                   r.closed_form, ideal, cov, r.pass()});
            return t;
        };
    });

    auto* hk = grp->add_subcommand("hecke", "Index of the Hecke congruence subgroup; columns: ideal,formula,"
                                            "enumerated,gl_order,borel_order,match");
    q_flag(hk);
    hk->add_option("--ideal", o->ideal, "Polynomial generating I")->required();
    hk->add_flag("!--no-enumerate", o->enumerate, "Skip the matrix enumeration");
    hk->callback([&run, o] {
        run = [o] {
            const Poly I = parse_poly(o->ideal, o->q);
            const HeckeReport h = hecke_index(I, o->enumerate);
            Table t({"ideal", "formula", "enumerated", "gl_order", "borel_order", "match"});
            if (h.enumerated)
                t.add({I.str(), h.formula, *h.enumerated, h.gl_order, h.borel_order, h.formula == *h.enumerated});
            else
                t.add({I.str(), h.formula, std::string(), std::string(), std::string(), std::string()});
            return t;
        };
    });

    auto* fa = grp->add_subcommand("farey", "Farey pairs modulo shear; columns: section,index,count,fraction "
                                            "(section psi: index t; section bin: index of the depth-d ball)");
    q_flag(fa);
    fa->add_option("--t", o->t, "Largest denominator degree")->capture_default_str();
    fa->add_option("--depth", o->depth, "Histogram depth (0: counts only)")->capture_default_str();
    fa->callback([&run, o] {
        run = [o] {
            const FareyReport r = farey_count(o->q, o->t, o->depth);
            Table t({"section", "index", "count", "fraction"});
            for (int s = 0; s <= r.t; ++s) {
                const double ratio = s ? static_cast<double>(r.psi[s]) / static_cast<double>(r.psi[s - 1]) : 0.0;
                t.add({std::string("psi"), static_cast<long long>(s), r.psi[s], s ? Cell(ratio) : Cell(std::string())});
            }
            for (std::size_t i = 0; i < r.hist.size(); ++i)
                t.add({std::string("bin"), static_cast<long long>(i), static_cast<long long>(r.hist[i]),
                       static_cast<double>(r.hist[i]) / static_cast<double>(r.points)});
            return t;
        };
    });

    auto* qo = grp->add_subcommand("quad-orbit", "Orbit of a quadratic irrational binned by complexity; columns: "
                                                 "exp,count,cumulative,orbit_size");
    q_flag(qo);
    qo->add_option("--alpha", o->quad, "\"A;B;C\" for alpha_0")->required();
    qo->add_option("--branch", o->branch, "Branch of alpha_0")->capture_default_str();
    qo->add_option("--mode", o->mode, "complexity | relative")->check(CLI::IsMember({"complexity", "relative"}));
    qo->add_option("--L", o->L, "Word length")->capture_default_str();
    qo->add_option("--bins", o->bins, "Thresholds q^exp reported")->capture_default_str();
    qo->callback([&run, o] {
        run = [o] {
            const QuadIrr a = need_quad(o->quad, o->branch, o->q, "--alpha");
            const OrbitMode mode = o->mode == "relative" ? OrbitMode::RelativeHeight : OrbitMode::Complexity;
            const OrbitReport r = quad_orbit_experiment(a, mode, o->L, o->bins);
            Table t({"exp", "count", "cumulative", "orbit_size"});
            for (const OrbitRow& row : r.rows)
                t.add({static_cast<long long>(row.exp), static_cast<long long>(row.count),
                       static_cast<long long>(row.cumulative), static_cast<long long>(r.size)});
            return t;
        };
    });
}

} // namespace geodlab::cli
