#pragma once

// Common perpendiculars between subgraphs of a finite graph (non-backtracking
// edge paths that leave Y- and enter Y+ transversally), closed orbits and
// orbit counts in a conjugacy class, with the explicit asymptotic constants.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geodlab/common.hpp"
#include "geodlab/graph_core.hpp"

namespace geodlab {

// Throws "bad-subgraph" unless s is nonempty, proper, reversal-closed and connected.
void check_subgraph(const Graph& g, const Subgraph& s, const std::string& what);

struct CountSeries {
    // Index n = 0..nmax; entry 0 is always zero (a path has length >= 1).
    std::vector<BigInt> count, cumulative;
    std::vector<double> weighted, cum_weighted;
    // Exact sums when every edge carries a rational weight.
    std::optional<std::vector<Rational>> exact_weighted;
    // Bipartite graphs: counts split by (class of start vertex, class of end vertex), index 2a+b.
    bool bipartite = false;
    std::vector<std::array<BigInt, 4>> by_class;
};

CountSeries count_perpendiculars(const Graph& g, const Subgraph& minus, const Subgraph& plus, int nmax);

struct MassValue {
    double value = 0;
    std::optional<Rational> exact;
    std::string normalisation;
};

// Total Bowen-Margulis mass of the quotient graph of groups.
MassValue bm_mass_regular(const Graph& g, int q);            // probability normalisation
MassValue bm_mass_biregular(const Graph& g, int p, int q);   // ||mu_x|| = deg / sqrt(deg - 1)
// Spherically symmetric tree with period (p_0, ..., p_{N-1}); r[x] is the
// distance of x to the orbit of the root. mu0 is ||mu_{x0}||.
MassValue bm_mass_spherical(const Graph& g, const std::vector<int>& period, const std::vector<int>& r, double mu0);
// r for the regular (N = 1) and biregular (N = 2) cases, read off degrees.
std::vector<int> orbit_distances(const Graph& g, const std::vector<int>& period);

struct SkinSpec {
    std::string kind; // point | horoball | cycle | regular-subgraph | biregular-cycle
    int q = 2, p = 2;
    int k = 0;             // degree inside the subgraph (regular-subgraph)
    long length = 0;       // cycle length L, or |V-| for regular-subgraph
    long stabiliser = 1;   // |Gamma_x| for a point
    double mu = 1.0;       // ||mu|| (probability normalisation = 1)
    Rational ray_volume = 0;
};
MassValue skinning_mass(const SkinSpec& s);

struct AsymptoticReport {
    double delta = 0;
    double constant = 0;
    std::string growth; // human-readable growth term
    std::string normalisation;
    std::vector<double> expected, ratio; // per n
    double ratio_at_nmax = 0;
    bool pass = false;
    // Independent assembly from the per-class skinning masses, when it
    // differs from the closed form above.
    std::vector<double> diagnostic_expected, diagnostic_ratio;
    double diagnostic_at_nmax = 0;
};

AsymptoticReport theoretical_constant(const Graph& g, const Subgraph& minus, const Subgraph& plus,
                                      const CountSeries& counts, double tol = 0.05);

struct OrbitSeries {
    std::vector<BigInt> fix;          // trace(B_0^n)
    std::vector<BigInt> primitive;    // primitive periodic words of length n
    std::vector<BigInt> orbits;       // rotation classes = primitive / n
    std::vector<BigInt> cumulative;
    std::vector<double> weighted;     // sum over prime orbits of e^{c}
    std::vector<double> theory;       // e^d/(e^d - 1) e^{dn}/n
    std::vector<double> ratio;        // cumulative / theory
    double delta = 0;
};
OrbitSeries closed_orbit_count(const Graph& g, int nmax);

struct ConjugacyReport {
    int lambda0 = 0;
    std::vector<BigInt> count;  // N(n), n = 0..nmax
    std::vector<double> ratio;  // N(n) / ((lambda0/|V|) q^floor((n - lambda0)/2))
};
// cycle: directed edge indices of a simple closed non-backtracking cycle.
ConjugacyReport conjugacy_count(const Graph& g, int x0, const std::vector<int>& cycle, int nmax);

} // namespace geodlab
