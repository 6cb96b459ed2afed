#pragma once

// One-sided subshift of finite type over the directed edges of a finite
// graph, with a potential depending on the first letter only. The weighted
// transition matrix is M[i][j] = A[i][j] e^{phi(j)}, which for an edge shift
// is exactly the non-backtracking transfer matrix B_c.

#include <cstdint>
#include <string>
#include <vector>

#include "geodlab/graph_core.hpp"
#include "geodlab/linalg.hpp"

namespace geodlab {

struct EdgeShift {
    std::vector<std::vector<int>> succ; // allowed transitions, ascending
    std::vector<double> phi;
    std::vector<std::string> labels;

    int letters() const { return static_cast<int>(succ.size()); }
    bool allowed(int i, int j) const;
    Matrix weighted() const;

    static EdgeShift from_graph(const Graph& g);
    // A is read as a 0/1 pattern.
    static EdgeShift from_matrix(const Matrix& A, std::vector<double> phi);
};

// Throws "reducible" unless the transition graph is strongly connected.
void require_irreducible(const EdgeShift& s);

struct Perron {
    double rho = 0;
    std::vector<double> r; // right vector, sum 1
    std::vector<double> l; // left vector, l.r = 1
    long iterations = 0;
};
// Power iteration on M + tau I with Collatz-Wielandt stopping at relative
// gap tol; "no-convergence" after max_iter.
Perron perron(const Matrix& M, double tol = 1e-12, long max_iter = 1000000);

double pressure(const EdgeShift& s);

struct MarkovMeasure {
    std::vector<double> p;
    Matrix P;
    double entropy = 0;
    double integral = 0;
    double pressure = 0;
};

MarkovMeasure equilibrium_measure(const EdgeShift& s);
// Entropy and integral of an arbitrary compatible chain; p is recomputed
// as the stationary vector of P.
MarkovMeasure markov_from_stochastic(const EdgeShift& s, const Matrix& P);

double cylinder_measure(const MarkovMeasure& m, const EdgeShift& s, const std::vector<int>& word);

struct GibbsAudit {
    std::vector<double> ratio_min, ratio_max; // per first letter
    std::vector<double> C;                    // max(ratio_max, 1/ratio_min)
    double C_global = 0;
    double spread = 0; // max ratio / min ratio over all words
    std::uint64_t words = 0;
    bool pass = false;
};
// Enumerates every periodic word of length 1..maxlen (maxlen <= 16).
GibbsAudit weak_gibbs_audit(const EdgeShift& s, const MarkovMeasure& m, int maxlen);

struct DecayReport {
    std::vector<double> cov; // cov[n], n = 0..nmax
    double rate = 0;         // fitted log-slope of the envelope
    int fit_from = 0, fit_to = 0;
};
DecayReport correlation_decay(const MarkovMeasure& m, const std::vector<double>& f, const std::vector<double>& g,
                              int nmax);

struct BruteForceResult {
    MarkovMeasure best;
    double value = 0; // h + integral at the optimum
    int starts = 0;
};
// Independent maximiser of h + integral over compatible chains, at most
// four letters.
BruteForceResult brute_force_equilibrium(const EdgeShift& s, std::uint64_t seed = 1, int starts = 32);

// Total variation between the two-letter cylinder laws p_i P_ij.
double tv_two_cylinders(const MarkovMeasure& a, const MarkovMeasure& b);

} // namespace geodlab
