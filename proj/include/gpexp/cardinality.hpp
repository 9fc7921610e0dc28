#pragma once

#include <vector>

#include "gpexp/bigint.hpp"
#include "gpexp/exponents.hpp"
#include "gpexp/pmf.hpp"
#include "gpexp/scenario.hpp"

namespace gpexp {

// Auxiliary-alphabet size that preserves the capacity value when the attack
// class is restricted to the 1/l probability grid:
//   L(l) = |X||Se| + (l+1)^(|Y||X||Sa|) - 1.
// Exact big-integer result; grows past 2^63 quickly in l.
BigUint cara_L_capacity(int l, int x_size, int se_size, int y_size, int sa_size);

// Auxiliary-alphabet size for the exponent subsequence:
//   L(l) = |X||Se| + l^(|Y||X|(|S| + |Sa|)) - 1,  |S| = |Se||Sa||Sd|.
BigUint cara_L_exponent(int l, int x_size, int se_size, int sa_size, int sd_size,
                        int y_size);

// Constants entering the finite-alphabet exponent approximation bound,
// computed from the scenario alone (no solver involved):
//   support_min  smallest positive entry of p(sa,sd|se) (<= 1/(|Sa||Sd|)),
//   l_min        max{ |Y||Sa||Sd|,
//                     2^(1 + sqrt(|-(1/2) log2(8 |Sa|^5 |Sd| support_min)|^+)) },
//   d_bar        max_x |Y|^-1 sum_y d(x,y).
struct ErCardinalityConstants {
    double support_min = 0.0;
    double l_min = 0.0;
    double d_bar = 0.0;
};
ErCardinalityConstants er_cardinality_constants(const ScenarioSpec& spec);

// Reproduction levels of the log-uniform quantizer at resolution l:
// eps^(i*eps) for i = l..1 with eps = 1/l, listed in increasing order, so the
// smallest level is exactly eps and the largest is eps^eps.
struct QuantizerSpec {
    int l = 0;
    double epsilon = 0.0;
    std::vector<double> levels;

    static QuantizerSpec make(int l);
};

// Rounds an attack channel onto the 1/l probability grid without increasing
// any row's expected distortion.  Per row: ceil each entry to the grid, then
// subtract 1/l from the k = l*sum(ceil) - l off-grid outputs with the largest
// distortion (ties broken by ascending output index).  distortion is the
// d(x,y) table, row-major over (x, y) with x the leading given-axis of p.
// Guarantees: rows sum to one exactly, per-row expected distortion does not
// increase, and per-row L1 change is at most |Y|/l.  Rejects l < |Y|.
AttackChannel discretize_attack(const AttackChannel& p, const std::vector<double>& distortion,
                                int l);

// Normalized per-entry log-uniform quantization onto the QuantizerSpec levels.
// Requires every entry of p to be at least 1/l; the output has minimum entry
// at least 1/l and satisfies |log2(out/p)| <= log2(l)/l entrywise.
JointPmf log_uniform_quantize(const JointPmf& p, int l);

// |D(p||q) - D(Phi_l p||Phi_l q)| in bits together with its closed-form bound
// 2(|Y|+1) log2(l)^2 / l.  Throws if the gap exceeds the bound.
struct KlGapResult {
    double gap = 0.0;
    double bound = 0.0;
};
KlGapResult kl_quantization_gap(const JointPmf& p, const JointPmf& q, int l);

// Empirical check of the finite-auxiliary-alphabet capacity approximation:
// solves the capacity at auxiliary sizes L(l) and L(2l) (the larger solve
// warm-started by embedding the smaller solution) plus a higher-budget
// reference, and reports the bound  C* - 2|Y| log2(l)/l <= C_L(l) <= C*.
struct CapacityGapReport {
    int l = 0;
    int l_next = 0;
    BigUint L_l;        // exact alphabet size from the formula at l
    BigUint L_l_next;   // and at 2l
    double c_l = 0.0;       // capacity at auxiliary size L(l)
    double c_l_next = 0.0;  // capacity at auxiliary size L(2l)
    double c_ref = 0.0;     // higher-budget reference capacity
    double gap = 0.0;       // c_ref - c_l
    double gap_bound = 0.0; // 2|Y| log2(l)/l
    bool monotone_ok = false;      // c_l_next >= c_l - 2e-3
    bool within_bounds = false;    // gap <= gap_bound + 5e-3 and c_l <= c_ref + 5e-3
};
CapacityGapReport capacity_gap_check(const ScenarioSpec& spec, int l,
                                     const SolverOptions& solver);

} // namespace gpexp
