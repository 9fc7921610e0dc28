#pragma once

// Self-contained verification suites shared by the command line `verify`
// subcommand and the test harness.  Each suite returns a report with one line
// per check so callers can render a pass/fail table.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "gpexp/bigint.hpp"
#include "gpexp/cardinality.hpp"
#include "gpexp/exponents.hpp"
#include "gpexp/pmf.hpp"
#include "gpexp/rng.hpp"
#include "gpexp/scenario.hpp"
#include "gpexp/types_method.hpp"

namespace gpexp::checks {

struct CheckLine {
    std::string label;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> lines;

    bool passed() const {
        for (const auto& l : lines)
            if (!l.passed) return false;
        return true;
    }
    void add(const std::string& label, bool ok, const std::string& detail = "") {
        lines.push_back({label, ok, detail});
    }
};

inline std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

// 1 - prod_i (1-a_i)^{t_i} <= min(1, sum_i a_i t_i) for a_i in [0,1], t_i >= 1.
inline SuiteReport check_union_bound(std::uint64_t trials, std::uint64_t seed) {
    SuiteReport rep{"inequality", {}};

    const double lhs_edge = 1.0 - std::pow(1.0 - 0.5, 1.0);
    const double rhs_edge = std::min(1.0, 0.5 * 1.0);
    rep.add("equality edge K=1 alpha=0.5 t=1", std::abs(lhs_edge - rhs_edge) <= 1e-15,
            fmt("lhs=%.17g rhs=%.17g", lhs_edge, rhs_edge));

    RngStream rng(seed);
    std::uint64_t violations = 0;
    double worst_margin = 1e300;
    for (std::uint64_t it = 0; it < trials; ++it) {
        const int k = 1 + static_cast<int>(rng.below(6));
        double prod = 1.0;
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            const double alpha = rng.uniform();
            const double t = 1.0 + rng.uniform() * (1e4 - 1.0);
            prod *= std::pow(1.0 - alpha, t);
            sum += alpha * t;
        }
        const double lhs = 1.0 - prod;
        const double rhs = std::min(1.0, sum);
        const double margin = rhs - lhs;
        worst_margin = std::min(worst_margin, margin);
        if (margin < -1e-12) ++violations;
    }
    rep.add(fmt("fuzz %.0f trials K<=6", static_cast<double>(trials)), violations == 0,
            fmt("violations=%.0f worst_margin=%.3g", static_cast<double>(violations),
                worst_margin));
    return rep;
}

// Type-class size sandwich bounds and exact partition identities, exhaustive
// over all (conditional) types at the given blocklengths and alphabet sizes.
inline SuiteReport check_type_counts(int max_n, int max_alphabet) {
    SuiteReport rep{"types", {}};

    std::uint64_t plain_checked = 0;
    bool plain_ok = true;
    bool sums_ok = true;
    for (int k = 1; k <= max_alphabet; ++k) {
        for (int n = 1; n <= max_n; ++n) {
            BigUint total(0);
            for (const auto& t : enumerate_types(k, n)) {
                const auto size = type_class_size(t);
                double h = 0.0;
                for (int a = 0; a < k; ++a) {
                    const double frac =
                        static_cast<double>(t.counts[static_cast<std::size_t>(a)]) / n;
                    if (frac > 0.0) h -= frac * std::log2(frac);
                }
                const double upper = n * h;
                const double lower = n * h - k * std::log2(n + 1.0);
                if (size.log2_value > upper + 1e-9 || size.log2_value < lower - 1e-9)
                    plain_ok = false;
                total.add(size.exact);
                ++plain_checked;
            }
            if (total.to_string() != BigUint::pow(static_cast<std::uint32_t>(k),
                                                  static_cast<std::uint32_t>(n))
                                         .to_string())
                sums_ok = false;
        }
    }
    rep.add("plain-type sandwich bounds", plain_ok,
            fmt("%.0f classes checked", static_cast<double>(plain_checked)));
    rep.add("sum of class sizes = alphabet^n", sums_ok, "exact big-integer identity");

    std::uint64_t cond_checked = 0;
    bool cond_ok = true;
    bool cond_sums_ok = true;
    for (int kg = 1; kg <= max_alphabet; ++kg) {
        for (int ko = 1; ko <= max_alphabet; ++ko) {
            for (int n = 1; n <= max_n; ++n) {
                for (const auto& given : enumerate_types(kg, n)) {
                    BigUint total(0);
                    for (const auto& ct : enumerate_conditional_types(given, ko)) {
                        const auto size = cond_type_class_size(ct);
                        double h = 0.0;
                        for (int g = 0; g < kg; ++g) {
                            const int ng = given.counts[static_cast<std::size_t>(g)];
                            if (ng == 0) continue;
                            for (int o = 0; o < ko; ++o) {
                                const double frac = static_cast<double>(ct.at(g, o)) / ng;
                                if (frac > 0.0)
                                    h -= (static_cast<double>(ng) / n) * frac * std::log2(frac);
                            }
                        }
                        const double upper = n * h;
                        const double lower = n * h - kg * ko * std::log2(n + 1.0);
                        if (size.log2_value > upper + 1e-9 ||
                            size.log2_value < lower - 1e-9)
                            cond_ok = false;
                        total.add(size.exact);
                        ++cond_checked;
                    }
                    if (total.to_string() != BigUint::pow(static_cast<std::uint32_t>(ko),
                                                          static_cast<std::uint32_t>(n))
                                                 .to_string())
                        cond_sums_ok = false;
                }
            }
        }
    }
    rep.add("conditional-type sandwich bounds", cond_ok,
            fmt("%.0f classes checked", static_cast<double>(cond_checked)));
    rep.add("per-given sum = out-alphabet^n", cond_sums_ok, "exact big-integer identity");
    return rep;
}

namespace detail {

inline std::vector<double> random_simplex_row(RngStream& rng, int m) {
    std::vector<double> row(static_cast<std::size_t>(m));
    double s = 0.0;
    for (auto& v : row) {
        v = -std::log(std::max(rng.uniform(), 1e-300));
        s += v;
    }
    for (auto& v : row) v /= s;
    return row;
}

}  // namespace detail

// Grid-rounding of attack channels and the floor-supported pmf quantizer.
inline SuiteReport check_quantization(std::uint64_t per_l_trials, std::uint64_t seed) {
    SuiteReport rep{"quantization", {}};
    RngStream rng(seed);

    for (int l : {4, 8, 16}) {
        std::uint64_t bad_sum = 0, bad_dist = 0, bad_l1 = 0, bad_grid = 0;
        for (std::uint64_t it = 0; it < per_l_trials; ++it) {
            const int nx = 1 + static_cast<int>(rng.below(3));
            const int nsa = 1 + static_cast<int>(rng.below(2));
            const int ny = 2 + static_cast<int>(rng.below(3));
            if (ny > l) continue;
            std::vector<double> rows;
            for (int r = 0; r < nx * nsa; ++r) {
                auto row = detail::random_simplex_row(rng, ny);
                rows.insert(rows.end(), row.begin(), row.end());
            }
            AttackChannel p{CondPmf({nx, nsa}, {ny}, rows)};
            std::vector<double> dist(static_cast<std::size_t>(nx * ny));
            for (auto& d : dist) d = rng.uniform();
            const auto q = discretize_attack(p, dist, l);
            for (int r = 0; r < nx * nsa; ++r) {
                const auto pr = p.p_y_given_xsa.row(static_cast<std::size_t>(r));
                const auto qr = q.p_y_given_xsa.row(static_cast<std::size_t>(r));
                const int x = r / nsa;
                double sum = 0.0, l1 = 0.0, dp = 0.0, dq = 0.0;
                for (int y = 0; y < ny; ++y) {
                    sum += qr[static_cast<std::size_t>(y)];
                    l1 += std::abs(pr[static_cast<std::size_t>(y)] -
                                   qr[static_cast<std::size_t>(y)]);
                    const double dxy = dist[static_cast<std::size_t>(x * ny + y)];
                    dp += pr[static_cast<std::size_t>(y)] * dxy;
                    dq += qr[static_cast<std::size_t>(y)] * dxy;
                    const double scaled = qr[static_cast<std::size_t>(y)] * l;
                    if (std::abs(scaled - std::llround(scaled)) > 1e-9) ++bad_grid;
                }
                if (std::abs(sum - 1.0) != 0.0) ++bad_sum;
                if (dq > dp + 1e-12) ++bad_dist;
                if (l1 > static_cast<double>(ny) / l + 1e-12) ++bad_l1;
            }
        }
        rep.add(fmt("discretize l=%.0f row sums exactly 1", l), bad_sum == 0,
                fmt("bad=%.0f", static_cast<double>(bad_sum)));
        rep.add(fmt("discretize l=%.0f distortion non-increasing", l), bad_dist == 0,
                fmt("bad=%.0f", static_cast<double>(bad_dist)));
        rep.add(fmt("discretize l=%.0f L1 <= |Y|/l", l), bad_l1 == 0,
                fmt("bad=%.0f", static_cast<double>(bad_l1)));
        rep.add(fmt("discretize l=%.0f outputs on grid", l), bad_grid == 0,
                fmt("bad=%.0f", static_cast<double>(bad_grid)));
    }

    for (int l : {8, 32, 128}) {
        std::uint64_t bad_gap = 0, bad_floor = 0, bad_ratio = 0;
        double worst_ratio = 0.0;
        for (std::uint64_t it = 0; it < per_l_trials; ++it) {
            const int m = 2 + static_cast<int>(rng.below(5));
            const double eps = 1.0 / l;
            auto lift = [&](std::vector<double> v) {
                for (auto& x : v) x = eps + (1.0 - m * eps) * x;
                return JointPmf::normalized({m}, v);
            };
            const JointPmf p = lift(detail::random_simplex_row(rng, m));
            const JointPmf q = lift(detail::random_simplex_row(rng, m));
            const auto qp = log_uniform_quantize(p, l);
            for (int i = 0; i < m; ++i) {
                const double out = qp[static_cast<std::size_t>(i)];
                const double in = p[static_cast<std::size_t>(i)];
                if (out < eps * (1.0 - 1e-12)) ++bad_floor;
                if (std::abs(std::log2(out / in)) > std::log2(static_cast<double>(l)) / l + 1e-9)
                    ++bad_ratio;
            }
            const auto gap = kl_quantization_gap(p, q, l);
            if (gap.gap > gap.bound) ++bad_gap;
            if (gap.bound > 0.0) worst_ratio = std::max(worst_ratio, gap.gap / gap.bound);
        }
        rep.add(fmt("quantize l=%.0f entries >= 1/l", l), bad_floor == 0,
                fmt("bad=%.0f", static_cast<double>(bad_floor)));
        rep.add(fmt("quantize l=%.0f |log2 ratio| <= log2(l)/l", l), bad_ratio == 0,
                fmt("bad=%.0f", static_cast<double>(bad_ratio)));
        rep.add(fmt("KL gap l=%.0f within closed-form bound", l), bad_gap == 0,
                fmt("bad=%.0f worst_gap/bound=%.3f", static_cast<double>(bad_gap),
                    worst_ratio));
    }
    return rep;
}

// Light-budget boundary behaviour of the random-coding exponent around the
// worst-case achievable rate.
inline SuiteReport check_lemma_boundaries(const ScenarioSpec& spec,
                                          const SolverOptions& solver) {
    SuiteReport rep{"lemmas", {}};
    const auto cap = capacity_CL(spec, solver);
    rep.add("capacity within [0, log2|X|]",
            cap.value >= -1e-9 && cap.value <= std::log2(double(spec.x_size)) + 1e-9,
            fmt("C=%.6f", cap.value));

    ExponentProblem prob;
    prob.spec = spec;
    prob.model = ChannelModel::Arbitrary;
    prob.solver = solver;

    prob.rate = cap.value + 0.02;
    const double above = er_cam(prob).value;
    rep.add("exponent ~ 0 above capacity", above <= 5e-3, fmt("E(C+0.02)=%.6f", above));

    prob.rate = 0.05;
    const double lo = er_cam(prob).value;
    prob.rate = 0.15;
    const double hi = er_cam(prob).value;
    rep.add("exponent non-increasing in rate", lo >= hi - 5e-3,
            fmt("E(0.05)=%.6f E(0.15)=%.6f", lo, hi));
    rep.add("exponent >= |C-R|+ slack", lo >= pos_part(cap.value - 0.05) - 0.02,
            fmt("E(0.05)=%.6f |C-R|+=%.6f", lo, pos_part(cap.value - 0.05)));
    return rep;
}

// Light-budget ordering between the two adversary models, plus the exact
// objective identity relating them at a shared witness.
inline SuiteReport check_ordering(const ScenarioSpec& spec, const SolverOptions& solver,
                                  double rate) {
    SuiteReport rep{"ordering", {}};
    ExponentProblem prob;
    prob.spec = spec;
    prob.solver = solver;
    prob.rate = rate;

    prob.model = ChannelModel::Compound;
    const auto fixed = er_cdmc(prob);
    prob.model = ChannelModel::Arbitrary;
    const auto adaptive = er_cam(prob);
    rep.add("compound exponent <= adaptive exponent", fixed.value <= adaptive.value + 2e-3,
            fmt("E_fixed=%.6f E_adaptive=%.6f", fixed.value, adaptive.value));

    const auto induced =
        cam_induced_attack(spec, adaptive.tilde_p_se, adaptive.transmit, adaptive.hypothesis);
    const double cam_val = cam_objective(spec, rate, adaptive.tilde_p_se, adaptive.transmit,
                                         adaptive.hypothesis);
    const double cdmc_val = cdmc_objective(spec, rate, adaptive.tilde_p_se, adaptive.transmit,
                                           adaptive.hypothesis, induced);
    const double gap = hypothesis_coupling_gap(spec, adaptive.tilde_p_se, adaptive.transmit,
                                               adaptive.hypothesis);
    rep.add("objective identity at shared witness",
            std::abs(cdmc_val - (cam_val + gap)) <= 1e-9 && gap >= -1e-12,
            fmt("|lhs-rhs|=%.3g gap=%.6f", std::abs(cdmc_val - (cam_val + gap)), gap));
    return rep;
}

}  // namespace gpexp::checks
