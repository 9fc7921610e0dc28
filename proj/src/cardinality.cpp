#include "gpexp/cardinality.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "gpexp/errors.hpp"

namespace gpexp {

namespace {

constexpr double kGridSnap = 1e-9; // relative slack when deciding grid membership

BigUint cara_formula(int base_offset, std::uint64_t pow_base, std::uint64_t exponent) {
    BigUint r = BigUint::pow(pow_base, exponent);
    r.add(BigUint(static_cast<std::uint64_t>(base_offset - 1)));
    return r;
}

} // namespace

BigUint cara_L_capacity(int l, int x_size, int se_size, int y_size, int sa_size) {
    if (l < 1 || x_size < 1 || se_size < 1 || y_size < 1 || sa_size < 1)
        throw ConfigError("cara_L_capacity: sizes and l must be positive");
    const std::uint64_t exponent = static_cast<std::uint64_t>(y_size) *
                                   static_cast<std::uint64_t>(x_size) *
                                   static_cast<std::uint64_t>(sa_size);
    return cara_formula(x_size * se_size, static_cast<std::uint64_t>(l) + 1, exponent);
}

BigUint cara_L_exponent(int l, int x_size, int se_size, int sa_size, int sd_size,
                        int y_size) {
    if (l < 1 || x_size < 1 || se_size < 1 || y_size < 1 || sa_size < 1 || sd_size < 1)
        throw ConfigError("cara_L_exponent: sizes and l must be positive");
    const std::uint64_t s_size = static_cast<std::uint64_t>(se_size) * sa_size * sd_size;
    const std::uint64_t exponent = static_cast<std::uint64_t>(y_size) *
                                   static_cast<std::uint64_t>(x_size) *
                                   (s_size + static_cast<std::uint64_t>(sa_size));
    return cara_formula(x_size * se_size, static_cast<std::uint64_t>(l), exponent);
}

ErCardinalityConstants er_cardinality_constants(const ScenarioSpec& spec) {
    spec.validate();
    ErCardinalityConstants out;

    const std::vector<double> cond = spec.sa_sd_given_se(); // [se][sa][sd]
    double cmin = 1.0;
    for (const double v : cond)
        if (v > 0.0) cmin = std::min(cmin, v);
    out.support_min = cmin;

    const double rows = static_cast<double>(spec.y_size) * spec.sa_size * spec.sd_size;
    const double inner = 8.0 * std::pow(static_cast<double>(spec.sa_size), 5.0) *
                         static_cast<double>(spec.sd_size) * cmin;
    const double root = std::sqrt(std::max(0.0, -0.5 * std::log2(inner)));
    out.l_min = std::max(rows, std::exp2(1.0 + root));

    double dbar = 0.0;
    for (int x = 0; x < spec.x_size; ++x) {
        double row = 0.0;
        for (int y = 0; y < spec.y_size; ++y) row += spec.distortion_at(x, y);
        dbar = std::max(dbar, row / static_cast<double>(spec.y_size));
    }
    out.d_bar = dbar;
    return out;
}

QuantizerSpec QuantizerSpec::make(int l) {
    if (l < 1) throw ConfigError("quantizer resolution must be positive");
    QuantizerSpec q;
    q.l = l;
    q.epsilon = 1.0 / static_cast<double>(l);
    const double log2_eps = std::log2(q.epsilon);
    q.levels.reserve(static_cast<std::size_t>(l));
    for (int i = l; i >= 1; --i)
        q.levels.push_back(std::exp2(static_cast<double>(i) * q.epsilon * log2_eps));
    return q;
}

AttackChannel discretize_attack(const AttackChannel& p, const std::vector<double>& distortion,
                                int l) {
    const CondPmf& chan = p.p_y_given_xsa;
    const std::size_t rows = chan.rows();
    const std::size_t cols = chan.cols();
    if (l < static_cast<int>(cols))
        throw ConfigError("discretize_attack: resolution below the output alphabet size");
    const auto& gs = chan.given_sizes();
    const std::size_t x_size = gs.empty() ? 1 : static_cast<std::size_t>(gs.front());
    if (x_size == 0 || rows % x_size != 0)
        throw ConfigError("discretize_attack: malformed channel row shape");
    const std::size_t tail = rows / x_size; // trailing given-axes (s^a, ...)
    if (distortion.size() != x_size * cols)
        throw ConfigError("discretize_attack: distortion table has the wrong shape");

    std::vector<double> out(rows * cols, 0.0);
    std::vector<long long> grid(cols);
    std::vector<std::size_t> off_grid;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t x = r / tail;
        auto row = chan.row(r);
        off_grid.clear();
        long long total = 0;
        for (std::size_t y = 0; y < cols; ++y) {
            const double scaled = row[y] * static_cast<double>(l);
            long long up = static_cast<long long>(std::ceil(scaled - kGridSnap));
            if (up < 0) up = 0;
            const bool on_grid = std::fabs(scaled - std::llround(scaled)) <= kGridSnap;
            grid[y] = up;
            if (!on_grid && up > 0) off_grid.push_back(y);
            total += up;
        }
        const long long k = total - l;
        if (k < 0 || k >= static_cast<long long>(cols) ||
            k > static_cast<long long>(off_grid.size()))
            throw SolverError("discretize_attack: grid bookkeeping failed");
        // Remove the excess from the off-grid outputs with the largest
        // distortion; by the rearrangement principle this dominates the mass
        // the ceilings added, so the row's expected distortion cannot grow.
        std::stable_sort(off_grid.begin(), off_grid.end(), [&](std::size_t a, std::size_t b) {
            return distortion[x * cols + a] > distortion[x * cols + b];
        });
        for (long long i = 0; i < k; ++i) grid[off_grid[static_cast<std::size_t>(i)]] -= 1;
        for (std::size_t y = 0; y < cols; ++y) {
            if (grid[y] < 0) throw SolverError("discretize_attack: negative grid mass");
            out[r * cols + y] = static_cast<double>(grid[y]) / static_cast<double>(l);
        }
    }
    return AttackChannel{CondPmf(chan.given_sizes(), chan.out_sizes(), std::move(out))};
}

JointPmf log_uniform_quantize(const JointPmf& p, int l) {
    if (l < 1) throw ConfigError("log_uniform_quantize: resolution must be positive");
    const double eps = 1.0 / static_cast<double>(l);
    const double log2_eps = std::log2(eps);
    std::vector<double> q(p.total_size());
    for (std::size_t i = 0; i < p.total_size(); ++i) {
        const double v = p[i];
        if (v < eps * (1.0 - 1e-12))
            throw ConfigError("log_uniform_quantize: entry below 1/l");
        // Position in log scale: v = eps^t with t in [0, 1]; quantize down.
        const double t = std::log2(std::min(v, 1.0)) / log2_eps;
        double idx = std::ceil(t * static_cast<double>(l) - kGridSnap);
        idx = std::clamp(idx, 1.0, static_cast<double>(l));
        q[i] = std::exp2(idx * eps * log2_eps);
    }
    return JointPmf::normalized(p.sizes(), std::move(q), p.roles());
}

KlGapResult kl_quantization_gap(const JointPmf& p, const JointPmf& q, int l) {
    if (p.sizes() != q.sizes())
        throw ConfigError("kl_quantization_gap: mismatched supports");
    const JointPmf fp = log_uniform_quantize(p, l);
    const JointPmf fq = log_uniform_quantize(q, l);
    KlGapResult out;
    out.gap = std::fabs(kl_bits(p.values(), q.values()) -
                        kl_bits(fp.values(), fq.values()));
    const double log2_l = std::log2(static_cast<double>(l));
    out.bound = 2.0 * static_cast<double>(p.total_size() + 1) * log2_l * log2_l /
                static_cast<double>(l);
    if (out.gap > out.bound)
        throw SolverError("kl_quantization_gap: gap exceeds its closed-form bound");
    return out;
}

CapacityGapReport capacity_gap_check(const ScenarioSpec& spec, int l,
                                     const SolverOptions& solver) {
    spec.validate();
    if (l < 1) throw ConfigError("capacity_gap_check: resolution must be positive");
    CapacityGapReport rep;
    rep.l = l;
    rep.l_next = 2 * l;
    rep.L_l = cara_L_capacity(l, spec.x_size, spec.se_size, spec.y_size, spec.sa_size);
    rep.L_l_next =
        cara_L_capacity(rep.l_next, spec.x_size, spec.se_size, spec.y_size, spec.sa_size);
    constexpr std::uint64_t kMaxAux = 4096;
    if (!rep.L_l_next.fits_u64() || rep.L_l_next.to_u64() > kMaxAux)
        throw BudgetError("capacity_gap_check: auxiliary alphabet " + rep.L_l_next.to_string() +
                          " exceeds the solver budget");
    const int aux_l = static_cast<int>(rep.L_l.to_u64());
    const int aux_next = static_cast<int>(rep.L_l_next.to_u64());

    // Cheap base solve at the original auxiliary size; its embedding seeds the
    // larger solves, which makes the capacity sequence monotone by
    // construction (a zero-padded solution is always available to the search).
    const CapacityResult base = capacity_CL(spec, solver);

    SolverOptions opts_l = solver;
    if (aux_l >= spec.u_size)
        opts_l.transmit_warm_starts.push_back(
            embed_transmit(base.transmit, spec.se_size, spec.x_size, spec.u_size, aux_l));
    const CapacityResult at_l = capacity_CL(spec.with_u_size(aux_l), opts_l);
    rep.c_l = at_l.value;

    SolverOptions opts_next = solver;
    if (aux_next >= spec.u_size)
        opts_next.transmit_warm_starts.push_back(
            embed_transmit(base.transmit, spec.se_size, spec.x_size, spec.u_size, aux_next));
    opts_next.transmit_warm_starts.push_back(
        embed_transmit(at_l.transmit, spec.se_size, spec.x_size, aux_l, aux_next));
    const CapacityResult at_next = capacity_CL(spec.with_u_size(aux_next), opts_next);
    rep.c_l_next = at_next.value;

    SolverOptions opts_ref = opts_next;
    opts_ref.transmit_ga.generations = solver.transmit_ga.generations * 2;
    opts_ref.transmit_ga.stall_patience = solver.transmit_ga.stall_patience * 2;
    opts_ref.restarts = solver.restarts + 1;
    opts_ref.transmit_warm_starts.push_back(at_next.transmit);
    const CapacityResult ref = capacity_CL(spec.with_u_size(aux_next), opts_ref);
    rep.c_ref = std::max(ref.value, std::max(rep.c_l, rep.c_l_next));

    rep.gap = rep.c_ref - rep.c_l;
    rep.gap_bound = 2.0 * static_cast<double>(spec.y_size) *
                    std::log2(static_cast<double>(l)) / static_cast<double>(l);
    rep.monotone_ok = rep.c_l_next >= rep.c_l - 2e-3;
    rep.within_bounds = rep.gap <= rep.gap_bound + 5e-3 && rep.c_l <= rep.c_ref + 5e-3;
    return rep;
}

} // namespace gpexp
