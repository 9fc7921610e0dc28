// Acceptance harness: runs the numbered acceptance criteria given on the
// command line (all of them when none are given) and prints exactly one
//   CRITERION <k>: PASS|FAIL - <what it checks> (<measurements>)
// line per criterion.  Exit status is zero only when every selected
// criterion passes.
//
// Reference values marked "frozen" were computed from independent closed-form
// oracles before the solvers were built and are not adjusted to match solver
// output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gpexp/bigint.hpp"
#include "gpexp/binning.hpp"
#include "gpexp/checks.hpp"
#include "gpexp/errors.hpp"
#include "gpexp/exponents.hpp"
#include "gpexp/io.hpp"
#include "gpexp/pmf.hpp"
#include "gpexp/rng.hpp"
#include "gpexp/scenario.hpp"
#include "gpexp/types_method.hpp"

using namespace gpexp;

namespace {

// Frozen oracle values (direct formula evaluation, double-checked against an
// independent implementation before any solver existed).
constexpr double kGStar = 0.249022499567306;    // g*(0.4, 0.2)
constexpr double kCPriv = 0.267659426334693;    // c_priv(0.4, 0.2)
constexpr double kSharedZero = 0.263;           // shared-state exponent at R=0
constexpr double kPubZeroCdmc = 0.123;          // fixed-channel model, public, R=0
constexpr double kPrivZeroCdmc = 0.146;         // fixed-channel model, private, R=0

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

std::string fmt(const char* pattern, ...) {
    char buf[1024];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return std::string(buf);
}

ScenarioSpec preset(const std::string& name) {
    return build_preset(name, 0.2, 0.4, 0.2, 2);
}

double solve_exponent(const ScenarioSpec& spec, ChannelModel model, double rate,
                      const SolverOptions& solver) {
    ExponentProblem problem;
    problem.spec = spec;
    problem.model = model;
    problem.rate = rate;
    problem.solver = solver;
    return (model == ChannelModel::Compound ? er_cdmc(problem) : er_cam(problem)).value;
}

// ---------------------------------------------------------------------------
// Criterion 1: closed-form capacities.

Outcome criterion_1() {
    const double g = g_star(0.4, 0.2);
    const double c = c_priv(0.4, 0.2);
    const std::string printed = fmt("%.3f", g);
    const bool pass = std::abs(g - kGStar) <= 1e-6 && std::abs(c - kCPriv) <= 1e-6 &&
                      printed == "0.249";
    return {pass, fmt("g*=%.15f (frozen %.15f), c_priv=%.15f (frozen %.15f), "
                      "g* prints as %s",
                      g, kGStar, c, kCPriv, printed.c_str())};
}

// ---------------------------------------------------------------------------
// Criterion 2: correlated-adversary exponents on the public preset follow the
// capacity-gap line |C - R|+ within 0.01 at five rates.  Writes
// acceptance_c2.csv; criterion 12 reproduces those bytes.

struct CsvOutcome {
    Outcome outcome;
    std::string csv;
};

CsvOutcome run_c2() {
    Timer timer;
    const ScenarioSpec spec = preset("public");
    const SolverOptions solver = SolverOptions::defaults();
    const std::vector<double> rates{0.0, 0.05, 0.1, 0.2, 0.249};

    io::CsvWriter csv({"preset", "model", "rate", "exponent", "expected"});
    csv.comment("acceptance: exponent-vs-rate line, public preset, correlated adversary");
    double worst = 0.0;
    for (double r : rates) {
        const double e = solve_exponent(spec, ChannelModel::Arbitrary, r, solver);
        const double expected = pos_part(kGStar - r);
        worst = std::max(worst, std::abs(e - expected));
        csv.row({"public", "cam", io::format_g17(r), io::format_g17(e),
                 io::format_g17(expected)});
    }
    const double secs = timer.seconds();
    const bool pass = worst <= 0.01 && secs < 600.0;
    return {{pass, fmt("max |exponent - |C-R|+| = %.5f over 5 rates (tol 0.01), %.0fs "
                       "(budget 600s)",
                       worst, secs)},
            csv.content()};
}

Outcome criterion_2() {
    const CsvOutcome r = run_c2();
    io::write_file("acceptance_c2.csv", r.csv);
    return r.outcome;
}

// ---------------------------------------------------------------------------
// Criterion 3: zero-rate exponents against their reference values.

CsvOutcome run_c3() {
    Timer timer;
    const SolverOptions solver = SolverOptions::defaults();
    struct Case {
        const char* preset_name;
        ChannelModel model;
        double expected;
    };
    const Case cases[] = {
        {"public", ChannelModel::Compound, kPubZeroCdmc},
        {"private", ChannelModel::Compound, kPrivZeroCdmc},
        {"private", ChannelModel::Arbitrary, kSharedZero},
    };

    io::CsvWriter csv({"preset", "model", "rate", "exponent", "expected"});
    csv.comment("acceptance: zero-rate exponents, both adversary models");
    double worst = 0.0;
    std::string parts;
    for (const Case& c : cases) {
        const double e =
            solve_exponent(preset(c.preset_name), c.model, 0.0, solver);
        worst = std::max(worst, std::abs(e - c.expected));
        csv.row({c.preset_name, channel_model_name(c.model), "0", io::format_g17(e),
                 io::format_g17(c.expected)});
        parts += fmt("%s%s/%s %.4f vs %.3f", parts.empty() ? "" : ", ", c.preset_name,
                     channel_model_name(c.model).c_str(), e, c.expected);
    }
    const double secs = timer.seconds();
    const bool pass = worst <= 0.01 && secs < 1800.0;
    return {{pass, fmt("%s; max dev %.5f (tol 0.01), %.0fs (budget 1800s)",
                       parts.c_str(), worst, secs)},
            csv.content()};
}

Outcome criterion_3() {
    const CsvOutcome r = run_c3();
    io::write_file("acceptance_c3.csv", r.csv);
    return r.outcome;
}

// ---------------------------------------------------------------------------
// Criterion 4: for both binary presets and five rates, the fixed-channel
// exponent never exceeds the correlated-adversary exponent (plus tolerance),
// and the correlated-adversary exponent never exceeds the capacity-gap line.

Outcome criterion_4() {
    Timer timer;
    const SolverOptions solver = SolverOptions::defaults();
    const std::vector<double> rates{0.0, 0.05, 0.1, 0.15, 0.2};
    double worst_order = -1.0; // max E_cdmc - E_cam
    double worst_line = -1.0;  // max E_cam - |C - R|+
    bool pass = true;
    for (const char* name : {"public", "private"}) {
        const ScenarioSpec spec = preset(name);
        const double cap = capacity_CL(spec, solver).value;
        for (double r : rates) {
            const double ec = solve_exponent(spec, ChannelModel::Compound, r, solver);
            const double ea = solve_exponent(spec, ChannelModel::Arbitrary, r, solver);
            worst_order = std::max(worst_order, ec - ea);
            worst_line = std::max(worst_line, ea - pos_part(cap - r));
            pass = pass && ec <= ea + 2e-3 && ea <= pos_part(cap - r) + 2e-3;
        }
    }
    return {pass, fmt("max(E_fixed - E_correlated) = %.2e, max(E_correlated - |C-R|+) "
                      "= %.2e (tol 2e-3), %.0fs",
                      worst_order, worst_line, timer.seconds())};
}

// ---------------------------------------------------------------------------
// Criterion 5: exponents are numerically zero just above capacity and clearly
// positive below it, for both presets and both adversary models.

Outcome criterion_5() {
    Timer timer;
    const SolverOptions solver = SolverOptions::defaults();
    bool pass = true;
    std::string parts;
    for (const char* name : {"public", "private"}) {
        const ScenarioSpec spec = preset(name);
        const double cap = capacity_CL(spec, solver).value;
        for (ChannelModel model : {ChannelModel::Compound, ChannelModel::Arbitrary}) {
            const double above =
                solve_exponent(spec, model, cap + 0.01, solver);
            const double below =
                solve_exponent(spec, model, cap - 0.03, solver);
            const bool ok_above = above <= 2e-3;
            const bool ok_below = below >= 5e-3;
            pass = pass && ok_above && ok_below;
            parts += fmt("%s%s/%s above=%.2e%s below=%.2e%s", parts.empty() ? "" : ", ",
                         name, channel_model_name(model).c_str(), above,
                         ok_above ? "" : "(!)", below, ok_below ? "" : "(!)");
        }
    }
    return {pass, fmt("capacity gates at C+0.01 (<=2e-3) and C-0.03 (>=5e-3): %s; %.0fs",
                      parts.c_str(), timer.seconds())};
}

// ---------------------------------------------------------------------------
// Criterion 6: a larger auxiliary alphabet cannot reduce the exponent; the
// L=3 solve is warm-started from the embedded L=2 witness so the comparison
// is conservative.

Outcome criterion_6() {
    Timer timer;
    const ScenarioSpec two = preset("public");
    const ScenarioSpec three = two.with_u_size(3);
    bool pass = true;
    std::string parts;
    for (double r : {0.0, 0.1}) {
        ExponentProblem p2;
        p2.spec = two;
        p2.model = ChannelModel::Compound;
        p2.rate = r;
        p2.solver = SolverOptions::defaults();
        const ExponentResult r2 = er_cdmc(p2);

        ExponentProblem p3 = p2;
        p3.spec = three;
        p3.solver.transmit_warm_starts = {
            embed_transmit(r2.transmit, two.se_size, two.x_size, 2, 3)};
        const ExponentResult r3 = er_cdmc(p3);

        pass = pass && r2.value <= r3.value + 2e-3;
        parts += fmt("%sR=%.1f: L2=%.5f L3=%.5f", parts.empty() ? "" : ", ", r,
                     r2.value, r3.value);
    }
    return {pass, fmt("%s (need L2 <= L3 + 2e-3), %.0fs", parts.c_str(),
                      timer.seconds())};
}

// ---------------------------------------------------------------------------
// Criteria 7-9 reuse the verification suites shared with the command-line
// tool, at their full acceptance budgets.

Outcome from_report(const checks::SuiteReport& report) {
    std::size_t failed = 0;
    std::string first;
    for (const checks::CheckLine& line : report.lines)
        if (!line.passed) {
            ++failed;
            if (first.empty()) first = line.label + ": " + line.detail;
        }
    if (failed == 0)
        return {true, fmt("%zu checks passed", report.lines.size())};
    return {false, fmt("%zu of %zu checks failed; first: %s", failed,
                       report.lines.size(), first.c_str())};
}

Outcome criterion_7() { return from_report(checks::check_type_counts(10, 3)); }
Outcome criterion_8() { return from_report(checks::check_union_bound(100000, 1)); }
Outcome criterion_9() { return from_report(checks::check_quantization(10000, 1)); }

// ---------------------------------------------------------------------------
// Criterion 10: the single-user exponent equals a brute-force grid
// minimization over hypothesis channels, and the compound solver collapses to
// it for a singleton class.

Outcome criterion_10() {
    Timer timer;
    const CondPmf bsc({2}, {2}, {0.9, 0.1, 0.1, 0.9});
    const std::vector<double> uniform{0.5, 0.5};

    auto term = [](double q, double w) {
        return q > 0.0 ? q * std::log2(q / w) : 0.0;
    };
    auto brute = [&](double rate) {
        double best = 1e300;
        for (int i = 0; i <= 1000; ++i) {
            const double v0 = i * 1e-3; // hypothesis crossover from input 0
            for (int j = 0; j <= 1000; ++j) {
                const double v1 = j * 1e-3; // and from input 1
                const double div = 0.5 * (term(1.0 - v0, 0.9) + term(v0, 0.1)) +
                                   0.5 * (term(v1, 0.1) + term(1.0 - v1, 0.9));
                const double m0 = 0.5 * (1.0 - v0) + 0.5 * v1; // output-0 mass
                const double m1 = 1.0 - m0;
                const double info = 0.5 * (term(1.0 - v0, m0) + term(v0, m1)) +
                                    0.5 * (term(v1, m0) + term(1.0 - v1, m1));
                best = std::min(best, div + pos_part(info - rate));
            }
        }
        return best;
    };

    bool pass = true;
    std::string parts;
    for (double r : {0.1, 0.2, 0.3}) {
        const double solver_value = dmc_exponent(r, uniform, bsc);
        const double grid_value = brute(r);
        pass = pass && std::abs(solver_value - grid_value) <= 2e-3;
        parts += fmt("%sR=%.1f: %.5f vs grid %.5f", parts.empty() ? "" : ", ", r,
                     solver_value, grid_value);
    }
    double singleton_dev = 0.0;
    for (double r : {0.1, 0.3})
        singleton_dev = std::max(
            singleton_dev, std::abs(compound_dmc_exponent(r, uniform, {bsc}) -
                                    dmc_exponent(r, uniform, bsc)));
    pass = pass && singleton_dev <= 1e-12;
    return {pass, fmt("%s (tol 2e-3); singleton-class deviation %.1e (tol 1e-12); %.0fs",
                      parts.c_str(), singleton_dev, timer.seconds())};
}

// ---------------------------------------------------------------------------
// Criterion 11: end-to-end simulator behavior.  Writes acceptance_c11.csv.

CsvOutcome run_c11() {
    Timer timer;
    io::CsvWriter csv({"n", "R", "trials", "p_e_hat", "stderr", "enc_err_rate",
                       "seed"});
    csv.comment("acceptance: stacked-binning simulator estimates");
    bool pass = true;
    std::string parts;

    auto add_row = [&](const SimConfig& cfg, const PeEstimate& pe) {
        csv.row({std::to_string(cfg.n), io::format_g17(cfg.rate),
                 std::to_string(pe.trials), io::format_g17(pe.p_e_hat),
                 io::format_g17(pe.std_error), io::format_g17(pe.encoding_error_rate),
                 std::to_string(cfg.seed)});
    };

    try {
        // (a) One message over a clean channel decodes perfectly.
        SimConfig clean;
        clean.spec = build_preset("degenerate", 0.2, 0.4, 0.0, 2);
        clean.n = 8;
        clean.rate = 0.0;
        clean.trials = 500;
        clean.seed = 9001;
        clean.attack = AttackModel::cdmc(identity_attack(clean.spec).p_y_given_xsa);
        const PeEstimate pe_clean = estimate_pe(clean);
        add_row(clean, pe_clean);
        const bool ok_a = pe_clean.p_e_hat == 0.0;
        pass = pass && ok_a;
        parts += fmt("noiseless p_e=%.3f%s", pe_clean.p_e_hat, ok_a ? "" : "(!)");

        // (b) Below capacity the error rate falls strictly with blocklength.
        std::vector<double> pe_by_n;
        for (int n : {10, 14, 18}) {
            SimConfig cfg;
            cfg.spec = preset("public");
            cfg.n = n;
            cfg.rate = 0.05;
            cfg.trials = 10000;
            cfg.seed = 9000 + static_cast<std::uint64_t>(n);
            const PeEstimate pe = estimate_pe(cfg);
            add_row(cfg, pe);
            pe_by_n.push_back(pe.p_e_hat);
        }
        const bool ok_b = pe_by_n[0] > pe_by_n[1] && pe_by_n[1] > pe_by_n[2];
        pass = pass && ok_b;
        parts += fmt("; p_e(n=10,14,18)=%.4f>%.4f>%.4f%s", pe_by_n[0], pe_by_n[1],
                     pe_by_n[2], ok_b ? "" : "(!)");

        // (c) Far above capacity the decoder fails often.
        SimConfig hot;
        hot.spec = preset("public");
        hot.n = 16;
        hot.rate = 0.5;
        hot.trials = 1000;
        hot.seed = 9501;
        const PeEstimate pe_hot = estimate_pe(hot);
        add_row(hot, pe_hot);
        const bool ok_c = pe_hot.p_e_hat >= 0.3;
        pass = pass && ok_c;
        parts += fmt("; above-capacity p_e=%.3f%s", pe_hot.p_e_hat, ok_c ? "" : "(!)");

        // (d)+(e) Every constrained-adversary trial satisfies the distortion
        // budget exactly, and the encoder never violates composition or cost.
        const ScenarioSpec spec = preset("public");
        const int n = 12;
        const CodebookPlan plan =
            plan_codebook(spec, n, 0.05, 0.05, SolverOptions::fast());
        RngStream rng(9701);
        const CodebookStack stack = draw_codebook(plan, rng);
        const AttackModel margin =
            AttackModel::cam(make_margin_minimizing_lambda(spec, plan));
        const AttackModel flips = AttackModel::cam(make_flip_lambda(spec));
        int violations = 0, breaches = 0, trials_run = 0;
        for (const AttackModel* model : {&margin, &flips}) {
            for (int t = 0; t < 1000; ++t) {
                std::vector<int> s_e(static_cast<std::size_t>(n));
                for (int& v : s_e) v = rng.uniform() < 0.2 ? 1 : 0;
                const std::uint64_t m = rng.below(plan.message_count);
                const EncodeResult enc = encode(stack, s_e, m, rng);
                const std::size_t k = enc.entry;

                // (e) constant composition and maximum cost, rechecked here.
                double cost = 0.0;
                bool comp_ok = true;
                for (int u = 0; u < 2; ++u)
                    for (int se = 0; se < 2; ++se)
                        for (int x = 0; x < 2; ++x) {
                            int cnt = 0;
                            for (int i = 0; i < n; ++i)
                                cnt += (enc.u[static_cast<std::size_t>(i)] == u &&
                                        s_e[static_cast<std::size_t>(i)] == se &&
                                        enc.x[static_cast<std::size_t>(i)] == x);
                            comp_ok = comp_ok &&
                                      cnt == plan.entries[k].x_given_use.at(u * 2 + se, x);
                            cost += cnt * spec.cost_at(se, x);
                        }
                if (!comp_ok || cost / n > spec.D1 + 1e-9) ++breaches;

                // (d) the hard distortion constraint, per trial.
                const std::vector<int> sa(static_cast<std::size_t>(n), 0);
                try {
                    const std::vector<int> y = attack(spec, *model, enc.x, sa, rng);
                    double dist = 0.0;
                    for (int i = 0; i < n; ++i)
                        dist += spec.distortion_at(enc.x[static_cast<std::size_t>(i)],
                                                   y[static_cast<std::size_t>(i)]);
                    if (dist / n > spec.D2 + 1e-9) ++violations;
                    const std::vector<int> s_d(static_cast<std::size_t>(n), 0);
                    (void)mpmi_decode(stack, y, s_d);
                } catch (const SolverError&) {
                    ++violations; // the sampler refused its own attack map
                }
                ++trials_run;
            }
        }
        const bool ok_d = violations == 0;
        const bool ok_e = breaches == 0;
        pass = pass && ok_d && ok_e;
        parts += fmt("; constrained attack: %d/%d in-budget%s; encoder breaches %d%s",
                     trials_run - violations, trials_run, ok_d ? "" : "(!)", breaches,
                     ok_e ? "" : "(!)");
    } catch (const SolverError& e) {
        // Internal coder invariants surface as solver errors; none may fire.
        return {{false, fmt("solver invariant fired: %s", e.what())}, csv.content()};
    }

    const double secs = timer.seconds();
    pass = pass && secs < 1200.0;
    return {{pass, fmt("%s; %.0fs (budget 1200s)", parts.c_str(), secs)}, csv.content()};
}

Outcome criterion_11() {
    const CsvOutcome r = run_c11();
    io::write_file("acceptance_c11.csv", r.csv);
    return r.outcome;
}

// ---------------------------------------------------------------------------
// Criterion 12: re-running the CSV-producing criteria with the same seeds
// reproduces their result tables byte for byte.  When a table from a previous
// criterion run is on disk it serves as the reference; otherwise the run is
// repeated from scratch.

Outcome criterion_12() {
    Timer timer;
    struct Piece {
        const char* label;
        const char* path;
        std::function<std::string()> produce;
    };
    const Piece pieces[] = {
        {"exponent-line", "acceptance_c2.csv", [] { return run_c2().csv; }},
        {"zero-rate", "acceptance_c3.csv", [] { return run_c3().csv; }},
        {"simulator", "acceptance_c11.csv", [] { return run_c11().csv; }},
    };
    bool pass = true;
    std::string parts;
    for (const Piece& piece : pieces) {
        const std::string fresh = piece.produce();
        std::string reference;
        const char* source = "file";
        if (std::filesystem::exists(piece.path)) {
            reference = io::read_file(piece.path);
        } else {
            reference = piece.produce();
            source = "rerun";
        }
        const bool same = fresh == reference;
        pass = pass && same;
        parts += fmt("%s%s %s vs %s", parts.empty() ? "" : ", ", piece.label,
                     same ? "identical" : "DIFFERS", source);
    }
    return {pass, fmt("%s; %.0fs", parts.c_str(), timer.seconds())};
}

// ---------------------------------------------------------------------------

struct Criterion {
    const char* title;
    std::function<Outcome()> run;
};

const std::map<int, Criterion>& criteria() {
    static const std::map<int, Criterion> table = {
        {1, {"closed-form capacities match frozen oracle values", criterion_1}},
        {2,
         {"public-preset correlated-adversary exponents follow the capacity-gap line",
          criterion_2}},
        {3, {"zero-rate exponents match their reference values", criterion_3}},
        {4, {"fixed-channel <= correlated <= capacity-gap ordering holds across rates",
             criterion_4}},
        {5, {"exponents vanish above capacity and stay positive below it",
             criterion_5}},
        {6, {"enlarging the auxiliary alphabet never hurts the exponent",
             criterion_6}},
        {7, {"type-class counts obey the entropy sandwich and sum exactly",
             criterion_7}},
        {8, {"the union-with-cap bound holds across fuzzed inputs", criterion_8}},
        {9, {"discretization and quantization meet their per-row guarantees",
             criterion_9}},
        {10, {"single-user exponent agrees with a brute-force grid and the "
              "singleton compound reduction",
              criterion_10}},
        {11, {"stacked-binning simulator behaves correctly end to end",
              criterion_11}},
        {12, {"repeated runs reproduce identical result tables", criterion_12}},
    };
    return table;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        try {
            selected.push_back(std::stoi(argv[i]));
        } catch (const std::exception&) {
            std::fprintf(stderr, "unrecognized criterion id: %s\n", argv[i]);
            return 2;
        }
    }
    if (selected.empty())
        for (const auto& [id, c] : criteria()) selected.push_back(id);

    bool all_pass = true;
    for (int id : selected) {
        const auto it = criteria().find(id);
        if (it == criteria().end()) {
            std::fprintf(stderr, "unknown criterion id: %d\n", id);
            return 2;
        }
        Outcome outcome;
        try {
            outcome = it->second.run();
        } catch (const std::exception& e) {
            outcome = {false, fmt("exception: %s", e.what())};
        }
        std::printf("CRITERION %d: %s - %s (%s)\n", id, outcome.pass ? "PASS" : "FAIL",
                    it->second.title, outcome.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && outcome.pass;
    }
    return all_pass ? 0 : 1;
}
