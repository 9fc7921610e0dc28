// Batch front-end: scenario loading, capacity/exponent/sweep/simulate/verify
// subcommands, deterministic CSV emission and JSON run manifests.
//
// Exit codes: 0 success, 1 verification/solver failure, 2 configuration
// error, 3 budget exceeded.
//
// Precedence: command line flags are merged with an optional JSON config
// file; the config file overrides flags only when --config is the last
// option on the command line, otherwise explicit flags win.  A run manifest
// is itself a valid --config input, which replays the run bit-identically.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpexp/binning.hpp"
#include "gpexp/cardinality.hpp"
#include "gpexp/checks.hpp"
#include "gpexp/errors.hpp"
#include "gpexp/exponents.hpp"
#include "gpexp/io.hpp"
#include "gpexp/scenario.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

double wall_seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        if (item.empty()) throw gpexp::ConfigError("empty item in numeric list '" + text + "'");
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == nullptr || *end != '\0')
            throw gpexp::ConfigError("cannot parse '" + item + "' as a number");
        out.push_back(v);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    if (out.empty()) throw gpexp::ConfigError("empty numeric list");
    return out;
}

std::vector<int> to_int_list(const std::vector<double>& vals, const char* what) {
    std::vector<int> out;
    for (double v : vals) {
        const int i = static_cast<int>(std::llround(v));
        if (std::abs(v - i) > 1e-9 || i < 0)
            throw gpexp::ConfigError(std::string(what) + " must be nonnegative integers");
        out.push_back(i);
    }
    return out;
}

// Merges one config-file/flag/default triple per key and records the resolved
// value, so the manifest captures the full effective configuration.
struct Resolver {
    json cfg = json::object();
    bool config_wins = false;
    json resolved = json::object();

    bool has_cfg(const std::string& key) const { return cfg.contains(key); }

    template <class T>
    T get(const std::string& key, bool flag_set, const T& flag_value, const T& fallback) {
        T out = fallback;
        try {
            if (config_wins && cfg.contains(key)) out = cfg.at(key).get<T>();
            else if (flag_set) out = flag_value;
            else if (cfg.contains(key)) out = cfg.at(key).get<T>();
        } catch (const json::exception& e) {
            throw gpexp::ConfigError("config key '" + key + "': " + e.what());
        }
        resolved[key] = out;
        return out;
    }

    std::vector<double> get_list(const std::string& key, bool flag_set,
                                 const std::string& flag_text,
                                 const std::vector<double>& fallback) {
        std::vector<double> out = fallback;
        try {
            if (config_wins && cfg.contains(key)) out = cfg.at(key).get<std::vector<double>>();
            else if (flag_set) out = parse_double_list(flag_text);
            else if (cfg.contains(key)) out = cfg.at(key).get<std::vector<double>>();
        } catch (const json::exception& e) {
            throw gpexp::ConfigError("config key '" + key + "': " + e.what());
        }
        resolved[key] = out;
        return out;
    }
};

// Raw flag storage; presence is tracked through CLI11 option counts.
struct Flags {
    std::string preset;
    double p_e = 0.0, d1 = 0.0, d2 = 0.0, rate = 0.0, epsilon = 0.0;
    int l = 0;
    std::string rates, ns;
    std::string model, attack, config_path, out;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    bool fast = false;

    CLI::Option *preset_o = nullptr, *p_e_o = nullptr, *d1_o = nullptr, *d2_o = nullptr,
                *rate_o = nullptr, *epsilon_o = nullptr, *l_o = nullptr, *rates_o = nullptr,
                *ns_o = nullptr, *model_o = nullptr, *attack_o = nullptr, *out_o = nullptr,
                *seed_o = nullptr, *trials_o = nullptr, *fast_o = nullptr;

    void attach(CLI::App* sub, bool with_sim_flags) {
        preset_o = sub->add_option("--preset", preset,
                                   "Scenario preset (public, private, semiblind, "
                                   "gelfand_pinsker, cover_chiang, degenerate)");
        p_e_o = sub->add_option("--p-e", p_e, "Preset state/channel parameter (default 0.2)");
        d1_o = sub->add_option("--D1", d1, "Transmit cost budget");
        d2_o = sub->add_option("--D2", d2, "Attack distortion budget");
        l_o = sub->add_option("--L", l, "Auxiliary alphabet size");
        rate_o = sub->add_option("--rate", rate, "Code rate in bits");
        rates_o = sub->add_option("--rates", rates, "Comma-separated rate list");
        model_o = sub->add_option("--model", model, "Adversary model: cdmc or cam");
        seed_o = sub->add_option("--seed", seed, "Deterministic seed");
        fast_o = sub->add_flag("--fast", fast, "Reduced solver budgets");
        out_o = sub->add_option("--out", out, "Output CSV path");
        sub->add_option("--config", config_path,
                        "JSON config file (or a run manifest to replay); overrides "
                        "flags only when it is the last option");
        if (with_sim_flags) {
            trials_o = sub->add_option("--trials", trials, "Monte-Carlo trial count");
            ns_o = sub->add_option("--n", ns, "Blocklength, or comma-separated list");
            epsilon_o = sub->add_option("--epsilon", epsilon, "Codebook depth margin");
            attack_o = sub->add_option("--attack", attack,
                                       "Attack realisation: planned, identity, flip, margin");
        }
    }
};

bool flag_set(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

// True when --config appears after every other option token on the raw
// command line (the "config file wins" position).
bool config_is_last(int argc, char** argv) {
    int config_idx = -1;
    int last_other = -1;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a.rfind("--config", 0) == 0) config_idx = i;
        else if (!a.empty() && a[0] == '-') last_other = i;
    }
    return config_idx >= 0 && config_idx > last_other;
}

json load_config(const std::string& path, const std::string& subcommand) {
    json doc;
    try {
        doc = json::parse(gpexp::io::read_file(path));
    } catch (const json::exception& e) {
        throw gpexp::ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw gpexp::ConfigError("config '" + path + "' must be a JSON object");
    if (doc.contains("config") && doc.contains("subcommand")) {
        // A run manifest: replay its stored configuration.
        const std::string stored = doc.at("subcommand").get<std::string>();
        if (stored != subcommand)
            throw gpexp::ConfigError("manifest '" + path + "' is for subcommand '" + stored +
                                     "', not '" + subcommand + "'");
        return doc.at("config");
    }
    return doc;
}

gpexp::ScenarioSpec scenario_from_json(const json& sc) {
    gpexp::ScenarioSpec spec;
    spec.preset = gpexp::Preset::Custom;
    try {
        spec.se_size = sc.at("se_size").get<int>();
        spec.sa_size = sc.at("sa_size").get<int>();
        spec.sd_size = sc.at("sd_size").get<int>();
        spec.x_size = sc.at("x_size").get<int>();
        spec.y_size = sc.at("y_size").get<int>();
        spec.u_size = sc.at("u_size").get<int>();
        spec.D1 = sc.at("D1").get<double>();
        spec.D2 = sc.at("D2").get<double>();
        spec.state_pmf = gpexp::JointPmf::normalized(
            {spec.se_size, spec.sa_size, spec.sd_size},
            sc.at("state_pmf").get<std::vector<double>>(),
            {gpexp::Role::EncoderState, gpexp::Role::AdversaryState,
             gpexp::Role::DecoderState});
        spec.cost = sc.at("cost").get<std::vector<double>>();
        spec.distortion = sc.at("distortion").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw gpexp::ConfigError(std::string("custom scenario: ") + e.what());
    }
    spec.validate();
    return spec;
}

struct ResolvedScenario {
    gpexp::ScenarioSpec spec;
    std::string preset_name;
    double d1 = 0.0, d2 = 0.0, p_e = 0.0;
    int l = 2;
};

ResolvedScenario resolve_scenario(Resolver& r, const Flags& f) {
    ResolvedScenario out;
    out.preset_name = r.get<std::string>("preset", flag_set(f.preset_o), f.preset, "public");
    out.p_e = r.get<double>("p_e", flag_set(f.p_e_o), f.p_e, 0.2);
    out.d1 = r.get<double>("D1", flag_set(f.d1_o), f.d1, 0.4);
    out.d2 = r.get<double>("D2", flag_set(f.d2_o), f.d2, 0.2);
    out.l = r.get<int>("L", flag_set(f.l_o), f.l, 2);
    const bool use_custom = r.has_cfg("scenario") &&
                            (r.config_wins || !flag_set(f.preset_o));
    if (use_custom) {
        out.spec = scenario_from_json(r.cfg.at("scenario"));
        r.resolved["scenario"] = r.cfg.at("scenario");
        r.resolved["preset"] = "custom";
        out.preset_name = "custom";
    } else {
        out.spec = gpexp::build_preset(out.preset_name, out.p_e, out.d1, out.d2, out.l);
    }
    return out;
}

gpexp::SolverOptions resolve_solver(Resolver& r, const Flags& f, bool default_fast) {
    const bool fast = r.get<bool>("fast", flag_set(f.fast_o), f.fast, default_fast);
    auto opts = fast ? gpexp::SolverOptions::fast() : gpexp::SolverOptions::defaults();
    opts.seed = r.get<std::uint64_t>("seed", flag_set(f.seed_o), f.seed, 1);
    return opts;
}

void finish_run(const std::string& subcommand, Resolver& r, const std::string& out_path,
                gpexp::io::CsvWriter& csv, std::uint64_t seed,
                std::chrono::steady_clock::time_point t0) {
    gpexp::io::RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.config_json = r.resolved.dump(2) + "\n";
    manifest.seed = seed;
    manifest.version = kVersion;

    csv.comment("gpexp " + subcommand + " v" + kVersion);
    // The CSV carries the digest of the resolved configuration so every plot
    // is traceable to the manifest that can replay it.
    csv.comment("config sha256: " + manifest.config_digest());
    const std::string digest = csv.save(out_path);
    manifest.output_digests.emplace_back(out_path, digest);
    manifest.wall_time_seconds = wall_seconds_since(t0);
    const std::string manifest_path = out_path + ".manifest.json";
    manifest.save(manifest_path);
    std::printf("wrote %s (sha256 %s...)\nwrote %s\n", out_path.c_str(),
                digest.substr(0, 12).c_str(), manifest_path.c_str());
}

double closed_form_capacity(const std::string& preset, double d1, double d2) {
    if (preset == "public" || preset == "semiblind" || preset == "degenerate")
        return gpexp::g_star(d1, d2);
    if (preset == "private") return gpexp::c_priv(d1, d2);
    return std::nan("");
}

int run_capacity(Resolver& r, const Flags& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto scen = resolve_scenario(r, f);
    auto solver = resolve_solver(r, f, false);

    std::vector<std::string> presets{scen.preset_name};
    if (r.has_cfg("presets"))
        presets = r.cfg.at("presets").get<std::vector<std::string>>();
    r.resolved["presets"] = presets;

    std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5};
    if (flag_set(f.d1_o) && !r.config_wins) grid = {scen.d1};
    grid = r.get_list("d1_grid", false, "", grid);

    const std::string out_path = r.get<std::string>("out", flag_set(f.out_o), f.out,
                                                    "gpexp-capacity.csv");

    gpexp::io::CsvWriter csv({"preset", "D1", "D2", "L", "capacity", "closed_form"});
    for (const auto& name : presets) {
        for (double d1 : grid) {
            gpexp::ScenarioSpec spec =
                (name == "custom") ? scen.spec
                                   : gpexp::build_preset(name, scen.p_e, d1, scen.d2, scen.l);
            const auto cap = gpexp::capacity_CL(spec, solver);
            const double closed = closed_form_capacity(name, d1, scen.d2);
            csv.row({name, gpexp::io::format_g17(d1), gpexp::io::format_g17(scen.d2),
                     std::to_string(scen.l), gpexp::io::format_g17(cap.value),
                     gpexp::io::format_g17(closed)});
            std::printf("capacity %s D1=%.3f D2=%.3f L=%d: %.6f (closed form %.6f)\n",
                        name.c_str(), d1, scen.d2, scen.l, cap.value, closed);
        }
    }
    finish_run("capacity", r, out_path, csv, solver.seed, t0);
    return 0;
}

int run_exponent(Resolver& r, const Flags& f, bool sweep) {
    const auto t0 = std::chrono::steady_clock::now();
    auto scen = resolve_scenario(r, f);
    auto solver = resolve_solver(r, f, false);
    const std::string model_name =
        r.get<std::string>("model", flag_set(f.model_o), f.model, "cdmc");

    gpexp::ExponentProblem prob;
    prob.spec = scen.spec;
    prob.model = gpexp::channel_model_from_name(model_name);
    prob.solver = solver;

    const std::string out_path =
        r.get<std::string>("out", flag_set(f.out_o), f.out,
                           sweep ? "gpexp-sweep.csv" : "gpexp-exponent.csv");

    if (!sweep) {
        prob.rate = r.get<double>("rate", flag_set(f.rate_o), f.rate, 0.0);
        const auto res = (prob.model == gpexp::ChannelModel::Compound) ? gpexp::er_cdmc(prob)
                                                                       : gpexp::er_cam(prob);
        gpexp::io::CsvWriter csv({"preset", "model", "D1", "D2", "L", "rate", "exponent"});
        csv.row({scen.preset_name, model_name, gpexp::io::format_g17(scen.d1),
                 gpexp::io::format_g17(scen.d2), std::to_string(scen.l),
                 gpexp::io::format_g17(prob.rate), gpexp::io::format_g17(res.value)});
        std::printf("exponent %s %s R=%.4f: %.6f\n", scen.preset_name.c_str(),
                    model_name.c_str(), prob.rate, res.value);
        finish_run("exponent", r, out_path, csv, solver.seed, t0);
        return 0;
    }

    const auto rates = r.get_list("rates", flag_set(f.rates_o), f.rates,
                                  {0.0, 0.05, 0.1, 0.15, 0.2});
    const auto rows = gpexp::sweep_rates(prob, rates);
    gpexp::io::CsvWriter csv(
        {"preset", "model", "D1", "D2", "L", "rate", "exponent", "capacity"});
    for (const auto& row : rows) {
        csv.row({scen.preset_name, model_name, gpexp::io::format_g17(scen.d1),
                 gpexp::io::format_g17(scen.d2), std::to_string(scen.l),
                 gpexp::io::format_g17(row.rate), gpexp::io::format_g17(row.exponent),
                 gpexp::io::format_g17(row.capacity)});
        std::printf("sweep %s %s R=%.4f: E=%.6f (C=%.6f)\n", scen.preset_name.c_str(),
                    model_name.c_str(), row.rate, row.exponent, row.capacity);
    }
    finish_run("sweep", r, out_path, csv, solver.seed, t0);
    return 0;
}

int run_simulate(Resolver& r, const Flags& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto scen = resolve_scenario(r, f);

    gpexp::SimConfig cfg;
    cfg.spec = scen.spec;
    cfg.rate = r.get<double>("rate", flag_set(f.rate_o), f.rate, 0.05);
    cfg.epsilon = r.get<double>("epsilon", flag_set(f.epsilon_o), f.epsilon, 0.05);
    cfg.trials = static_cast<std::uint64_t>(
        r.get<std::int64_t>("trials", flag_set(f.trials_o), f.trials, 1000));
    cfg.seed = r.get<std::uint64_t>("seed", flag_set(f.seed_o), f.seed, 1);
    cfg.fresh_codebook_per_trial = r.get<bool>("fresh_codebook", false, true, true);
    cfg.minimax_plan = r.get<bool>("minimax_plan", false, false, false);
    cfg.codebook_budget = r.get<std::uint64_t>("codebook_budget", false, 0,
                                               gpexp::kDefaultCodebookBudget);
    const bool fast = r.get<bool>("fast", flag_set(f.fast_o), f.fast, true);
    cfg.plan_solver = fast ? gpexp::SolverOptions::fast() : gpexp::SolverOptions::defaults();
    cfg.plan_solver.seed = cfg.seed;

    const std::string model_name =
        r.get<std::string>("model", flag_set(f.model_o), f.model, "cdmc");
    const std::string attack_name =
        r.get<std::string>("attack", flag_set(f.attack_o), f.attack,
                           model_name == "cam" ? "margin" : "planned");

    const auto n_list = to_int_list(
        r.get_list("n", flag_set(f.ns_o), f.ns, {12}), "blocklengths");

    const std::string out_path = r.get<std::string>("out", flag_set(f.out_o), f.out,
                                                    "gpexp-simulate.csv");

    gpexp::io::CsvWriter csv(
        {"n", "R", "trials", "p_e_hat", "stderr", "enc_err_rate", "seed"});
    for (int n : n_list) {
        cfg.n = n;
        if (model_name == "cdmc") {
            if (attack_name == "identity")
                cfg.attack = gpexp::AttackModel::cdmc(
                    gpexp::identity_attack(cfg.spec).p_y_given_xsa);
            else if (attack_name == "planned")
                cfg.attack = gpexp::AttackModel{};  // planned worst channel
            else
                throw gpexp::ConfigError("cdmc attack must be 'planned' or 'identity'");
        } else if (model_name == "cam") {
            if (attack_name == "flip")
                cfg.attack = gpexp::AttackModel::cam(gpexp::make_flip_lambda(cfg.spec));
            else if (attack_name == "margin") {
                const auto plan =
                    gpexp::plan_codebook(cfg.spec, cfg.n, cfg.rate, cfg.epsilon,
                                         cfg.plan_solver, cfg.codebook_budget,
                                         cfg.minimax_plan);
                cfg.attack = gpexp::AttackModel::cam(
                    gpexp::make_margin_minimizing_lambda(cfg.spec, plan));
            } else
                throw gpexp::ConfigError("cam attack must be 'flip' or 'margin'");
        } else {
            throw gpexp::ConfigError("model must be 'cdmc' or 'cam'");
        }
        const auto pe = gpexp::estimate_pe(cfg);
        csv.row_values({static_cast<double>(n), cfg.rate,
                        static_cast<double>(pe.trials), pe.p_e_hat, pe.std_error,
                        pe.encoding_error_rate, static_cast<double>(cfg.seed)});
        std::printf("simulate n=%d R=%.4f %s/%s: p_e=%.5f +- %.5f (enc err %.5f)\n", n,
                    cfg.rate, model_name.c_str(), attack_name.c_str(), pe.p_e_hat,
                    pe.std_error, pe.encoding_error_rate);
    }
    finish_run("simulate", r, out_path, csv, cfg.seed, t0);
    return 0;
}

int run_verify(Resolver& r, const Flags& f, const std::string& suite) {
    const auto t0 = std::chrono::steady_clock::now();
    r.resolved["suite"] = suite;
    const auto seed = r.get<std::uint64_t>("seed", flag_set(f.seed_o), f.seed, 1);
    const auto trials =
        static_cast<std::uint64_t>(r.get<std::int64_t>("trials", flag_set(f.trials_o),
                                                        f.trials, 0));

    std::vector<gpexp::checks::SuiteReport> reports;
    const bool all = suite == "all";
    if (all || suite == "inequality")
        reports.push_back(gpexp::checks::check_union_bound(trials ? trials : 100000, seed));
    if (all || suite == "types") reports.push_back(gpexp::checks::check_type_counts(10, 3));
    if (all || suite == "quantization")
        reports.push_back(gpexp::checks::check_quantization(trials ? trials : 10000, seed));
    if (all || suite == "lemmas" || suite == "ordering") {
        auto scen = resolve_scenario(r, f);
        auto solver = resolve_solver(r, f, true);
        if (all || suite == "lemmas")
            reports.push_back(gpexp::checks::check_lemma_boundaries(scen.spec, solver));
        if (all || suite == "ordering")
            reports.push_back(gpexp::checks::check_ordering(scen.spec, solver, 0.1));
    }
    if (reports.empty())
        throw gpexp::ConfigError(
            "unknown verify suite '" + suite +
            "' (expected inequality, types, quantization, lemmas, ordering, or all)");

    const std::string out_path = r.get<std::string>("out", flag_set(f.out_o), f.out,
                                                    "gpexp-verify.csv");
    gpexp::io::CsvWriter csv({"suite", "check", "result", "detail"});
    bool all_passed = true;
    for (const auto& rep : reports) {
        for (const auto& line : rep.lines) {
            all_passed = all_passed && line.passed;
            csv.row({rep.suite, line.label, line.passed ? "PASS" : "FAIL", line.detail});
            std::printf("[%-12s] %s  %s  (%s)\n", rep.suite.c_str(),
                        line.passed ? "PASS" : "FAIL", line.label.c_str(),
                        line.detail.c_str());
        }
    }
    finish_run("verify", r, out_path, csv, seed, t0);
    std::printf("verify: %s\n", all_passed ? "all checks passed" : "FAILURES present");
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical capacity, error exponents and Monte-Carlo simulation "
                 "for channel coding with side information against "
                 "distortion-constrained adversaries"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Flags cap_f, exp_f, sweep_f, sim_f, ver_f;
    auto* cap = app.add_subcommand("capacity", "Worst-case achievable rate over a D1 grid");
    cap_f.attach(cap, false);
    auto* expo = app.add_subcommand("exponent", "Random-coding exponent at one rate");
    exp_f.attach(expo, false);
    auto* sweep = app.add_subcommand("sweep", "Random-coding exponent over a rate grid");
    sweep_f.attach(sweep, false);
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo stacked-binning simulation");
    sim_f.attach(sim, true);
    auto* ver = app.add_subcommand("verify", "Property-check suites");
    std::string suite = "all";
    ver->add_option("suite", suite,
                    "inequality | types | quantization | lemmas | ordering | all");
    ver_f.attach(ver, false);
    ver_f.trials_o = ver->add_option("--trials", ver_f.trials, "Fuzz trial count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto dispatch = [&](const Flags& f) {
            Resolver r;
            if (!f.config_path.empty()) {
                r.cfg = load_config(f.config_path, app.get_subcommands().front()->get_name());
                r.config_wins = config_is_last(argc, argv);
            }
            return r;
        };
        if (cap->parsed()) {
            Resolver r = dispatch(cap_f);
            return run_capacity(r, cap_f);
        }
        if (expo->parsed()) {
            Resolver r = dispatch(exp_f);
            return run_exponent(r, exp_f, false);
        }
        if (sweep->parsed()) {
            Resolver r = dispatch(sweep_f);
            return run_exponent(r, sweep_f, true);
        }
        if (sim->parsed()) {
            Resolver r = dispatch(sim_f);
            return run_simulate(r, sim_f);
        }
        if (ver->parsed()) {
            Resolver r = dispatch(ver_f);
            return run_verify(r, ver_f, suite);
        }
        throw gpexp::ConfigError("no subcommand selected");
    } catch (const gpexp::BudgetError& e) {
        std::fprintf(stderr, "budget error: %s\n", e.what());
        return 3;
    } catch (const gpexp::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const gpexp::SolverError& e) {
        std::fprintf(stderr, "verification failure: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
