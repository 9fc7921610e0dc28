// Python bindings for the main operations: scenario construction, capacity,
// random-coding exponents, closed forms, auxiliary-alphabet bounds, and the
// Monte-Carlo simulator.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpexp/binning.hpp"
#include "gpexp/cardinality.hpp"
#include "gpexp/errors.hpp"
#include "gpexp/exponents.hpp"
#include "gpexp/scenario.hpp"

namespace py = pybind11;
using namespace gpexp;

namespace {

SolverOptions make_solver(bool fast, std::uint64_t seed) {
    auto opts = fast ? SolverOptions::fast() : SolverOptions::defaults();
    opts.seed = seed;
    return opts;
}

ExponentProblem make_problem(const ScenarioSpec& spec, const std::string& model,
                             double rate, bool fast, std::uint64_t seed) {
    ExponentProblem prob;
    prob.spec = spec;
    prob.model = channel_model_from_name(model);
    prob.rate = rate;
    prob.solver = make_solver(fast, seed);
    return prob;
}

}  // namespace

PYBIND11_MODULE(_gpexp, m) {
    m.doc() = "Capacity and random-coding error exponents for channel coding "
              "with side information against distortion-constrained adversaries";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

    py::class_<ScenarioSpec>(m, "Scenario")
        .def_readonly("se_size", &ScenarioSpec::se_size)
        .def_readonly("sa_size", &ScenarioSpec::sa_size)
        .def_readonly("sd_size", &ScenarioSpec::sd_size)
        .def_readonly("x_size", &ScenarioSpec::x_size)
        .def_readonly("y_size", &ScenarioSpec::y_size)
        .def_readonly("u_size", &ScenarioSpec::u_size)
        .def_readonly("D1", &ScenarioSpec::D1)
        .def_readonly("D2", &ScenarioSpec::D2)
        .def("with_u_size", &ScenarioSpec::with_u_size, py::arg("L"))
        .def("__repr__", [](const ScenarioSpec& s) {
            return "Scenario(preset=" + preset_name(s.preset) +
                   ", |Se|=" + std::to_string(s.se_size) +
                   ", |Sa|=" + std::to_string(s.sa_size) +
                   ", |Sd|=" + std::to_string(s.sd_size) +
                   ", |X|=" + std::to_string(s.x_size) +
                   ", |Y|=" + std::to_string(s.y_size) +
                   ", L=" + std::to_string(s.u_size) + ")";
        });

    m.def("build_preset", py::overload_cast<const std::string&, double, double, double, int>(
                              &build_preset),
          py::arg("name"), py::arg("p_e") = 0.2, py::arg("D1") = 0.4, py::arg("D2") = 0.2,
          py::arg("L") = 2,
          "Build a named binary-Hamming scenario preset");

    m.def("g_star", &g_star, py::arg("d1"), py::arg("d2"),
          "Closed-form public/degenerate capacity");
    m.def("c_priv", &c_priv, py::arg("d1"), py::arg("d2"),
          "Closed-form private capacity");
    m.def("er_cam_pub_closed", &er_cam_pub_closed, py::arg("rate"), py::arg("d1"),
          py::arg("d2"), "Closed-form public zero-margin exponent line");
    m.def("binary_entropy", &binary_entropy, py::arg("t"));

    m.def(
        "capacity",
        [](const ScenarioSpec& spec, bool fast, std::uint64_t seed) {
            CapacityResult res;
            {
                py::gil_scoped_release release;
                res = capacity_CL(spec, make_solver(fast, seed));
            }
            py::dict out;
            out["value"] = res.value;
            out["restart_values"] = res.restart_values;
            return out;
        },
        py::arg("scenario"), py::arg("fast") = false, py::arg("seed") = 1,
        "Worst-case achievable rate");

    m.def(
        "exponent",
        [](const ScenarioSpec& spec, const std::string& model, double rate, bool fast,
           std::uint64_t seed) {
            ExponentResult res;
            {
                py::gil_scoped_release release;
                const auto prob = make_problem(spec, model, rate, fast, seed);
                res = (prob.model == ChannelModel::Compound) ? er_cdmc(prob) : er_cam(prob);
            }
            return res.value;
        },
        py::arg("scenario"), py::arg("model"), py::arg("rate"), py::arg("fast") = false,
        py::arg("seed") = 1, "Random-coding error exponent ('cdmc' or 'cam')");

    m.def(
        "sweep",
        [](const ScenarioSpec& spec, const std::string& model,
           const std::vector<double>& rates, bool fast, std::uint64_t seed) {
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = sweep_rates(make_problem(spec, model, 0.0, fast, seed), rates);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["rate"] = r.rate;
                d["exponent"] = r.exponent;
                d["capacity"] = r.capacity;
                out.append(d);
            }
            return out;
        },
        py::arg("scenario"), py::arg("model"), py::arg("rates"), py::arg("fast") = false,
        py::arg("seed") = 1, "Exponent over a rate grid");

    m.def(
        "simulate",
        [](const ScenarioSpec& spec, int n, double rate, std::uint64_t trials,
           std::uint64_t seed, double epsilon, const std::string& attack,
           bool fresh_codebook) {
            SimConfig cfg;
            cfg.spec = spec;
            cfg.n = n;
            cfg.rate = rate;
            cfg.trials = trials;
            cfg.seed = seed;
            cfg.epsilon = epsilon;
            cfg.fresh_codebook_per_trial = fresh_codebook;
            PeEstimate pe;
            {
                py::gil_scoped_release release;
                if (attack == "flip") {
                    cfg.attack = AttackModel::cam(make_flip_lambda(spec));
                } else if (attack == "margin") {
                    const auto plan = plan_codebook(spec, n, rate, epsilon, cfg.plan_solver,
                                                    cfg.codebook_budget, cfg.minimax_plan);
                    cfg.attack = AttackModel::cam(make_margin_minimizing_lambda(spec, plan));
                } else if (attack == "identity") {
                    cfg.attack = AttackModel::cdmc(identity_attack(spec).p_y_given_xsa);
                } else if (attack != "planned") {
                    throw ConfigError("attack must be planned, identity, flip, or margin");
                }
                pe = estimate_pe(cfg);
            }
            py::dict out;
            out["p_e_hat"] = pe.p_e_hat;
            out["std_error"] = pe.std_error;
            out["encoding_error_rate"] = pe.encoding_error_rate;
            out["trials"] = pe.trials;
            return out;
        },
        py::arg("scenario"), py::arg("n"), py::arg("rate"), py::arg("trials") = 1000,
        py::arg("seed") = 1, py::arg("epsilon") = 0.05, py::arg("attack") = "planned",
        py::arg("fresh_codebook") = true,
        "Monte-Carlo stacked-binning simulation; returns error statistics");

    m.def(
        "auxiliary_bound_capacity",
        [](int l, int x_size, int se_size, int y_size, int sa_size) {
            return py::cast(cara_L_capacity(l, x_size, se_size, y_size, sa_size).to_string());
        },
        py::arg("l"), py::arg("x_size"), py::arg("se_size"), py::arg("y_size"),
        py::arg("sa_size"),
        "Sufficient auxiliary alphabet size for the capacity at grid resolution l "
        "(decimal string)");

    m.def(
        "auxiliary_bound_exponent",
        [](int l, int x_size, int se_size, int sa_size, int sd_size, int y_size) {
            return py::cast(
                cara_L_exponent(l, x_size, se_size, sa_size, sd_size, y_size).to_string());
        },
        py::arg("l"), py::arg("x_size"), py::arg("se_size"), py::arg("sa_size"),
        py::arg("sd_size"), py::arg("y_size"),
        "Sufficient auxiliary alphabet size for the exponent at grid resolution l "
        "(decimal string)");
}
