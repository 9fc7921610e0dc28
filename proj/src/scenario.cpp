#include "gpexp/scenario.hpp"

#include <cmath>

namespace gpexp {

namespace {

// Fixed degradation for presets whose decoder sees a noisy state copy.
constexpr double kSemiblindFlip = 0.25;

std::vector<double> hamming_table(int rows, int cols) {
    std::vector<double> t(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            t[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
              static_cast<std::size_t>(c)] = (r == c) ? 0.0 : 1.0;
    return t;
}

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0,1]");
}

} // namespace

Preset preset_from_name(const std::string& name) {
    if (name == "gelfand_pinsker") return Preset::GelfandPinsker;
    if (name == "public") return Preset::Public;
    if (name == "semiblind") return Preset::Semiblind;
    if (name == "cover_chiang") return Preset::CoverChiang;
    if (name == "private") return Preset::Private;
    if (name == "degenerate") return Preset::Degenerate;
    if (name == "custom") return Preset::Custom;
    throw ConfigError("unknown preset: " + name);
}

std::string preset_name(Preset preset) {
    switch (preset) {
    case Preset::GelfandPinsker: return "gelfand_pinsker";
    case Preset::Public: return "public";
    case Preset::Semiblind: return "semiblind";
    case Preset::CoverChiang: return "cover_chiang";
    case Preset::Private: return "private";
    case Preset::Degenerate: return "degenerate";
    case Preset::Custom: return "custom";
    }
    throw ConfigError("unknown preset value");
}

std::vector<double> ScenarioSpec::se_marginal() const {
    const JointPmf m = state_pmf.marginal({0});
    return m.values();
}

std::vector<double> ScenarioSpec::se_sa_marginal() const {
    const JointPmf m = state_pmf.marginal({0, 1});
    return m.values();
}

std::vector<double> ScenarioSpec::sa_sd_given_se() const {
    const std::vector<double> pse = se_marginal();
    std::vector<double> out(state_pmf.values().size(), 0.0);
    const std::size_t block = static_cast<std::size_t>(sa_size) * static_cast<std::size_t>(sd_size);
    for (int se = 0; se < se_size; ++se) {
        const double w = pse[static_cast<std::size_t>(se)];
        for (std::size_t i = 0; i < block; ++i) {
            const std::size_t flat = static_cast<std::size_t>(se) * block + i;
            out[flat] = w > 0.0 ? state_pmf[flat] / w
                                : (i == 0 ? 1.0 : 0.0); // arbitrary row for null states
        }
    }
    return out;
}

void ScenarioSpec::validate() const {
    if (se_size < 1 || sa_size < 1 || sd_size < 1 || x_size < 1 || y_size < 1 || u_size < 1)
        throw ConfigError("alphabet sizes must be at least 1");
    if (state_pmf.sizes() != std::vector<int>{se_size, sa_size, sd_size})
        throw ConfigError("state pmf axes must be (encoder, adversary, decoder) states");
    if (cost.size() != static_cast<std::size_t>(se_size) * static_cast<std::size_t>(x_size))
        throw ConfigError("cost table must be |Se| x |X|");
    if (distortion.size() != static_cast<std::size_t>(x_size) * static_cast<std::size_t>(y_size))
        throw ConfigError("distortion table must be |X| x |Y|");
    for (const double c : cost)
        if (!(c >= 0.0)) throw ConfigError("cost entries must be nonnegative");
    for (const double d : distortion)
        if (!(d >= 0.0)) throw ConfigError("distortion entries must be nonnegative");
    if (!(D1 >= 0.0) || !(D2 >= 0.0)) throw ConfigError("budgets must be nonnegative");
}

ScenarioSpec ScenarioSpec::with_u_size(int new_L) const {
    if (new_L < 1) throw ConfigError("auxiliary alphabet bound must be at least 1");
    ScenarioSpec out = *this;
    out.u_size = new_L;
    return out;
}

ScenarioSpec build_preset(const std::string& name, double p_e, double D1, double D2, int L) {
    return build_preset(preset_from_name(name), p_e, D1, D2, L);
}

ScenarioSpec build_preset(Preset preset, double p_e, double D1, double D2, int L) {
    check_prob(p_e, "state probability");
    if (!(D1 >= 0.0) || !(D2 >= 0.0)) throw ConfigError("budgets must be nonnegative");
    if (L < 1) throw ConfigError("auxiliary alphabet bound must be at least 1");
    ScenarioSpec spec;
    spec.preset = preset;
    spec.x_size = 2;
    spec.y_size = 2;
    spec.u_size = L;
    spec.D1 = D1;
    spec.D2 = D2;
    const std::vector<Role> state_roles = {Role::EncoderState, Role::AdversaryState,
                                           Role::DecoderState};
    const double q0 = 1.0 - p_e;
    const double q1 = p_e;
    switch (preset) {
    case Preset::GelfandPinsker: {
        // Adversary observes the encoder state; decoder sees nothing.
        spec.se_size = 2;
        spec.sa_size = 2;
        spec.sd_size = 1;
        std::vector<double> v(4, 0.0);
        v[0 * 2 + 0] = q0; // se=0, sa=0
        v[1 * 2 + 1] = q1; // se=1, sa=1
        spec.state_pmf = JointPmf({2, 2, 1}, std::move(v), state_roles);
        break;
    }
    case Preset::Public: {
        spec.se_size = 2;
        spec.sa_size = 1;
        spec.sd_size = 1;
        spec.state_pmf = JointPmf({2, 1, 1}, {q0, q1}, state_roles);
        break;
    }
    case Preset::Semiblind: {
        // Decoder sees the state through a fixed binary symmetric flip.
        spec.se_size = 2;
        spec.sa_size = 1;
        spec.sd_size = 2;
        std::vector<double> v(4);
        v[0 * 2 + 0] = q0 * (1.0 - kSemiblindFlip);
        v[0 * 2 + 1] = q0 * kSemiblindFlip;
        v[1 * 2 + 0] = q1 * kSemiblindFlip;
        v[1 * 2 + 1] = q1 * (1.0 - kSemiblindFlip);
        spec.state_pmf = JointPmf({2, 1, 2}, std::move(v), state_roles);
        break;
    }
    case Preset::CoverChiang: {
        // Adversary observes the pair (encoder state, decoder state).
        spec.se_size = 2;
        spec.sa_size = 4;
        spec.sd_size = 2;
        std::vector<double> v(16, 0.0);
        for (int se = 0; se < 2; ++se)
            for (int sd = 0; sd < 2; ++sd) {
                const double w = (se == 0 ? q0 : q1) *
                                 (se == sd ? 1.0 - kSemiblindFlip
                                           : kSemiblindFlip);
                const int sa = se * 2 + sd;
                v[(static_cast<std::size_t>(se) * 4 + static_cast<std::size_t>(sa)) * 2 +
                  static_cast<std::size_t>(sd)] = w;
            }
        spec.state_pmf = JointPmf({2, 4, 2}, std::move(v), state_roles);
        break;
    }
    case Preset::Private: {
        // Decoder shares the encoder state exactly.
        spec.se_size = 2;
        spec.sa_size = 1;
        spec.sd_size = 2;
        std::vector<double> v(4, 0.0);
        v[0 * 2 + 0] = q0;
        v[1 * 2 + 1] = q1;
        spec.state_pmf = JointPmf({2, 1, 2}, std::move(v), state_roles);
        break;
    }
    case Preset::Degenerate: {
        spec.se_size = 1;
        spec.sa_size = 1;
        spec.sd_size = 1;
        spec.state_pmf = JointPmf({1, 1, 1}, {1.0}, state_roles);
        break;
    }
    case Preset::Custom:
        throw ConfigError("custom scenarios need explicit tables, not a preset build");
    }
    if (preset == Preset::Degenerate) {
        // Host is the all-zero sequence: cost is the Hamming weight of X.
        spec.cost = {0.0, 1.0};
    } else {
        spec.cost = hamming_table(spec.se_size, spec.x_size);
    }
    spec.distortion = hamming_table(spec.x_size, spec.y_size);
    spec.validate();
    return spec;
}

double transmit_cost(const ScenarioSpec& spec, const TransmitChannel& t) {
    const CondPmf& p = t.p_xu_given_se;
    if (p.given_sizes() != std::vector<int>{spec.se_size} ||
        p.out_sizes() != std::vector<int>{spec.x_size, spec.u_size})
        throw ConfigError("transmit channel alphabets do not match the scenario");
    const std::vector<double> pse = spec.se_marginal();
    double cost = 0.0;
    for (int se = 0; se < spec.se_size; ++se) {
        const auto row = p.row(static_cast<std::size_t>(se));
        double per_state = 0.0;
        for (int x = 0; x < spec.x_size; ++x) {
            double px = 0.0;
            for (int u = 0; u < spec.u_size; ++u)
                px += row[static_cast<std::size_t>(x) * static_cast<std::size_t>(spec.u_size) +
                          static_cast<std::size_t>(u)];
            per_state += px * spec.cost_at(se, x);
        }
        cost += pse[static_cast<std::size_t>(se)] * per_state;
    }
    return cost;
}

double attack_distortion(const ScenarioSpec& spec, const JointPmf& p_x_sa,
                         const AttackChannel& a) {
    const CondPmf& p = a.p_y_given_xsa;
    if (p.given_sizes() != std::vector<int>{spec.x_size, spec.sa_size} ||
        p.out_sizes() != std::vector<int>{spec.y_size})
        throw ConfigError("attack channel alphabets do not match the scenario");
    if (p_x_sa.sizes() != std::vector<int>{spec.x_size, spec.sa_size})
        throw ConfigError("input marginal must be over (X, adversary state)");
    double dist = 0.0;
    for (int x = 0; x < spec.x_size; ++x)
        for (int sa = 0; sa < spec.sa_size; ++sa) {
            const std::size_t r = static_cast<std::size_t>(x) *
                                      static_cast<std::size_t>(spec.sa_size) +
                                  static_cast<std::size_t>(sa);
            const double w = p_x_sa[r];
            if (w <= 0.0) continue;
            const auto row = p.row(r);
            double per_pair = 0.0;
            for (int y = 0; y < spec.y_size; ++y)
                per_pair += row[static_cast<std::size_t>(y)] * spec.distortion_at(x, y);
            dist += w * per_pair;
        }
    return dist;
}

JointPmf transmit_x_sa_marginal(const ScenarioSpec& spec, const TransmitChannel& t) {
    const std::vector<double> pse_sa = spec.se_sa_marginal();
    std::vector<double> out(static_cast<std::size_t>(spec.x_size) *
                                static_cast<std::size_t>(spec.sa_size),
                            0.0);
    for (int se = 0; se < spec.se_size; ++se) {
        const auto row = t.p_xu_given_se.row(static_cast<std::size_t>(se));
        for (int x = 0; x < spec.x_size; ++x) {
            double px = 0.0;
            for (int u = 0; u < spec.u_size; ++u)
                px += row[static_cast<std::size_t>(x) * static_cast<std::size_t>(spec.u_size) +
                          static_cast<std::size_t>(u)];
            for (int sa = 0; sa < spec.sa_size; ++sa)
                out[static_cast<std::size_t>(x) * static_cast<std::size_t>(spec.sa_size) +
                    static_cast<std::size_t>(sa)] +=
                    pse_sa[static_cast<std::size_t>(se) * static_cast<std::size_t>(spec.sa_size) +
                           static_cast<std::size_t>(sa)] *
                    px;
        }
    }
    return JointPmf::normalized({spec.x_size, spec.sa_size}, std::move(out),
                                {Role::Input, Role::AdversaryState});
}

JointPmf assemble_joint(const ScenarioSpec& spec, const TransmitChannel& t,
                        const AttackChannel& a) {
    const double cost = transmit_cost(spec, t);
    if (cost > spec.D1 + kFeasibilitySlack)
        throw CostInfeasible("transmit cost exceeds the D1 budget");
    const JointPmf p_x_sa = transmit_x_sa_marginal(spec, t);
    const double dist = attack_distortion(spec, p_x_sa, a);
    if (dist > spec.D2 + kFeasibilitySlack)
        throw DistortionInfeasible("attack distortion exceeds the D2 budget");

    const std::vector<int> sizes = {spec.se_size, spec.sa_size, spec.sd_size,
                                    spec.u_size,  spec.x_size,  spec.y_size};
    const std::vector<Role> roles = {Role::EncoderState, Role::AdversaryState, Role::DecoderState,
                                     Role::Auxiliary,    Role::Input,          Role::Output};
    std::size_t total = 1;
    for (const int s : sizes) total *= static_cast<std::size_t>(s);
    std::vector<double> v(total);
    std::size_t flat = 0;
    for (int se = 0; se < spec.se_size; ++se)
        for (int sa = 0; sa < spec.sa_size; ++sa)
            for (int sd = 0; sd < spec.sd_size; ++sd) {
                const double ps = spec.state_pmf[(static_cast<std::size_t>(se) *
                                                      static_cast<std::size_t>(spec.sa_size) +
                                                  static_cast<std::size_t>(sa)) *
                                                     static_cast<std::size_t>(spec.sd_size) +
                                                 static_cast<std::size_t>(sd)];
                const auto trow = t.p_xu_given_se.row(static_cast<std::size_t>(se));
                for (int u = 0; u < spec.u_size; ++u)
                    for (int x = 0; x < spec.x_size; ++x) {
                        const double txu =
                            trow[static_cast<std::size_t>(x) *
                                     static_cast<std::size_t>(spec.u_size) +
                                 static_cast<std::size_t>(u)];
                        const auto arow = a.p_y_given_xsa.row(
                            static_cast<std::size_t>(x) * static_cast<std::size_t>(spec.sa_size) +
                            static_cast<std::size_t>(sa));
                        for (int y = 0; y < spec.y_size; ++y)
                            v[flat++] = ps * txu * arow[static_cast<std::size_t>(y)];
                    }
            }
    return JointPmf::normalized(sizes, std::move(v), roles);
}

AttackChannel identity_attack(const ScenarioSpec& spec) {
    if (spec.y_size < spec.x_size)
        throw ConfigError("identity attack needs the output alphabet to cover the input");
    std::vector<double> v(static_cast<std::size_t>(spec.x_size) *
                              static_cast<std::size_t>(spec.sa_size) *
                              static_cast<std::size_t>(spec.y_size),
                          0.0);
    for (int x = 0; x < spec.x_size; ++x)
        for (int sa = 0; sa < spec.sa_size; ++sa)
            v[(static_cast<std::size_t>(x) * static_cast<std::size_t>(spec.sa_size) +
               static_cast<std::size_t>(sa)) *
                  static_cast<std::size_t>(spec.y_size) +
              static_cast<std::size_t>(x)] = 1.0;
    return AttackChannel{CondPmf({spec.x_size, spec.sa_size}, {spec.y_size}, std::move(v))};
}

} // namespace gpexp
