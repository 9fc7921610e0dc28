#pragma once

#include <string>
#include <vector>

#include "gpexp/errors.hpp"
#include "gpexp/pmf.hpp"

namespace gpexp {

// Transmit-cost budget violated (expected cost above D1).
struct CostInfeasible : ConfigError {
    using ConfigError::ConfigError;
};
// Attack-distortion budget violated (expected distortion above D2).
struct DistortionInfeasible : ConfigError {
    using ConfigError::ConfigError;
};

enum class Preset {
    GelfandPinsker, // adversary sees the encoder state, decoder blind
    Public,         // only the encoder sees the state
    Semiblind,      // decoder sees a noisy copy of the encoder state
    CoverChiang,    // adversary sees both encoder and decoder states
    Private,        // encoder and decoder share the state
    Degenerate,     // no side information anywhere
    Custom,
};

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset preset);

// One coding game instance: alphabets, state law, cost/distortion tables and
// the two budgets. Degenerate variables are size-1 axes, never special cases.
struct ScenarioSpec {
    Preset preset = Preset::Custom;
    int se_size = 1;
    int sa_size = 1;
    int sd_size = 1;
    int x_size = 2;
    int y_size = 2;
    int u_size = 2; // auxiliary alphabet bound L
    JointPmf state_pmf;             // axes (Se, Sa, Sd), role-tagged
    std::vector<double> cost;       // [se][x], nonnegative
    std::vector<double> distortion; // [x][y], nonnegative
    double D1 = 0.0;
    double D2 = 0.0;

    double cost_at(int se, int x) const {
        return cost[static_cast<std::size_t>(se) * static_cast<std::size_t>(x_size) +
                    static_cast<std::size_t>(x)];
    }
    double distortion_at(int x, int y) const {
        return distortion[static_cast<std::size_t>(x) * static_cast<std::size_t>(y_size) +
                          static_cast<std::size_t>(y)];
    }
    std::vector<double> se_marginal() const;
    std::vector<double> se_sa_marginal() const;     // [se][sa]
    std::vector<double> sa_sd_given_se() const;     // [se][sa][sd], rows normalized
    void validate() const;
    ScenarioSpec with_u_size(int new_L) const;
};

// p(x,u | s^e): rows indexed by s^e, columns laid out as (x, u).
struct TransmitChannel {
    CondPmf p_xu_given_se;
};

// p(y | x, s^a): rows indexed by (x, s^a), columns by y.
struct AttackChannel {
    CondPmf p_y_given_xsa;
};

inline constexpr double kFeasibilitySlack = 1e-9;

ScenarioSpec build_preset(const std::string& name, double p_e, double D1, double D2, int L);
ScenarioSpec build_preset(Preset preset, double p_e, double D1, double D2, int L);

double transmit_cost(const ScenarioSpec& spec, const TransmitChannel& t);
double attack_distortion(const ScenarioSpec& spec, const JointPmf& p_x_sa,
                         const AttackChannel& a);

// Marginal p(x, s^a) induced by the state law and a transmit channel.
JointPmf transmit_x_sa_marginal(const ScenarioSpec& spec, const TransmitChannel& t);

// Full joint p(s)·p(x,u|s^e)·p(y|x,s^a) over (Se,Sa,Sd,U,X,Y), role-tagged.
// Throws CostInfeasible / DistortionInfeasible when a budget is violated.
JointPmf assemble_joint(const ScenarioSpec& spec, const TransmitChannel& t,
                        const AttackChannel& a);

// Identity-output attack (y = x), feasible whenever d(x,x) = 0.
AttackChannel identity_attack(const ScenarioSpec& spec);

} // namespace gpexp
