#pragma once

#include <cstdint>
#include <vector>

#include "gpexp/ga.hpp"
#include "gpexp/pmf.hpp"
#include "gpexp/scenario.hpp"

namespace gpexp {

// Adversary models: a channel fixed from a distortion-constrained class (the
// compound case) versus an adversary that may correlate its action with the
// transmitted block (arbitrary memoryless strategies within the same class).
enum class ChannelModel { Compound, Arbitrary };

ChannelModel channel_model_from_name(const std::string& name);
std::string channel_model_name(ChannelModel model);

// Attack class: either the distortion ball induced by the scenario's
// distortion table and budget, or an explicit finite list of channels
// p_{Y|X,Sa} (rows (x,sa), given-order (x, sa)).
struct AttackClass {
    enum class Kind { DistortionBall, Finite };
    Kind kind = Kind::DistortionBall;
    std::vector<CondPmf> members; // used when kind == Finite
};

struct SolverOptions {
    GaConfig transmit_ga;   // middle-level search over the transmit channel
    int restarts = 4;       // independent seeds per grid point
    int alt_rounds = 3;     // alternation rounds in the inner solver
    int eg_iters = 36;      // mirror-descent steps per alternation round
    int refine_rounds = 10; // extra alternation rounds at the incumbent
    int refine_eg_iters = 60;
    bool refine = true;
    double outer_coarse = 0.05; // hypothesis-prior grid, stage 1
    double outer_mid = 0.01;    // stage 2 (window around stage-1 argmin)
    double outer_fine = 0.001;  // stage 3 (window around stage-2 argmin)
    std::uint64_t seed = 1;
    // Optional caller-supplied transmit channels ([se][x][u] row-major) used to
    // seed the middle-level search, e.g. solutions embedded from a smaller
    // auxiliary alphabet. Entries with the wrong length are rejected.
    std::vector<std::vector<double>> transmit_warm_starts;

    static SolverOptions defaults();
    static SolverOptions fast(); // reduced budgets for smoke tests

    void validate() const;
};

struct ExponentProblem {
    ScenarioSpec spec;
    ChannelModel model = ChannelModel::Compound;
    double rate = 0.0;
    SolverOptions solver;
    AttackClass attacks; // DistortionBall by default
};

struct ExponentResult {
    double value = 0.0;
    std::vector<double> tilde_p_se;       // hypothesised encoder-state prior
    std::vector<double> transmit;         // [se][x][u], row-major
    std::vector<double> hypothesis;       // rows (se,x,u) x cols (sa,sd,y)
    std::vector<double> attack;           // rows (x,sa) x cols y
    std::vector<double> restart_values;   // incumbent value per restart seed
};

struct CapacityResult {
    double value = 0.0;
    std::vector<double> transmit;       // [se][x][u]
    std::vector<double> attack;         // rows (x,sa) x cols y
    std::vector<double> restart_values;
};

// Worst-case achievable rate max_t min_{a in A} [I(U;Y,Sd) - I(U;Se)].
CapacityResult capacity_CL(const ScenarioSpec& spec, const SolverOptions& opts,
                           const AttackClass& attacks = {});

// Zero-pads a transmit channel ([se][x][u] row-major) from auxiliary alphabet
// size u_from to u_to >= u_from.  The embedded channel induces the same joint
// law, so objective values are preserved exactly; used to warm-start solves at
// a larger auxiliary alphabet from a smaller one.
std::vector<double> embed_transmit(const std::vector<double>& transmit, int se_size,
                                   int x_size, int u_from, int u_to);

// Random-coding error exponents for the two adversary models.
ExponentResult er_cdmc(const ExponentProblem& problem);
ExponentResult er_cam(const ExponentProblem& problem);

struct SweepRow {
    double rate = 0.0;
    double exponent = 0.0;
    double capacity = 0.0;
};
std::vector<SweepRow> sweep_rates(const ExponentProblem& problem,
                                  const std::vector<double>& rates);

// Closed forms for the binary-Hamming scenarios (encoder state uniform or
// absent, Hamming cost/distortion).
double g_star(double d1, double d2);       // public / degenerate capacity
double c_priv(double d1, double d2);       // private capacity h(d1*d2) - h(d2)
double er_cam_pub_closed(double rate, double d1, double d2);
double er_cam_deg_closed(double rate, double d1, double d2);

// Classical single-user exponents used as cross-checks.
double dmc_exponent(double rate, const std::vector<double>& p_x, const CondPmf& channel);
double compound_dmc_exponent(double rate, const std::vector<double>& p_x,
                             const std::vector<CondPmf>& channel_class);
// Private watermarking game (state known to encoder and decoder).
double private_wm_exponent(double rate, double d1, double d2);
// Binary jamming game with additive modulo-2 noise of weight at most d2.
double jamming_exponent(double rate, double d2);

// Objective evaluators, exposed so the identities that relate the two
// adversary models can be property-tested directly.
//
// Layouts: tilde_p_se has length |Se|; transmit is [se][x][u] row-major;
// hypothesis is rows (se,x,u) by cols (sa,sd,y); attack is rows (x,sa) by y.
double cdmc_objective(const ScenarioSpec& spec, double rate,
                      const std::vector<double>& tilde_p_se,
                      const std::vector<double>& transmit,
                      const std::vector<double>& hypothesis,
                      const std::vector<double>& attack);
double cam_objective(const ScenarioSpec& spec, double rate,
                     const std::vector<double>& tilde_p_se,
                     const std::vector<double>& transmit,
                     const std::vector<double>& hypothesis);
// Output channel induced by the hypothesis joint: rows (x,sa) by y.
std::vector<double> cam_induced_attack(const ScenarioSpec& spec,
                                       const std::vector<double>& tilde_p_se,
                                       const std::vector<double>& transmit,
                                       const std::vector<double>& hypothesis);
// Distortion of the induced channel, weighted by the true (state, transmit)
// input law: the feasibility functional of the constrained hypothesis set.
double cam_induced_distortion(const ScenarioSpec& spec,
                              const std::vector<double>& tilde_p_se,
                              const std::vector<double>& transmit,
                              const std::vector<double>& hypothesis);
// Conditional mutual information I(X,U; Sa,Sd | Se) of the hypothesis joint:
// the exact gap between the two objectives when the compound form is
// evaluated at the induced channel.
double hypothesis_coupling_gap(const ScenarioSpec& spec,
                               const std::vector<double>& tilde_p_se,
                               const std::vector<double>& transmit,
                               const std::vector<double>& hypothesis);

} // namespace gpexp
