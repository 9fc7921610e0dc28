#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gpexp/exponents.hpp"
#include "gpexp/pmf.hpp"
#include "gpexp/rng.hpp"
#include "gpexp/scenario.hpp"
#include "gpexp/types_method.hpp"

namespace gpexp {

inline constexpr std::uint64_t kDefaultCodebookBudget = 1ull << 22;

// Blueprint for the codeword array serving one encoder-state composition.
struct CodebookPlanEntry {
    TypeVector se_type;         // the composition this array serves
    TypeVector u_type;          // target codeword composition
    CondTypeVector u_given_se;  // target conditional composition of u given s^e
    // Target conditional composition of x given the (u, s^e) pair; the given
    // axis is the pair symbol u * |Se| + se.
    CondTypeVector x_given_use;
    double i_star = 0.0;   // empirical I(U;Se) of the chosen composition, bits
    double j_star = 0.0;   // planned objective value at the chosen composition
    double rho = 0.0;      // bin-depth exponent, i_star + epsilon
    double psi = 0.0;      // decoder penalty, equal to rho by default
    std::uint64_t rows = 0; // ceil(2^(n*rho))
};

struct CodebookPlan {
    int n = 0;
    double rate = 0.0;
    double epsilon = 0.0;
    std::uint64_t message_count = 0; // M = ceil(2^(n*rate)) columns per array
    int se_size = 1;
    int u_size = 1;
    int x_size = 1;
    std::vector<CodebookPlanEntry> entries; // one per composition of Se^n

    std::uint64_t total_codewords() const;
    // Index of the entry serving the given composition; throws if absent.
    std::size_t entry_index(const TypeVector& se_type) const;
};

// Fully drawn stack: per entry a rows x M array of length-n codewords.
struct CodebookStack {
    CodebookPlan plan;
    // Per entry, flat layout [(row * M + col) * n + i].
    std::vector<std::vector<int>> words;

    std::span<const int> word(std::size_t entry, std::uint64_t row, std::uint64_t col) const;
};

struct AttackModel {
    enum class Kind { Cdmc, Cam };
    // Maps the joint composition of the (x, s^a) pair sequence (pair symbol
    // x * |Sa| + sa) to the conditional composition of y the attack uses; the
    // output must respect the distortion constraint.
    using CamLambda = std::function<CondTypeVector(const TypeVector& xsa_pair_type)>;

    Kind kind = Kind::Cdmc;
    std::optional<CondPmf> cdmc_channel; // rows (x, s^a), cols y
    CamLambda cam_lambda;

    static AttackModel cdmc(CondPmf channel);
    static AttackModel cam(CamLambda lambda);
};

// Constrained attack that flips exactly floor(n*D2) positions, the flip budget
// split across (x, s^a) cells proportionally (largest remainder); the flipped
// positions are drawn uniformly within each cell.  Binary x and y only.
AttackModel::CamLambda make_flip_lambda(const ScenarioSpec& spec);

// Default constrained attack: per joint composition, exhaustively minimizes
// the planned decoder metric I(U; Y, Sd) of the true codeword over every
// conditional composition inside the distortion ball.  The (u, se, sd) side of
// the score joint comes from the plan entry whose composition is the most
// likely under the scenario state law.
AttackModel::CamLambda make_margin_minimizing_lambda(const ScenarioSpec& spec,
                                                     const CodebookPlan& plan);

struct SimConfig {
    ScenarioSpec spec;
    int n = 8;
    double rate = 0.0;
    double epsilon = 0.05;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::uint64_t codebook_budget = kDefaultCodebookBudget;
    AttackModel attack;
    // Fresh codebook every trial reproduces the random-coding ensemble
    // average; switch off to study one fixed draw.
    bool fresh_codebook_per_trial = true;
    bool minimax_plan = false;
    SolverOptions plan_solver = SolverOptions::fast();

    void validate() const;
};

// Per-composition finite-n design: for every composition of Se^n, pick the
// feasible conditional composition of (x, u) given s^e maximizing the planned
// objective I(U;Y,Sd) - I(U;Se) against the planned attack channel (the
// worst-case channel of the capacity solve); with minimax enabled the
// objective is instead the minimum over every conditional attack composition
// inside the distortion ball (exhaustive, so small n only).
CodebookPlan plan_codebook(const ScenarioSpec& spec, int n, double rate, double epsilon,
                           const SolverOptions& solver,
                           std::uint64_t codebook_budget = kDefaultCodebookBudget,
                           bool minimax = false);

CodebookStack draw_codebook(const CodebookPlan& plan, RngStream& rng);

struct EncodeResult {
    std::vector<int> u;
    std::vector<int> x;
    bool encoding_error = false; // no codeword of the target composition in the column
    std::size_t entry = 0;       // array serving the observed composition
    std::uint64_t row = 0;       // chosen row (meaningful when !encoding_error)
};

// Scans column m of the array serving type(s_e) for codewords of the target
// conditional composition (uniform tie-break from the stream); on failure
// flags the event and draws u directly from the composition class.  x is then
// drawn uniformly from the target class given (u, s_e); the cost constraint
// holds with certainty by constant composition.
EncodeResult encode(const CodebookStack& stack, std::span<const int> s_e, std::uint64_t m,
                    RngStream& rng);

std::vector<int> attack(const ScenarioSpec& spec, const AttackModel& model,
                        std::span<const int> x, std::span<const int> s_a, RngStream& rng);

// Memoryless attack sampling with the per-letter uniforms made explicit
// (w[i] drives letter i); attack() draws w from its stream.  Exposed so the
// modulation-equivariance harness can permute the noise along with the data.
std::vector<int> cdmc_attack_with_uniforms(const CondPmf& channel, std::span<const int> x,
                                           std::span<const int> s_a, int sa_size,
                                           std::span<const double> w);

struct DecodeResult {
    bool error = false;        // maximizers span more than one column
    std::uint64_t message = 0; // winning column (valid when !error)
    std::size_t entry = 0;     // array of the winning codeword
    std::uint64_t row = 0;     // its row (first maximizer in scan order)
    double best_score = 0.0;
    double runner_up = 0.0; // best score over codewords outside the winning column
};

// Maximum penalized empirical mutual information over every codeword in the
// stack: score = I(u; y, s_d) - psi(array).  Exact score ties across distinct
// columns are decoder errors; ties within a column resolve to the lowest
// (entry, row) in scan order.
DecodeResult mpmi_decode(const CodebookStack& stack, std::span<const int> y,
                         std::span<const int> s_d);

struct PeEstimate {
    double p_e_hat = 0.0;
    double std_error = 0.0;          // binomial standard error
    double encoding_error_rate = 0.0;
    std::uint64_t trials = 0;
};

PeEstimate estimate_pe(const SimConfig& cfg);

// Coder conjugated by a position permutation: encodes s^e through the
// permutation and maps the codeword back, decodes permuted observations.
// pi must be a permutation of {0..n-1}; (pi s)_i = s[pi[i]].
struct ModulatedCoder {
    const CodebookStack* stack = nullptr;
    std::vector<int> pi;
    std::vector<int> pi_inv;

    EncodeResult encode(std::span<const int> s_e, std::uint64_t m, RngStream& rng) const;
    DecodeResult decode(std::span<const int> y, std::span<const int> s_d) const;
};

ModulatedCoder apply_random_modulation(const CodebookStack& stack, std::vector<int> pi);

} // namespace gpexp
