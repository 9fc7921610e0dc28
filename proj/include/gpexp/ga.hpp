#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace gpexp {

// One probability-simplex factor of the search space. Entries of a decoded
// candidate are >= epsilon and sum to one within the block.
struct SimplexBlock {
    int size = 0;
    double epsilon = 0.0;
};

// c . candidate <= bound over the concatenated decoded candidate.
struct LinearConstraint {
    std::vector<double> coeffs;
    double bound = 0.0;
};

struct SimplexProductSpace {
    std::vector<SimplexBlock> blocks;
    std::vector<LinearConstraint> constraints;
    // Feasible point used for exact line-search repair; empty switches the
    // solver to additive-penalty handling.
    std::vector<double> anchor;

    std::size_t dimension() const;
    void validate() const;
};

struct GaConfig {
    int population = 200;
    int generations = 600;
    int elite_count = 2;
    double mutation_scale = 0.05;
    double mutation_rate = 0.2; // per-gene probability
    double crossover_rate = 0.7;
    std::uint64_t seed = 1;
    int stall_patience = 100;

    void validate() const;
    GaConfig scaled_inner() const; // one nesting level down (budget / 4)
};

enum class OptSense { Maximize, Minimize };

struct GaResult {
    std::vector<double> best;  // decoded, feasible
    double value = 0.0;
    std::vector<double> trace; // per-generation best objective value
};

using Objective = std::function<double(const std::vector<double>&)>;

// Decode a raw genome into a feasible candidate (clip, renormalize, floor,
// repair). Exposed for tests and for warm-start preparation.
std::vector<double> decode_candidate(const SimplexProductSpace& space,
                                     const std::vector<double>& genome);

GaResult optimize(const Objective& objective, const SimplexProductSpace& space,
                  const GaConfig& cfg, OptSense sense,
                  const std::vector<std::vector<double>>& warm_starts = {});

struct NestedLevel {
    SimplexProductSpace space;
    OptSense sense = OptSense::Maximize;
};

struct NestedResult {
    double value = 0.0;
    std::vector<std::vector<double>> best; // one candidate per level
};

using NestedObjective = std::function<double(const std::vector<std::vector<double>>&)>;

// Levels are ordered outer to inner; missing per-level configs are derived
// from the last given one by quartering the evaluation budget.
NestedResult nested_optimize(const std::vector<NestedLevel>& levels,
                             const NestedObjective& objective, std::vector<GaConfig> cfgs);

} // namespace gpexp
