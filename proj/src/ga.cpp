#include "gpexp/ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpexp/errors.hpp"
#include "gpexp/parallel.hpp"
#include "gpexp/rng.hpp"

namespace gpexp {

namespace {

constexpr double kConstraintSlack = 1e-9;
constexpr double kPenaltyWeight = 1e6;
constexpr double kWorst = -std::numeric_limits<double>::infinity();

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double total_violation(const SimplexProductSpace& space, const std::vector<double>& c) {
    double v = 0.0;
    for (const auto& lc : space.constraints) {
        const double excess = dot(lc.coeffs, c) - lc.bound;
        if (excess > 0.0) v += excess;
    }
    return v;
}

// Exact line-search repair: constraints are linear, so the smallest mixing
// weight toward the feasible anchor that restores every bound is closed-form.
void repair_toward_anchor(const SimplexProductSpace& space, std::vector<double>& c) {
    double lambda = 0.0;
    for (const auto& lc : space.constraints) {
        const double at_c = dot(lc.coeffs, c);
        if (at_c <= lc.bound) continue;
        const double at_anchor = dot(lc.coeffs, space.anchor);
        const double denom = at_c - at_anchor;
        if (denom <= 0.0) {
            lambda = 1.0;
            break;
        }
        lambda = std::max(lambda, std::min(1.0, (at_c - lc.bound) / denom));
    }
    if (lambda <= 0.0) return;
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (1.0 - lambda) * c[i] + lambda * space.anchor[i];
}

} // namespace

std::size_t SimplexProductSpace::dimension() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += static_cast<std::size_t>(b.size);
    return d;
}

void SimplexProductSpace::validate() const {
    if (blocks.empty()) throw ConfigError("search space needs at least one block");
    for (const auto& b : blocks) {
        if (b.size < 1) throw ConfigError("simplex block size must be at least 1");
        if (b.epsilon < 0.0) throw ConfigError("simplex floor must be nonnegative");
        if (b.epsilon * b.size > 1.0 + 1e-12)
            throw ConfigError("simplex floor leaves no probability mass");
    }
    const std::size_t d = dimension();
    for (const auto& lc : constraints)
        if (lc.coeffs.size() != d)
            throw ConfigError("constraint coefficient length must match the space dimension");
    if (!anchor.empty()) {
        if (anchor.size() != d) throw ConfigError("anchor length must match the space dimension");
        std::size_t off = 0;
        for (const auto& b : blocks) {
            double sum = 0.0;
            for (int i = 0; i < b.size; ++i) {
                const double v = anchor[off + static_cast<std::size_t>(i)];
                if (v < b.epsilon - 1e-12) throw ConfigError("anchor violates a block floor");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("anchor block must sum to 1");
            off += static_cast<std::size_t>(b.size);
        }
        for (const auto& lc : constraints)
            if (dot(lc.coeffs, anchor) > lc.bound + kConstraintSlack)
                throw ConfigError("anchor violates a linear constraint");
    }
}

void GaConfig::validate() const {
    if (population < 2) throw ConfigError("population must be at least 2");
    if (generations < 1) throw ConfigError("generations must be at least 1");
    if (elite_count < 1) throw ConfigError("elite count must be at least 1");
    if (elite_count >= population) throw ConfigError("elite count must be below the population");
    if (!(mutation_scale > 0.0)) throw ConfigError("mutation scale must be positive");
    if (mutation_rate <= 0.0 || mutation_rate > 1.0)
        throw ConfigError("mutation rate must lie in (0,1]");
    if (crossover_rate < 0.0 || crossover_rate > 1.0)
        throw ConfigError("crossover rate must lie in [0,1]");
    if (stall_patience < 1) throw ConfigError("stall patience must be at least 1");
}

GaConfig GaConfig::scaled_inner() const {
    GaConfig inner = *this;
    inner.population = std::max(4, population / 2);
    inner.generations = std::max(4, generations / 2);
    inner.elite_count = std::min(elite_count, inner.population - 1);
    inner.stall_patience = std::max(4, stall_patience / 2);
    return inner;
}

std::vector<double> decode_candidate(const SimplexProductSpace& space,
                                     const std::vector<double>& genome) {
    if (genome.size() != space.dimension())
        throw ConfigError("genome length must match the space dimension");
    std::vector<double> c(genome.size());
    std::size_t off = 0;
    for (const auto& b : space.blocks) {
        const std::size_t n = static_cast<std::size_t>(b.size);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = std::max(genome[off + i], b.epsilon);
            c[off + i] = g;
            sum += g;
        }
        if (!(sum > 0.0)) {
            for (std::size_t i = 0; i < n; ++i) c[off + i] = 1.0 / static_cast<double>(n);
        } else {
            for (std::size_t i = 0; i < n; ++i) c[off + i] /= sum;
        }
        if (b.epsilon > 0.0) {
            // Renormalizing can undercut the floor; mix minimally with the
            // uniform pmf (which sits at 1/n >= epsilon) to restore it.
            double t = 0.0;
            const double u = 1.0 / static_cast<double>(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double v = c[off + i];
                if (v < b.epsilon && u > v) t = std::max(t, (b.epsilon - v) / (u - v));
            }
            if (t > 0.0)
                for (std::size_t i = 0; i < n; ++i)
                    c[off + i] = (1.0 - t) * c[off + i] + t * u;
        }
        off += n;
    }
    if (!space.anchor.empty()) repair_toward_anchor(space, c);
    return c;
}

GaResult optimize(const Objective& objective, const SimplexProductSpace& space,
                  const GaConfig& cfg, OptSense sense,
                  const std::vector<std::vector<double>>& warm_starts) {
    space.validate();
    cfg.validate();
    const std::size_t dim = space.dimension();
    const std::size_t pop = static_cast<std::size_t>(cfg.population);
    const bool penalty_mode = space.anchor.empty() && !space.constraints.empty();

    std::vector<std::vector<double>> population(pop);
    std::vector<double> scores(pop, kWorst);  // internal: always maximized
    std::vector<double> values(pop, 0.0);     // raw objective values

    const auto evaluate_range = [&](std::size_t first) {
        parallel_for(pop - first, [&](std::size_t k) {
            const std::size_t i = first + k;
            population[i] = decode_candidate(space, population[i]);
            const double raw = objective(population[i]);
            values[i] = raw;
            double score = sense == OptSense::Maximize ? raw : -raw;
            if (std::isnan(score)) score = kWorst;
            const double violation = total_violation(space, population[i]);
            if (penalty_mode && violation > 0.0) score -= kPenaltyWeight * violation;
            scores[i] = score;
        });
    };

    for (std::size_t i = 0; i < pop; ++i) {
        RngStream rng = RngStream::derive(cfg.seed, {0, static_cast<std::uint64_t>(i)});
        if (i < warm_starts.size()) {
            if (warm_starts[i].size() != dim)
                throw ConfigError("warm start length must match the space dimension");
            population[i] = warm_starts[i];
        } else {
            // i.i.d. exponential genes normalize to a uniform simplex draw.
            std::vector<double> g(dim);
            for (double& x : g) x = -std::log(std::max(rng.uniform(), 1e-300));
            population[i] = std::move(g);
        }
    }
    evaluate_range(0);

    const auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    };
    std::vector<std::size_t> order(pop);

    GaResult result;
    double best_score = kWorst;
    int stall = 0;
    std::vector<std::vector<double>> next(pop);

    for (int gen = 1; gen <= cfg.generations; ++gen) {
        for (std::size_t i = 0; i < pop; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), better);
        const double gen_best = scores[order[0]];
        if (gen_best > best_score) {
            best_score = gen_best;
            result.best = population[order[0]];
            result.value = values[order[0]];
            stall = 0;
        } else {
            ++stall;
        }
        result.trace.push_back(result.value);
        if (stall >= cfg.stall_patience) break;
        if (gen == cfg.generations) break;

        const std::size_t elite = static_cast<std::size_t>(cfg.elite_count);
        for (std::size_t i = 0; i < elite; ++i) next[i] = population[order[i]];
        for (std::size_t i = elite; i < pop; ++i) {
            RngStream rng = RngStream::derive(
                cfg.seed, {static_cast<std::uint64_t>(gen), static_cast<std::uint64_t>(i)});
            const auto tournament = [&]() -> const std::vector<double>& {
                std::size_t pick = rng.below(pop);
                for (int round = 1; round < 3; ++round) {
                    const std::size_t rival = rng.below(pop);
                    if (better(rival, pick)) pick = rival;
                }
                return population[pick];
            };
            const std::vector<double>& pa = tournament();
            std::vector<double> child;
            if (rng.uniform() < cfg.crossover_rate) {
                const std::vector<double>& pb = tournament();
                child.resize(dim);
                for (std::size_t g = 0; g < dim; ++g)
                    child[g] = rng.uniform() < 0.5 ? pa[g] : pb[g];
            } else {
                child = pa;
            }
            for (std::size_t g = 0; g < dim; ++g)
                if (rng.uniform() < cfg.mutation_rate) {
                    child[g] += rng.normal() * cfg.mutation_scale;
                    if (child[g] < 0.0) child[g] = 0.0;
                }
            next[i] = std::move(child);
        }
        population.swap(next);
        // Elites keep their old scores (snapshotted first: order[i] may point
        // into the slots being overwritten); only fresh children re-evaluate.
        std::vector<double> elite_scores(elite), elite_values(elite);
        for (std::size_t i = 0; i < elite; ++i) {
            elite_scores[i] = scores[order[i]];
            elite_values[i] = values[order[i]];
        }
        for (std::size_t i = 0; i < elite; ++i) {
            scores[i] = elite_scores[i];
            values[i] = elite_values[i];
        }
        evaluate_range(elite);
    }

    if (result.best.empty()) throw SolverError("optimizer produced no candidate");
    if (total_violation(space, result.best) > kConstraintSlack)
        throw SolverError("no feasible candidate found within the configured budget");
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
        const bool ok = sense == OptSense::Maximize ? result.trace[i] >= result.trace[i - 1]
                                                    : result.trace[i] <= result.trace[i - 1];
        if (!ok) throw SolverError("elitist best-value trace lost monotonicity");
    }
    return result;
}

NestedResult nested_optimize(const std::vector<NestedLevel>& levels,
                             const NestedObjective& objective, std::vector<GaConfig> cfgs) {
    if (levels.empty()) throw ConfigError("nested optimization needs at least one level");
    if (cfgs.empty()) throw ConfigError("nested optimization needs at least one config");
    while (cfgs.size() < levels.size()) cfgs.push_back(cfgs.back().scaled_inner());

    // Solve level `depth` given fixed candidates for all shallower levels.
    std::function<double(std::vector<std::vector<double>>&, std::size_t,
                         std::vector<std::vector<double>>*)>
        solve = [&](std::vector<std::vector<double>>& fixed, std::size_t depth,
                    std::vector<std::vector<double>>* witnesses) -> double {
        const Objective leaf = [&](const std::vector<double>& cand) -> double {
            fixed[depth] = cand;
            if (depth + 1 == levels.size()) return objective(fixed);
            return solve(fixed, depth + 1, nullptr);
        };
        const GaResult r =
            optimize(leaf, levels[depth].space, cfgs[depth], levels[depth].sense);
        fixed[depth] = r.best;
        if (witnesses) {
            (*witnesses)[depth] = r.best;
            if (depth + 1 < levels.size()) solve(fixed, depth + 1, witnesses);
        }
        return r.value;
    };

    NestedResult out;
    std::vector<std::vector<double>> fixed(levels.size());
    out.best.resize(levels.size());
    out.value = solve(fixed, 0, &out.best);
    return out;
}

} // namespace gpexp
