#include "gpexp/binning.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

#include "gpexp/errors.hpp"
#include "gpexp/parallel.hpp"

namespace gpexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kBookTag = 0x626f6f6bull;  // codebook draw stream
constexpr std::uint64_t kTrialTag = 0x7472696cull; // per-trial sampling stream

std::string type_to_string(const TypeVector& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t.counts[i]);
    }
    return s + ")";
}

double xlog2x_ratio(double w, double num, double den) {
    if (w <= 0.0) return 0.0;
    return w * std::log2(num / den);
}

// Mutual information in bits between the two axes of a joint histogram given
// as counts / total.
double mi_from_counts(const std::vector<double>& joint, std::size_t a_size,
                      std::size_t b_size) {
    std::vector<double> ma(a_size, 0.0), mb(b_size, 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < a_size; ++a)
        for (std::size_t b = 0; b < b_size; ++b) {
            const double w = joint[a * b_size + b];
            ma[a] += w;
            mb[b] += w;
            total += w;
        }
    if (total <= 0.0) return 0.0;
    double mi = 0.0;
    for (std::size_t a = 0; a < a_size; ++a)
        for (std::size_t b = 0; b < b_size; ++b) {
            const double w = joint[a * b_size + b];
            if (w > 0.0) mi += xlog2x_ratio(w / total, w * total, ma[a] * mb[b]);
        }
    return std::max(0.0, mi);
}

// Planned objective I(U;Y,Sd) - I(U;Se) of a candidate conditional
// composition against a fixed attack channel (rows (x,sa) by y), with the
// state coupling taken from the scenario law.
struct PlannedObjective {
    double j = 0.0;
    double i_use = 0.0;
};

PlannedObjective planned_objective(const ScenarioSpec& spec, const TypeVector& lam,
                                   const CondTypeVector& ct,
                                   const std::vector<double>& attack_rows) {
    const int nse = spec.se_size, nsa = spec.sa_size, nsd = spec.sd_size;
    const int nx = spec.x_size, nu = spec.u_size, ny = spec.y_size;
    const double n = static_cast<double>(lam.n);
    const std::vector<double> sasd = spec.sa_sd_given_se();

    std::vector<double> m_uysd(static_cast<std::size_t>(nu) * ny * nsd, 0.0);
    std::vector<double> m_use(static_cast<std::size_t>(nu) * nse, 0.0);
    for (int se = 0; se < nse; ++se) {
        const int cnt = lam.counts[static_cast<std::size_t>(se)];
        if (cnt == 0) continue;
        const double p_se = static_cast<double>(cnt) / n;
        for (int x = 0; x < nx; ++x)
            for (int u = 0; u < nu; ++u) {
                const int cell = ct.at(se, x * nu + u);
                if (cell == 0) continue;
                const double p_xu = static_cast<double>(cell) / static_cast<double>(cnt);
                m_use[static_cast<std::size_t>(u) * nse + se] += p_se * p_xu;
                for (int sa = 0; sa < nsa; ++sa) {
                    for (int sd = 0; sd < nsd; ++sd) {
                        const double p_sasd =
                            sasd[(static_cast<std::size_t>(se) * nsa + sa) * nsd + sd];
                        if (p_sasd <= 0.0) continue;
                        for (int y = 0; y < ny; ++y) {
                            const double a =
                                attack_rows[(static_cast<std::size_t>(x) * nsa + sa) * ny + y];
                            if (a <= 0.0) continue;
                            m_uysd[(static_cast<std::size_t>(u) * ny + y) * nsd + sd] +=
                                p_se * p_xu * p_sasd * a;
                        }
                    }
                }
            }
    }
    PlannedObjective out;
    out.i_use = mi_from_counts(m_use, static_cast<std::size_t>(nu), static_cast<std::size_t>(nse));
    const double i_uysd = mi_from_counts(m_uysd, static_cast<std::size_t>(nu),
                                         static_cast<std::size_t>(ny) * nsd);
    out.j = i_uysd - out.i_use;
    return out;
}

// Empirical distortion of a conditional attack composition relative to a
// blocklength-n input; counts are absolute, so divide by n.
double cond_type_distortion(const ScenarioSpec& spec, const CondTypeVector& ct, int n) {
    const int nsa = spec.sa_size, ny = spec.y_size;
    double total = 0.0;
    for (int cell = 0; cell < ct.given_type.alphabet; ++cell) {
        const int x = cell / nsa;
        for (int y = 0; y < ny; ++y)
            total += static_cast<double>(ct.at(cell, y)) * spec.distortion_at(x, y);
    }
    return total / static_cast<double>(n);
}

std::vector<double> cond_type_to_rows(const CondTypeVector& ct) {
    const int ny = ct.out_alphabet;
    const int cells = ct.given_type.alphabet;
    std::vector<double> rows(static_cast<std::size_t>(cells) * ny, 0.0);
    for (int c = 0; c < cells; ++c) {
        const int cnt = ct.given_type.counts[static_cast<std::size_t>(c)];
        for (int y = 0; y < ny; ++y)
            rows[static_cast<std::size_t>(c) * ny + y] =
                cnt > 0 ? static_cast<double>(ct.at(c, y)) / static_cast<double>(cnt)
                        : 1.0 / static_cast<double>(ny);
    }
    return rows;
}

std::vector<int> pair_sequence(std::span<const int> a, std::span<const int> b, int b_size) {
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b_size + b[i];
    return out;
}

std::vector<int> counts_of_pairs(std::span<const int> a, std::span<const int> b, int a_size,
                                 int b_size) {
    std::vector<int> counts(static_cast<std::size_t>(a_size) * b_size, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        counts[static_cast<std::size_t>(a[i]) * b_size + b[i]] += 1;
    return counts;
}

std::vector<int> apply_perm(std::span<const int> v, const std::vector<int>& sigma) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[sigma[i]];
    return out;
}

void check_constant_composition(const std::vector<int>& got, const std::vector<int>& want,
                                const char* what) {
    if (got != want)
        throw SolverError(std::string("constant-composition violation in ") + what);
}

} // namespace

std::uint64_t CodebookPlan::total_codewords() const {
    std::uint64_t total = 0;
    for (const auto& e : entries) total += e.rows * message_count;
    return total;
}

std::size_t CodebookPlan::entry_index(const TypeVector& se_type) const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i].se_type.counts == se_type.counts) return i;
    throw ConfigError("no codebook array serves composition " + type_to_string(se_type));
}

std::span<const int> CodebookStack::word(std::size_t entry, std::uint64_t row,
                                         std::uint64_t col) const {
    const std::size_t n = static_cast<std::size_t>(plan.n);
    const std::size_t offset =
        static_cast<std::size_t>(row * plan.message_count + col) * n;
    return {words[entry].data() + offset, n};
}

AttackModel AttackModel::cdmc(CondPmf channel) {
    AttackModel m;
    m.kind = Kind::Cdmc;
    m.cdmc_channel = std::move(channel);
    return m;
}

AttackModel AttackModel::cam(CamLambda lambda) {
    AttackModel m;
    m.kind = Kind::Cam;
    m.cam_lambda = std::move(lambda);
    return m;
}

void SimConfig::validate() const {
    spec.validate();
    if (n < 1) throw ConfigError("blocklength must be positive");
    if (rate < 0.0) throw ConfigError("rate must be nonnegative");
    if (epsilon < 0.0) throw ConfigError("depth margin epsilon must be nonnegative");
    if (trials < 1) throw ConfigError("trial count must be positive");
    if (codebook_budget < 1) throw ConfigError("codebook budget must be positive");
    if (attack.kind == AttackModel::Kind::Cdmc && attack.cdmc_channel.has_value()) {
        const CondPmf& c = *attack.cdmc_channel;
        if (c.rows() != static_cast<std::size_t>(spec.x_size) * spec.sa_size ||
            c.cols() != static_cast<std::size_t>(spec.y_size))
            throw ConfigError("memoryless attack channel has the wrong shape");
    }
    if (attack.kind == AttackModel::Kind::Cam && !attack.cam_lambda)
        throw ConfigError("constrained attack requires an attack map");
    plan_solver.validate();
}

CodebookPlan plan_codebook(const ScenarioSpec& spec, int n, double rate, double epsilon,
                           const SolverOptions& solver, std::uint64_t codebook_budget,
                           bool minimax) {
    spec.validate();
    solver.validate();
    if (n < 1) throw ConfigError("blocklength must be positive");
    if (rate < 0.0) throw ConfigError("rate must be nonnegative");
    if (epsilon < 0.0) throw ConfigError("depth margin epsilon must be nonnegative");
    const double m_log2 = static_cast<double>(n) * rate;
    if (m_log2 > 60.0) throw BudgetError("message count 2^(nR) exceeds the budget");
    if (minimax && spec.sa_size != 1)
        throw ConfigError("the exhaustive minimax plan supports only a degenerate "
                          "adversary-state alphabet");

    CodebookPlan plan;
    plan.n = n;
    plan.rate = rate;
    plan.epsilon = epsilon;
    plan.message_count = static_cast<std::uint64_t>(std::ceil(std::exp2(m_log2)));
    plan.se_size = spec.se_size;
    plan.u_size = spec.u_size;
    plan.x_size = spec.x_size;

    // The planned attack: worst-case memoryless channel of the capacity
    // solve.  Candidate compositions are ranked by their objective against it.
    const std::vector<double> planned_attack = capacity_CL(spec, solver).attack;

    const int nx = spec.x_size, nu = spec.u_size, nse = spec.se_size;
    std::uint64_t total = 0;
    for (const TypeVector& lam : enumerate_types(nse, n)) {
        double best_j = -kInf;
        const CondTypeVector* best_ct = nullptr;
        double best_i_use = 0.0;
        const std::vector<CondTypeVector> candidates =
            enumerate_conditional_types(lam, nx * nu);
        for (const CondTypeVector& ct : candidates) {
            double cost = 0.0;
            for (int se = 0; se < nse; ++se)
                for (int x = 0; x < nx; ++x)
                    for (int u = 0; u < nu; ++u)
                        cost += static_cast<double>(ct.at(se, x * nu + u)) *
                                spec.cost_at(se, x);
            cost /= static_cast<double>(n);
            if (cost > spec.D1 + kFeasibilitySlack) continue;

            double j;
            double i_use;
            if (!minimax) {
                const PlannedObjective po = planned_objective(spec, lam, ct, planned_attack);
                j = po.j;
                i_use = po.i_use;
            } else {
                // Worst case over every conditional attack composition inside
                // the distortion ball; x-counts come from the candidate.
                std::vector<int> x_counts(static_cast<std::size_t>(nx), 0);
                for (int se = 0; se < nse; ++se)
                    for (int x = 0; x < nx; ++x)
                        for (int u = 0; u < nu; ++u) x_counts[static_cast<std::size_t>(x)] +=
                            ct.at(se, x * nu + u);
                const TypeVector x_type(nx, x_counts);
                j = kInf;
                i_use = 0.0;
                for (const CondTypeVector& ca :
                     enumerate_conditional_types(x_type, spec.y_size)) {
                    if (cond_type_distortion(spec, ca, n) > spec.D2 + kFeasibilitySlack)
                        continue;
                    const PlannedObjective po =
                        planned_objective(spec, lam, ct, cond_type_to_rows(ca));
                    if (po.j < j) {
                        j = po.j;
                        i_use = po.i_use;
                    }
                }
                if (j == kInf)
                    throw DistortionInfeasible(
                        "no conditional attack composition fits the distortion ball");
            }
            if (j > best_j + 1e-12) {
                best_j = j;
                best_ct = &ct;
                best_i_use = i_use;
            }
        }
        if (best_ct == nullptr)
            throw CostInfeasible("no feasible composition for encoder-state type " +
                                 type_to_string(lam));

        CodebookPlanEntry entry;
        entry.se_type = lam;
        // Split the chosen joint composition into the pieces the encoder uses.
        std::vector<int> use_counts(static_cast<std::size_t>(nse) * nu, 0);
        std::vector<int> pair_counts(static_cast<std::size_t>(nu) * nse, 0);
        std::vector<int> x_cells(static_cast<std::size_t>(nu) * nse * nx, 0);
        std::vector<int> u_counts(static_cast<std::size_t>(nu), 0);
        for (int se = 0; se < nse; ++se)
            for (int x = 0; x < nx; ++x)
                for (int u = 0; u < nu; ++u) {
                    const int c = best_ct->at(se, x * nu + u);
                    use_counts[static_cast<std::size_t>(se) * nu + u] += c;
                    pair_counts[static_cast<std::size_t>(u) * nse + se] += c;
                    x_cells[(static_cast<std::size_t>(u) * nse + se) * nx + x] += c;
                    u_counts[static_cast<std::size_t>(u)] += c;
                }
        entry.u_type = TypeVector(nu, u_counts);
        entry.u_given_se = CondTypeVector(lam, nu, use_counts);
        entry.x_given_use =
            CondTypeVector(TypeVector(nu * nse, pair_counts), nx, x_cells);
        entry.i_star = best_i_use;
        entry.j_star = best_j;
        entry.rho = best_i_use + epsilon;
        entry.psi = entry.rho;
        const double rows_log2 = static_cast<double>(n) * entry.rho;
        if (rows_log2 + m_log2 > 60.0)
            throw BudgetError("codebook budget exceeded at encoder-state type " +
                              type_to_string(lam));
        entry.rows = static_cast<std::uint64_t>(std::ceil(std::exp2(rows_log2)));
        total += entry.rows * plan.message_count;
        if (total > codebook_budget)
            throw BudgetError("codebook budget exceeded at encoder-state type " +
                              type_to_string(lam) + ": " + std::to_string(total) + " > " +
                              std::to_string(codebook_budget) + " codewords");
        plan.entries.push_back(std::move(entry));
    }
    return plan;
}

CodebookStack draw_codebook(const CodebookPlan& plan, RngStream& rng) {
    CodebookStack stack;
    stack.plan = plan;
    stack.words.reserve(plan.entries.size());
    const std::size_t n = static_cast<std::size_t>(plan.n);
    for (const auto& e : plan.entries) {
        std::vector<int> flat;
        flat.reserve(static_cast<std::size_t>(e.rows * plan.message_count) * n);
        for (std::uint64_t w = 0; w < e.rows * plan.message_count; ++w) {
            const std::vector<int> word = sample_uniform_from_type(e.u_type, rng);
            flat.insert(flat.end(), word.begin(), word.end());
        }
        stack.words.push_back(std::move(flat));
    }
    return stack;
}

EncodeResult encode(const CodebookStack& stack, std::span<const int> s_e, std::uint64_t m,
                    RngStream& rng) {
    const CodebookPlan& plan = stack.plan;
    if (static_cast<int>(s_e.size()) != plan.n)
        throw ConfigError("encoder-state sequence length mismatch");
    if (m >= plan.message_count) throw ConfigError("message index out of range");
    const TypeVector lam = TypeVector::of_sequence(s_e, plan.se_size);
    EncodeResult out;
    out.entry = plan.entry_index(lam);
    const CodebookPlanEntry& e = plan.entries[out.entry];

    // Step 1: collect the rows of column m whose codeword has the target
    // conditional composition with s_e, and pick one uniformly.
    std::vector<std::uint64_t> hits;
    std::vector<int> joint(static_cast<std::size_t>(plan.se_size) * plan.u_size);
    for (std::uint64_t row = 0; row < e.rows; ++row) {
        const std::span<const int> w = stack.word(out.entry, row, m);
        std::fill(joint.begin(), joint.end(), 0);
        for (std::size_t i = 0; i < s_e.size(); ++i)
            joint[static_cast<std::size_t>(s_e[i]) * plan.u_size + w[i]] += 1;
        if (joint == e.u_given_se.counts) hits.push_back(row);
    }
    if (!hits.empty()) {
        out.row = hits[rng.below(hits.size())];
        const std::span<const int> w = stack.word(out.entry, out.row, m);
        out.u.assign(w.begin(), w.end());
    } else {
        out.encoding_error = true;
        out.u = sample_uniform_from_cond_type(e.u_given_se, s_e, rng);
    }

    // Step 2: draw x from the target class given the (u, s_e) pair sequence.
    const std::vector<int> pairs = pair_sequence(out.u, s_e, plan.se_size);
    out.x = sample_uniform_from_cond_type(e.x_given_use, pairs, rng);

    check_constant_composition(TypeVector::of_sequence(out.u, plan.u_size).counts,
                               e.u_type.counts, "the codeword");
    check_constant_composition(counts_of_pairs(pairs, out.x, plan.u_size * plan.se_size,
                                               plan.x_size),
                               e.x_given_use.counts, "the channel input");
    return out;
}

std::vector<int> cdmc_attack_with_uniforms(const CondPmf& channel, std::span<const int> x,
                                           std::span<const int> s_a, int sa_size,
                                           std::span<const double> w) {
    if (x.size() != s_a.size() || x.size() != w.size())
        throw ConfigError("attack input length mismatch");
    std::vector<int> y(x.size());
    const std::size_t ny = channel.cols();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::span<const double> row =
            channel.row(static_cast<std::size_t>(x[i]) * sa_size +
                        static_cast<std::size_t>(s_a[i]));
        double acc = 0.0;
        std::size_t out = ny - 1;
        for (std::size_t v = 0; v < ny; ++v) {
            acc += row[v];
            if (w[i] < acc) {
                out = v;
                break;
            }
        }
        y[i] = static_cast<int>(out);
    }
    return y;
}

std::vector<int> attack(const ScenarioSpec& spec, const AttackModel& model,
                        std::span<const int> x, std::span<const int> s_a, RngStream& rng) {
    if (x.size() != s_a.size()) throw ConfigError("attack input length mismatch");
    const int n = static_cast<int>(x.size());
    if (model.kind == AttackModel::Kind::Cdmc) {
        if (!model.cdmc_channel.has_value())
            throw ConfigError("memoryless attack model has no channel");
        std::vector<double> w(x.size());
        for (double& v : w) v = rng.uniform();
        return cdmc_attack_with_uniforms(*model.cdmc_channel, x, s_a, spec.sa_size, w);
    }
    if (!model.cam_lambda) throw ConfigError("constrained attack requires an attack map");
    const std::vector<int> pairs = pair_sequence(x, s_a, spec.sa_size);
    const TypeVector pair_type =
        TypeVector::of_sequence(pairs, spec.x_size * spec.sa_size);
    const CondTypeVector ct = model.cam_lambda(pair_type);
    if (ct.given_type.counts != pair_type.counts || ct.out_alphabet != spec.y_size)
        throw SolverError("attack map output has the wrong shape");
    if (cond_type_distortion(spec, ct, n) > spec.D2 + kFeasibilitySlack)
        throw SolverError("attack map output violates the distortion constraint");
    return sample_uniform_from_cond_type(ct, pairs, rng);
}

AttackModel::CamLambda make_flip_lambda(const ScenarioSpec& spec) {
    if (spec.x_size != 2 || spec.y_size != 2)
        throw ConfigError("the flip attack requires binary input and output");
    const int nsa = spec.sa_size;
    const double d2 = spec.D2;
    return [nsa, d2](const TypeVector& pair_type) {
        const int n = pair_type.n;
        const std::size_t cells = pair_type.counts.size();
        std::uint64_t budget = static_cast<std::uint64_t>(std::floor(
            static_cast<double>(n) * d2 + 1e-9));
        // Proportional allocation of flips across cells, largest remainder
        // first (ties by ascending cell index); never exceeds a cell's count.
        std::vector<std::uint64_t> flips(cells, 0);
        std::vector<std::pair<double, std::size_t>> rem;
        std::uint64_t assigned = 0;
        for (std::size_t c = 0; c < cells; ++c) {
            const double share = static_cast<double>(budget) *
                                 static_cast<double>(pair_type.counts[c]) /
                                 static_cast<double>(n);
            flips[c] = static_cast<std::uint64_t>(std::floor(share + 1e-12));
            assigned += flips[c];
            rem.emplace_back(share - static_cast<double>(flips[c]), c);
        }
        std::stable_sort(rem.begin(), rem.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [frac, c] : rem) {
            if (assigned >= budget) break;
            if (flips[c] < static_cast<std::uint64_t>(pair_type.counts[c])) {
                flips[c] += 1;
                assigned += 1;
            }
        }
        std::vector<int> counts(cells * 2, 0);
        for (std::size_t c = 0; c < cells; ++c) {
            const int x = static_cast<int>(c) / nsa;
            const int flip = static_cast<int>(flips[c]);
            counts[c * 2 + (1 - x)] = flip;
            counts[c * 2 + x] = pair_type.counts[c] - flip;
        }
        return CondTypeVector(pair_type, 2, counts);
    };
}

AttackModel::CamLambda make_margin_minimizing_lambda(const ScenarioSpec& spec,
                                                     const CodebookPlan& plan) {
    if (plan.entries.empty()) throw ConfigError("empty codebook plan");
    // Reference entry: the composition with the highest log-likelihood under
    // the scenario's encoder-state marginal (ties to the first).
    const std::vector<double> p_se = spec.se_marginal();
    std::size_t ref = 0;
    double best_ll = -kInf;
    for (std::size_t i = 0; i < plan.entries.size(); ++i) {
        double ll = 0.0;
        for (int se = 0; se < spec.se_size; ++se) {
            const int c = plan.entries[i].se_type.counts[static_cast<std::size_t>(se)];
            if (c == 0) continue;
            if (p_se[static_cast<std::size_t>(se)] <= 0.0) {
                ll = -kInf;
                break;
            }
            ll += c * std::log(p_se[static_cast<std::size_t>(se)]);
        }
        if (ll > best_ll) {
            best_ll = ll;
            ref = i;
        }
    }
    const CodebookPlanEntry entry = plan.entries[ref];

    // Conditional law q(u, se, sd | x, sa) implied by the reference
    // composition and the scenario state law, obtained by Bayes.
    const int nse = spec.se_size, nsa = spec.sa_size, nsd = spec.sd_size;
    const int nx = spec.x_size, nu = spec.u_size, ny = spec.y_size;
    const std::vector<double> sasd = spec.sa_sd_given_se();
    const double n_ref = static_cast<double>(entry.se_type.n);
    // joint r(se, sa, sd, u, x)
    std::vector<double> r(static_cast<std::size_t>(nse) * nsa * nsd * nu * nx, 0.0);
    for (int se = 0; se < nse; ++se) {
        const int cnt = entry.se_type.counts[static_cast<std::size_t>(se)];
        if (cnt == 0) continue;
        const double pse = static_cast<double>(cnt) / n_ref;
        for (int u = 0; u < nu; ++u) {
            const int pair = u * nse + se;
            for (int x = 0; x < nx; ++x) {
                const int cell = entry.x_given_use.at(pair, x);
                if (cell == 0) continue;
                const double pxu = static_cast<double>(cell) / static_cast<double>(cnt);
                for (int sa = 0; sa < nsa; ++sa)
                    for (int sd = 0; sd < nsd; ++sd) {
                        const double w =
                            pse * pxu *
                            sasd[(static_cast<std::size_t>(se) * nsa + sa) * nsd + sd];
                        r[(((static_cast<std::size_t>(se) * nsa + sa) * nsd + sd) * nu + u) *
                              nx +
                          x] += w;
                    }
            }
        }
    }
    // cond[(x,sa)][(u,sd)] = q(u, sd | x, sa)
    std::vector<double> cond(static_cast<std::size_t>(nx) * nsa * nu * nsd, 0.0);
    std::vector<double> cell_mass(static_cast<std::size_t>(nx) * nsa, 0.0);
    for (int se = 0; se < nse; ++se)
        for (int sa = 0; sa < nsa; ++sa)
            for (int sd = 0; sd < nsd; ++sd)
                for (int u = 0; u < nu; ++u)
                    for (int x = 0; x < nx; ++x) {
                        const double w =
                            r[(((static_cast<std::size_t>(se) * nsa + sa) * nsd + sd) * nu +
                               u) *
                                  nx +
                              x];
                        cond[(static_cast<std::size_t>(x) * nsa + sa) * nu * nsd +
                             static_cast<std::size_t>(u) * nsd + sd] += w;
                        cell_mass[static_cast<std::size_t>(x) * nsa + sa] += w;
                    }
    for (int cell = 0; cell < nx * nsa; ++cell) {
        const double mass = cell_mass[static_cast<std::size_t>(cell)];
        if (mass <= 0.0) continue;
        for (int k = 0; k < nu * nsd; ++k)
            cond[static_cast<std::size_t>(cell) * nu * nsd + k] /= mass;
    }

    const double d2 = spec.D2;
    ScenarioSpec spec_copy = spec;
    return [spec_copy, cond, d2, nsa, nu, nsd, ny](const TypeVector& pair_type) {
        const int n = pair_type.n;
        // Enumerate conditional compositions of y given the observed pair
        // composition; pick the one inside the distortion ball minimizing the
        // planned score I(U; Y, Sd) of the true codeword.
        const std::vector<CondTypeVector> candidates =
            enumerate_conditional_types(pair_type, ny, 2'000'000);
        const CondTypeVector* best = nullptr;
        double best_score = kInf;
        for (const CondTypeVector& ca : candidates) {
            if (cond_type_distortion(spec_copy, ca, n) > d2 + kFeasibilitySlack) continue;
            // joint over (u, (y, sd)) under the reference conditional law.
            std::vector<double> joint(static_cast<std::size_t>(nu) * ny * nsd, 0.0);
            for (std::size_t cell = 0; cell < pair_type.counts.size(); ++cell) {
                const double t = static_cast<double>(pair_type.counts[cell]) /
                                 static_cast<double>(n);
                if (t <= 0.0) continue;
                const int cnt = pair_type.counts[cell];
                for (int y = 0; y < ny; ++y) {
                    const double a =
                        static_cast<double>(ca.at(static_cast<int>(cell), y)) /
                        static_cast<double>(cnt);
                    if (a <= 0.0) continue;
                    for (int u = 0; u < nu; ++u)
                        for (int sd = 0; sd < nsd; ++sd)
                            joint[(static_cast<std::size_t>(u) * ny + y) * nsd + sd] +=
                                t * a *
                                cond[cell * nu * nsd + static_cast<std::size_t>(u) * nsd +
                                     sd];
                }
            }
            const double score = mi_from_counts(joint, static_cast<std::size_t>(nu),
                                                static_cast<std::size_t>(ny) * nsd);
            if (score < best_score - 1e-12) {
                best_score = score;
                best = &ca;
            }
        }
        if (best == nullptr)
            throw DistortionInfeasible(
                "no conditional attack composition fits the distortion ball");
        return *best;
    };
}

DecodeResult mpmi_decode(const CodebookStack& stack, std::span<const int> y,
                         std::span<const int> s_d) {
    const CodebookPlan& plan = stack.plan;
    const std::size_t n = static_cast<std::size_t>(plan.n);
    if (y.size() != n || s_d.size() != n)
        throw ConfigError("decoder input length mismatch");
    // Fuse (y, s_d) into one observation symbol; empty cells contribute
    // nothing to the empirical mutual information, so inferring the alphabet
    // from the observed symbols is exact.
    int ny = 1, nsd = 1;
    for (const int v : y) ny = std::max(ny, v + 1);
    for (const int v : s_d) nsd = std::max(nsd, v + 1);
    const int nz = ny * nsd;
    const int nu = plan.u_size;
    std::vector<int> z(n);
    std::vector<int> cz(static_cast<std::size_t>(nz), 0);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = y[i] * nsd + s_d[i];
        cz[static_cast<std::size_t>(z[i])] += 1;
    }

    // Best penalized score per column, with the first maximizer in scan order
    // (array index, then row) kept: that realizes the lowest-row tie rule.
    const std::size_t m_count = static_cast<std::size_t>(plan.message_count);
    std::vector<double> col_best(m_count, -kInf);
    std::vector<std::size_t> col_entry(m_count, 0);
    std::vector<std::uint64_t> col_row(m_count, 0);

    std::vector<int> cnt(static_cast<std::size_t>(nu) * nz);
    std::vector<int> cu(static_cast<std::size_t>(nu));
    const double dn = static_cast<double>(n);
    for (std::size_t entry = 0; entry < plan.entries.size(); ++entry) {
        const CodebookPlanEntry& e = plan.entries[entry];
        for (std::uint64_t row = 0; row < e.rows; ++row)
            for (std::uint64_t col = 0; col < plan.message_count; ++col) {
                const std::span<const int> w = stack.word(entry, row, col);
                std::fill(cnt.begin(), cnt.end(), 0);
                std::fill(cu.begin(), cu.end(), 0);
                for (std::size_t i = 0; i < n; ++i) {
                    cnt[static_cast<std::size_t>(w[i]) * nz + z[i]] += 1;
                    cu[static_cast<std::size_t>(w[i])] += 1;
                }
                double mi = 0.0;
                for (int u = 0; u < nu; ++u)
                    for (int v = 0; v < nz; ++v) {
                        const int c = cnt[static_cast<std::size_t>(u) * nz + v];
                        if (c > 0)
                            mi += (static_cast<double>(c) / dn) *
                                  std::log2(static_cast<double>(c) * dn /
                                            (static_cast<double>(cu[u]) *
                                             static_cast<double>(cz[static_cast<std::size_t>(v)])));
                    }
                const double score = mi - e.psi;
                if (score > col_best[col]) {
                    col_best[col] = score;
                    col_entry[col] = entry;
                    col_row[col] = row;
                }
            }
    }

    DecodeResult out;
    std::size_t winner = 0;
    int max_count = 0;
    for (std::size_t col = 0; col < m_count; ++col) {
        if (max_count == 0 || col_best[col] > col_best[winner]) {
            winner = col;
            max_count = 1;
        } else if (col_best[col] == col_best[winner]) {
            max_count += 1;
        }
    }
    out.error = max_count > 1;
    out.message = winner;
    out.entry = col_entry[winner];
    out.row = col_row[winner];
    out.best_score = col_best[winner];
    double runner_up = -kInf;
    for (std::size_t col = 0; col < m_count; ++col)
        if (col != winner) runner_up = std::max(runner_up, col_best[col]);
    out.runner_up = runner_up;
    return out;
}

PeEstimate estimate_pe(const SimConfig& cfg) {
    cfg.validate();
    CodebookPlan plan = plan_codebook(cfg.spec, cfg.n, cfg.rate, cfg.epsilon,
                                      cfg.plan_solver, cfg.codebook_budget,
                                      cfg.minimax_plan);
    AttackModel model = cfg.attack;
    if (model.kind == AttackModel::Kind::Cdmc && !model.cdmc_channel.has_value()) {
        // Default memoryless attack: the planned worst-case channel.
        const std::vector<double> rows = capacity_CL(cfg.spec, cfg.plan_solver).attack;
        model.cdmc_channel = CondPmf({cfg.spec.x_size, cfg.spec.sa_size},
                                     {cfg.spec.y_size}, rows);
    }

    std::optional<CodebookStack> shared;
    if (!cfg.fresh_codebook_per_trial) {
        RngStream rng(derive_seed(cfg.seed, {kBookTag, 0}));
        shared.emplace(draw_codebook(plan, rng));
    }

    const JointPmf& state = cfg.spec.state_pmf;
    const int nsa = cfg.spec.sa_size, nsd = cfg.spec.sd_size;
    const std::size_t n = static_cast<std::size_t>(cfg.n);

    std::vector<std::uint8_t> err(cfg.trials, 0), enc_err(cfg.trials, 0);
    parallel_for(cfg.trials, [&](std::size_t t) {
        RngStream rng(derive_seed(cfg.seed, {kTrialTag, static_cast<std::uint64_t>(t)}));
        std::optional<CodebookStack> fresh;
        const CodebookStack* stack;
        if (cfg.fresh_codebook_per_trial) {
            RngStream book(derive_seed(cfg.seed, {kBookTag, static_cast<std::uint64_t>(t) + 1}));
            fresh.emplace(draw_codebook(plan, book));
            stack = &*fresh;
        } else {
            stack = &*shared;
        }

        std::vector<int> se(n), sa(n), sd(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double r = rng.uniform();
            double acc = 0.0;
            std::size_t flat = state.total_size() - 1;
            for (std::size_t k = 0; k < state.total_size(); ++k) {
                acc += state[k];
                if (r < acc) {
                    flat = k;
                    break;
                }
            }
            sd[i] = static_cast<int>(flat) % nsd;
            sa[i] = static_cast<int>(flat / nsd) % nsa;
            se[i] = static_cast<int>(flat / (static_cast<std::size_t>(nsd) * nsa));
        }
        const std::uint64_t m = rng.below(stack->plan.message_count);
        const EncodeResult enc = encode(*stack, se, m, rng);
        // Cost guard: constant composition makes this structural.
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) cost += cfg.spec.cost_at(se[i], enc.x[i]);
        if (cost / static_cast<double>(n) > cfg.spec.D1 + kFeasibilitySlack)
            throw SolverError("max-cost violation in a simulation trial");
        const std::vector<int> y = attack(cfg.spec, model, enc.x, sa, rng);
        const DecodeResult dec = mpmi_decode(*stack, y, sd);
        err[t] = dec.error || dec.message != m;
        enc_err[t] = enc.encoding_error;
    });

    PeEstimate out;
    out.trials = cfg.trials;
    double sum = 0.0, enc_sum = 0.0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        sum += err[t];
        enc_sum += enc_err[t];
    }
    out.p_e_hat = sum / static_cast<double>(cfg.trials);
    out.encoding_error_rate = enc_sum / static_cast<double>(cfg.trials);
    out.std_error = std::sqrt(out.p_e_hat * (1.0 - out.p_e_hat) /
                              static_cast<double>(cfg.trials));
    return out;
}

EncodeResult ModulatedCoder::encode(std::span<const int> s_e, std::uint64_t m,
                                    RngStream& rng) const {
    EncodeResult res = gpexp::encode(*stack, apply_perm(s_e, pi), m, rng);
    res.u = apply_perm(res.u, pi_inv);
    res.x = apply_perm(res.x, pi_inv);
    return res;
}

DecodeResult ModulatedCoder::decode(std::span<const int> y, std::span<const int> s_d) const {
    return mpmi_decode(*stack, apply_perm(y, pi), apply_perm(s_d, pi));
}

ModulatedCoder apply_random_modulation(const CodebookStack& stack, std::vector<int> pi) {
    const std::size_t n = static_cast<std::size_t>(stack.plan.n);
    if (pi.size() != n) throw ConfigError("permutation length mismatch");
    std::vector<int> seen(n, 0), inv(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (pi[i] < 0 || pi[i] >= static_cast<int>(n) || seen[static_cast<std::size_t>(pi[i])])
            throw ConfigError("not a permutation");
        seen[static_cast<std::size_t>(pi[i])] = 1;
        inv[static_cast<std::size_t>(pi[i])] = static_cast<int>(i);
    }
    ModulatedCoder coder;
    coder.stack = &stack;
    coder.pi = std::move(pi);
    coder.pi_inv = std::move(inv);
    return coder;
}

} // namespace gpexp
