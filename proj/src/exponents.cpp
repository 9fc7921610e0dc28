#include "gpexp/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpexp/convex.hpp"
#include "gpexp/errors.hpp"
#include "gpexp/rng.hpp"

namespace gpexp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogClamp = 60.0;      // bits; probabilities below 2^-60 are noise
constexpr double kAcceptSlack = 1e-14;  // strict-improvement margin for line searches
constexpr double kDistortionSlack = 1e-11;

double clamp_log2_ratio(double num, double den) {
    if (num <= 0.0 && den <= 0.0) return 0.0;
    if (num <= 0.0) return -kLogClamp;
    if (den <= 0.0) return kLogClamp;
    return std::clamp(std::log2(num / den), -kLogClamp, kLogClamp);
}

// ---------------------------------------------------------------------------
// Evaluator: precomputed scenario constants plus scratch buffers for the two
// hypothesis-testing objectives and their gradients. Copyable so that
// population-based searches can hand each worker its own scratch space.
// ---------------------------------------------------------------------------

class Evaluator {
public:
    Evaluator(const ScenarioSpec& spec, double rate)
        : rate_(rate), d1_(spec.D1), d2_(spec.D2) {
        nse_ = spec.se_size;
        nsa_ = spec.sa_size;
        nsd_ = spec.sd_size;
        nu_ = spec.u_size;
        nx_ = spec.x_size;
        ny_ = spec.y_size;
        rows_ = static_cast<std::size_t>(nse_) * static_cast<std::size_t>(nx_) *
                static_cast<std::size_t>(nu_);
        cols_ = static_cast<std::size_t>(nsa_) * static_cast<std::size_t>(nsd_) *
                static_cast<std::size_t>(ny_);
        arows_ = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(nsa_);

        p_state_ = spec.state_pmf.values();
        p_se_ = spec.se_marginal();
        p_sesa_ = spec.se_sa_marginal();
        psasd_ = spec.sa_sd_given_se();
        dist_ = spec.distortion;
        cost_ = spec.cost;

        row_se_.resize(rows_);
        row_x_.resize(rows_);
        row_u_.resize(rows_);
        for (int se = 0; se < nse_; ++se)
            for (int x = 0; x < nx_; ++x)
                for (int u = 0; u < nu_; ++u) {
                    const std::size_t r = (static_cast<std::size_t>(se) * nx_ + x) * nu_ + u;
                    row_se_[r] = se;
                    row_x_[r] = x;
                    row_u_[r] = u;
                }
        col_sa_.resize(cols_);
        col_sd_.resize(cols_);
        col_y_.resize(cols_);
        for (int sa = 0; sa < nsa_; ++sa)
            for (int sd = 0; sd < nsd_; ++sd)
                for (int y = 0; y < ny_; ++y) {
                    const std::size_t cc = (static_cast<std::size_t>(sa) * nsd_ + sd) * ny_ + y;
                    col_sa_[cc] = sa;
                    col_sd_[cc] = sd;
                    col_y_[cc] = y;
                }

        tilde_.assign(static_cast<std::size_t>(nse_), 0.0);
        t_.assign(rows_, 0.0);
        tx_.assign(static_cast<std::size_t>(nse_) * nx_, 0.0);
        c_.assign(rows_, 0.0);
        q_true_.assign(arows_, 0.0);
        attack_cost_.assign(arows_ * ny_, 0.0);
        k_cap_.assign(static_cast<std::size_t>(nu_) * nsd_ * nx_ * nsa_, 0.0);
        m_u_.assign(static_cast<std::size_t>(nu_), 0.0);
        m_uysd_.assign(static_cast<std::size_t>(nu_) * nsd_ * ny_, 0.0);
        m_ysd_.assign(static_cast<std::size_t>(nsd_) * ny_, 0.0);
        m_xsa_.assign(arows_, 0.0);
        m_xsay_.assign(arows_ * ny_, 0.0);
        m_big_.assign(static_cast<std::size_t>(nse_) * nsd_ * nu_ * arows_, 0.0);
        tilde_state_.assign(p_state_.size(), 0.0);
    }

    int nse() const { return nse_; }
    int nsa() const { return nsa_; }
    int nsd() const { return nsd_; }
    int nu() const { return nu_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t arows() const { return arows_; }
    double rate() const { return rate_; }
    double d2() const { return d2_; }
    double last_j() const { return last_j_; }
    const std::vector<double>& p_se() const { return p_se_; }
    const std::vector<double>& attack_cost() const { return attack_cost_; }
    const std::vector<double>& q_true() const { return q_true_; }
    const std::vector<double>& transmit() const { return t_; }
    const std::vector<double>& tilde() const { return tilde_; }
    const std::vector<char>& row_active() const { return row_active_; }

    void set_state(const std::vector<double>& tilde, const std::vector<double>& transmit) {
        if (tilde.size() != static_cast<std::size_t>(nse_) || transmit.size() != rows_)
            throw ConfigError("evaluator: state vector has the wrong length");
        tilde_ = tilde;
        t_ = transmit;
        std::fill(tx_.begin(), tx_.end(), 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            tx_[static_cast<std::size_t>(row_se_[r]) * nx_ + row_x_[r]] += t_[r];
        row_active_.assign(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r) {
            c_[r] = tilde_[static_cast<std::size_t>(row_se_[r])] * t_[r];
            row_active_[r] = c_[r] > 0.0 ? 1 : 0;
        }
        std::fill(m_u_.begin(), m_u_.end(), 0.0);
        for (std::size_t r = 0; r < rows_; ++r) m_u_[static_cast<std::size_t>(row_u_[r])] += c_[r];
        // I(U; Se) of the hypothesised (state, transmit) joint.
        std::vector<double> m_use(static_cast<std::size_t>(nu_) * nse_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            m_use[static_cast<std::size_t>(row_u_[r]) * nse_ + row_se_[r]] += c_[r];
        i_use_ = 0.0;
        for (int u = 0; u < nu_; ++u)
            for (int se = 0; se < nse_; ++se) {
                const double m = m_use[static_cast<std::size_t>(u) * nse_ + se];
                if (m > 0.0)
                    i_use_ += m * std::log2(m / (m_u_[static_cast<std::size_t>(u)] *
                                                 tilde_[static_cast<std::size_t>(se)]));
            }
        i_use_ = std::max(i_use_, 0.0);
        std::fill(q_true_.begin(), q_true_.end(), 0.0);
        for (int se = 0; se < nse_; ++se)
            for (int sa = 0; sa < nsa_; ++sa) {
                const double w = p_sesa_[static_cast<std::size_t>(se) * nsa_ + sa];
                if (w <= 0.0) continue;
                for (int x = 0; x < nx_; ++x)
                    q_true_[static_cast<std::size_t>(x) * nsa_ + sa] +=
                        w * tx_[static_cast<std::size_t>(se) * nx_ + x];
            }
        for (std::size_t ar = 0; ar < arows_; ++ar)
            for (int y = 0; y < ny_; ++y)
                attack_cost_[ar * ny_ + y] =
                    q_true_[ar] * dist_[static_cast<std::size_t>(ar / nsa_) * ny_ + y];
        std::fill(k_cap_.begin(), k_cap_.end(), 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (c_[r] <= 0.0) continue;
            const int se = row_se_[r];
            const int x = row_x_[r];
            const int u = row_u_[r];
            for (int sa = 0; sa < nsa_; ++sa)
                for (int sd = 0; sd < nsd_; ++sd) {
                    const double w =
                        psasd_[(static_cast<std::size_t>(se) * nsa_ + sa) * nsd_ + sd];
                    if (w <= 0.0) continue;
                    k_cap_[((static_cast<std::size_t>(u) * nsd_ + sd) * nx_ + x) * nsa_ + sa] +=
                        c_[r] * w;
                }
        }
    }

    // Divergence-gain functional I(U;Y,Sd) - I(U;Se) of the hypothesis joint.
    double compute_j(const std::vector<double>& tchan) {
        std::fill(m_uysd_.begin(), m_uysd_.end(), 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const std::size_t u = static_cast<std::size_t>(row_u_[r]);
            const double* row = &tchan[r * cols_];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = row[cc];
                if (tv <= 0.0) continue;
                m_uysd_[(u * nsd_ + col_sd_[cc]) * ny_ + col_y_[cc]] += cr * tv;
            }
        }
        return finish_j();
    }

    double cdmc_value(const std::vector<double>& tchan, const std::vector<double>& attack) {
        double v = 0.0;
        for (int se = 0; se < nse_; ++se) {
            const double tl = tilde_[static_cast<std::size_t>(se)];
            if (tl <= 0.0) continue;
            const double ps = p_se_[static_cast<std::size_t>(se)];
            if (ps <= 0.0) return kInf;
            v += tl * std::log2(tl / ps);
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int se = row_se_[r];
            const int x = row_x_[r];
            const double* row = &tchan[r * cols_];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = row[cc];
                if (tv <= 0.0) continue;
                const double ref =
                    psasd_[(static_cast<std::size_t>(se) * nsa_ + col_sa_[cc]) * nsd_ +
                           col_sd_[cc]] *
                    attack[(static_cast<std::size_t>(x) * nsa_ + col_sa_[cc]) * ny_ + col_y_[cc]];
                if (ref <= 0.0) return kInf;
                v += cr * tv * std::log2(tv / ref);
            }
        }
        const double j = compute_j(tchan);
        return v + pos_part(j - rate_);
    }

    // Requires marginals from a cdmc_value/compute_j call at the same point.
    void cdmc_grad(const std::vector<double>& tchan, const std::vector<double>& attack,
                   bool penalty_active, std::vector<double>& grad) const {
        grad.assign(rows_ * cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (c_[r] <= 0.0) continue;
            const int se = row_se_[r];
            const int x = row_x_[r];
            const std::size_t u = static_cast<std::size_t>(row_u_[r]);
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = tchan[r * cols_ + cc];
                const double ref =
                    psasd_[(static_cast<std::size_t>(se) * nsa_ + col_sa_[cc]) * nsd_ +
                           col_sd_[cc]] *
                    attack[(static_cast<std::size_t>(x) * nsa_ + col_sa_[cc]) * ny_ + col_y_[cc]];
                double g = clamp_log2_ratio(tv, ref);
                if (penalty_active) {
                    const double m = m_uysd_[(u * nsd_ + col_sd_[cc]) * ny_ + col_y_[cc]];
                    const double den = m_u_[u] * m_ysd_[static_cast<std::size_t>(col_sd_[cc]) * ny_ +
                                                        col_y_[cc]];
                    g += clamp_log2_ratio(m, den);
                }
                grad[r * cols_ + cc] = g;
            }
        }
    }

    double cam_value(const std::vector<double>& tchan) {
        std::fill(tilde_state_.begin(), tilde_state_.end(), 0.0);
        std::fill(m_xsa_.begin(), m_xsa_.end(), 0.0);
        std::fill(m_xsay_.begin(), m_xsay_.end(), 0.0);
        std::fill(m_big_.begin(), m_big_.end(), 0.0);
        std::fill(m_uysd_.begin(), m_uysd_.end(), 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int se = row_se_[r];
            const int x = row_x_[r];
            const int u = row_u_[r];
            const double* row = &tchan[r * cols_];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = row[cc];
                if (tv <= 0.0) continue;
                const double T = cr * tv;
                const int sa = col_sa_[cc];
                const int sd = col_sd_[cc];
                const int y = col_y_[cc];
                tilde_state_[(static_cast<std::size_t>(se) * nsa_ + sa) * nsd_ + sd] += T;
                const std::size_t ar = static_cast<std::size_t>(x) * nsa_ + sa;
                m_xsa_[ar] += T;
                m_xsay_[ar * ny_ + y] += T;
                m_big_[((static_cast<std::size_t>(se) * nsd_ + sd) * nu_ + u) * arows_ + ar] += T;
                m_uysd_[(static_cast<std::size_t>(u) * nsd_ + sd) * ny_ + y] += T;
            }
        }
        double v = 0.0;
        for (std::size_t i = 0; i < tilde_state_.size(); ++i) {
            const double ts = tilde_state_[i];
            if (ts <= 0.0) continue;
            const double ps = p_state_[i];
            if (ps <= 0.0) return kInf;
            v += ts * std::log2(ts / ps);
        }
        // Conditional information leaked through the coupling:
        // I(Y; U,Se,Sd | X,Sa) of the hypothesis joint.
        double icond = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int se = row_se_[r];
            const int x = row_x_[r];
            const int u = row_u_[r];
            const double* row = &tchan[r * cols_];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = row[cc];
                if (tv <= 0.0) continue;
                const double T = cr * tv;
                const int sa = col_sa_[cc];
                const int sd = col_sd_[cc];
                const int y = col_y_[cc];
                const std::size_t ar = static_cast<std::size_t>(x) * nsa_ + sa;
                const double num = T * m_xsa_[ar];
                const double den =
                    m_xsay_[ar * ny_ + y] *
                    m_big_[((static_cast<std::size_t>(se) * nsd_ + sd) * nu_ + u) * arows_ + ar];
                icond += T * std::log2(num / den);
            }
        }
        icond = std::max(icond, 0.0);
        const double j = finish_j();
        return v + icond + pos_part(j - rate_);
    }

    // Requires marginals from a cam_value call at the same point.
    void cam_grad(const std::vector<double>& tchan, bool penalty_active,
                  std::vector<double>& grad) const {
        grad.assign(rows_ * cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int se = row_se_[r];
            const int x = row_x_[r];
            const int u = row_u_[r];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = tchan[r * cols_ + cc];
                const double T = cr * tv;
                const int sa = col_sa_[cc];
                const int sd = col_sd_[cc];
                const int y = col_y_[cc];
                const std::size_t sidx = (static_cast<std::size_t>(se) * nsa_ + sa) * nsd_ + sd;
                const std::size_t ar = static_cast<std::size_t>(x) * nsa_ + sa;
                double g = clamp_log2_ratio(tilde_state_[sidx], p_state_[sidx]);
                g += clamp_log2_ratio(
                    T * m_xsa_[ar],
                    m_xsay_[ar * ny_ + y] *
                        m_big_[((static_cast<std::size_t>(se) * nsd_ + sd) * nu_ + u) * arows_ +
                               ar]);
                if (penalty_active) {
                    const double m =
                        m_uysd_[(static_cast<std::size_t>(u) * nsd_ + sd) * ny_ + y];
                    const double den = m_u_[static_cast<std::size_t>(u)] *
                                       m_ysd_[static_cast<std::size_t>(sd) * ny_ + y];
                    g += clamp_log2_ratio(m, den);
                }
                grad[r * cols_ + cc] = g;
            }
        }
    }

    // Output-side weights w(x, sa, y) of the hypothesis joint.
    void attack_weights(const std::vector<double>& tchan, std::vector<double>& w) const {
        w.assign(arows_ * ny_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int x = row_x_[r];
            const double* row = &tchan[r * cols_];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = row[cc];
                if (tv <= 0.0) continue;
                w[(static_cast<std::size_t>(x) * nsa_ + col_sa_[cc]) * ny_ + col_y_[cc]] +=
                    cr * tv;
            }
        }
    }

    // Fills only the (x,sa) and (x,sa,y) marginals (cheap feasibility pass).
    void cam_light(const std::vector<double>& tchan) {
        std::fill(m_xsa_.begin(), m_xsa_.end(), 0.0);
        std::fill(m_xsay_.begin(), m_xsay_.end(), 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int x = row_x_[r];
            const double* row = &tchan[r * cols_];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = row[cc];
                if (tv <= 0.0) continue;
                const std::size_t ar = static_cast<std::size_t>(x) * nsa_ + col_sa_[cc];
                m_xsa_[ar] += cr * tv;
                m_xsay_[ar * ny_ + col_y_[cc]] += cr * tv;
            }
        }
    }

    // Channel induced by the hypothesis joint; rows without mass fall back to
    // the cheapest output (the minimum-distortion completion).
    void induced_attack_rows(std::vector<double>& out) const {
        out.assign(arows_ * ny_, 0.0);
        for (std::size_t ar = 0; ar < arows_; ++ar) {
            const int x = static_cast<int>(ar / static_cast<std::size_t>(nsa_));
            if (m_xsa_[ar] > 1e-300) {
                double total = 0.0;
                for (int y = 0; y < ny_; ++y) total += m_xsay_[ar * ny_ + y];
                for (int y = 0; y < ny_; ++y) out[ar * ny_ + y] = m_xsay_[ar * ny_ + y] / total;
            } else {
                int best = 0;
                for (int y = 1; y < ny_; ++y)
                    if (dist_[static_cast<std::size_t>(x) * ny_ + y] <
                        dist_[static_cast<std::size_t>(x) * ny_ + best])
                        best = y;
                out[ar * ny_ + best] = 1.0;
            }
        }
    }

    // Distortion of the induced channel under the true input law.
    double induced_distortion() const {
        double total = 0.0;
        for (std::size_t ar = 0; ar < arows_; ++ar) {
            const int x = static_cast<int>(ar / static_cast<std::size_t>(nsa_));
            if (q_true_[ar] <= 0.0) continue;
            if (m_xsa_[ar] > 1e-300) {
                double row = 0.0;
                for (int y = 0; y < ny_; ++y)
                    row += (m_xsay_[ar * ny_ + y] / m_xsa_[ar]) *
                           dist_[static_cast<std::size_t>(x) * ny_ + y];
                total += q_true_[ar] * row;
            } else {
                double best = dist_[static_cast<std::size_t>(x) * ny_];
                for (int y = 1; y < ny_; ++y)
                    best = std::min(best, dist_[static_cast<std::size_t>(x) * ny_ + y]);
                total += q_true_[ar] * best;
            }
        }
        return total;
    }

    // Gain functional evaluated at the factorized joint (state law coupled
    // with a memoryless output channel).
    double capacity_j(const std::vector<double>& attack) {
        std::fill(m_uysd_.begin(), m_uysd_.end(), 0.0);
        for (int u = 0; u < nu_; ++u)
            for (int sd = 0; sd < nsd_; ++sd)
                for (int x = 0; x < nx_; ++x)
                    for (int sa = 0; sa < nsa_; ++sa) {
                        const double k =
                            k_cap_[((static_cast<std::size_t>(u) * nsd_ + sd) * nx_ + x) * nsa_ +
                                   sa];
                        if (k <= 0.0) continue;
                        const std::size_t ar = static_cast<std::size_t>(x) * nsa_ + sa;
                        for (int y = 0; y < ny_; ++y) {
                            const double av = attack[ar * ny_ + y];
                            if (av > 0.0)
                                m_uysd_[(static_cast<std::size_t>(u) * nsd_ + sd) * ny_ + y] +=
                                    k * av;
                        }
                    }
        return finish_j();
    }

    // Requires marginals from a capacity_j call at the same attack.
    void capacity_j_grad(std::vector<double>& grad) const {
        grad.assign(arows_ * ny_, 0.0);
        for (int u = 0; u < nu_; ++u)
            for (int sd = 0; sd < nsd_; ++sd)
                for (int x = 0; x < nx_; ++x)
                    for (int sa = 0; sa < nsa_; ++sa) {
                        const double k =
                            k_cap_[((static_cast<std::size_t>(u) * nsd_ + sd) * nx_ + x) * nsa_ +
                                   sa];
                        if (k <= 0.0) continue;
                        const std::size_t ar = static_cast<std::size_t>(x) * nsa_ + sa;
                        for (int y = 0; y < ny_; ++y) {
                            const double m =
                                m_uysd_[(static_cast<std::size_t>(u) * nsd_ + sd) * ny_ + y];
                            const double den =
                                m_u_[static_cast<std::size_t>(u)] *
                                m_ysd_[static_cast<std::size_t>(sd) * ny_ + y];
                            grad[ar * ny_ + y] += k * clamp_log2_ratio(m, den);
                        }
                    }
    }

    // Factorized hypothesis: the conditional state law tensored with an
    // output channel. Rows normalize to one by construction.
    void factorized_hypothesis(const std::vector<double>& attack,
                               std::vector<double>& tchan) const {
        tchan.assign(rows_ * cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const int se = row_se_[r];
            const int x = row_x_[r];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                tchan[r * cols_ + cc] =
                    psasd_[(static_cast<std::size_t>(se) * nsa_ + col_sa_[cc]) * nsd_ +
                           col_sd_[cc]] *
                    attack[(static_cast<std::size_t>(x) * nsa_ + col_sa_[cc]) * ny_ + col_y_[cc]];
            }
        }
    }

    // I(X,U; Sa,Sd | Se) of the hypothesis joint: the exact difference between
    // the unconstrained-form objective at the induced channel and the
    // constrained-form objective.
    double coupling_gap(const std::vector<double>& tchan) {
        std::fill(tilde_state_.begin(), tilde_state_.end(), 0.0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int se = row_se_[r];
            for (std::size_t cc = 0; cc < cols_; ++cc) {
                const double tv = tchan[r * cols_ + cc];
                if (tv <= 0.0) continue;
                tilde_state_[(static_cast<std::size_t>(se) * nsa_ + col_sa_[cc]) * nsd_ +
                             col_sd_[cc]] += cr * tv;
            }
        }
        double gap = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            const double cr = c_[r];
            if (cr <= 0.0) continue;
            const int se = row_se_[r];
            for (int sa = 0; sa < nsa_; ++sa)
                for (int sd = 0; sd < nsd_; ++sd) {
                    double g = 0.0;
                    for (int y = 0; y < ny_; ++y)
                        g += tchan[r * cols_ + (static_cast<std::size_t>(sa) * nsd_ + sd) * ny_ +
                                   y];
                    g *= cr;
                    if (g <= 0.0) continue;
                    const double den =
                        cr *
                        tilde_state_[(static_cast<std::size_t>(se) * nsa_ + sa) * nsd_ + sd];
                    gap += g * std::log2(g * tilde_[static_cast<std::size_t>(se)] / den);
                }
        }
        return std::max(gap, 0.0);
    }

private:
    double finish_j() {
        std::fill(m_ysd_.begin(), m_ysd_.end(), 0.0);
        for (int u = 0; u < nu_; ++u)
            for (int sd = 0; sd < nsd_; ++sd)
                for (int y = 0; y < ny_; ++y)
                    m_ysd_[static_cast<std::size_t>(sd) * ny_ + y] +=
                        m_uysd_[(static_cast<std::size_t>(u) * nsd_ + sd) * ny_ + y];
        double i = 0.0;
        for (int u = 0; u < nu_; ++u)
            for (int sd = 0; sd < nsd_; ++sd)
                for (int y = 0; y < ny_; ++y) {
                    const double m = m_uysd_[(static_cast<std::size_t>(u) * nsd_ + sd) * ny_ + y];
                    if (m > 0.0)
                        i += m * std::log2(m / (m_u_[static_cast<std::size_t>(u)] *
                                                m_ysd_[static_cast<std::size_t>(sd) * ny_ + y]));
                }
        i = std::max(i, 0.0);
        last_j_ = i - i_use_;
        return last_j_;
    }

    int nse_, nsa_, nsd_, nu_, nx_, ny_;
    std::size_t rows_ = 0, cols_ = 0, arows_ = 0;
    double rate_ = 0.0, d1_ = 0.0, d2_ = 0.0;
    std::vector<double> p_state_, p_se_, p_sesa_, psasd_, dist_, cost_;
    std::vector<int> row_se_, row_x_, row_u_, col_sa_, col_sd_, col_y_;
    std::vector<double> tilde_, t_, tx_, c_, q_true_, attack_cost_, k_cap_;
    std::vector<char> row_active_;
    double i_use_ = 0.0, last_j_ = 0.0;
    std::vector<double> m_u_, m_uysd_, m_ysd_, m_xsa_, m_xsay_, m_big_, tilde_state_;
};

// ---------------------------------------------------------------------------
// Mirror descent on the hypothesis channel (multiplicative updates per row,
// with backtracking on the step size). value_fn may repair its argument in
// place; it must leave the evaluator marginals matching the returned point.
// ---------------------------------------------------------------------------

using ValueFn = std::function<double(std::vector<double>&)>;
using GradFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;

void eg_minimize(std::vector<double>& tchan, double& value_cur, int iters, std::size_t rows,
                 std::size_t cols, const std::vector<char>& row_active, const ValueFn& value_fn,
                 const GradFn& grad_fn) {
    std::vector<double> grad(rows * cols);
    std::vector<double> cand(rows * cols);
    double step = 0.5;
    for (int it = 0; it < iters; ++it) {
        grad_fn(tchan, grad);
        bool accepted = false;
        for (int attempt = 0; attempt < 4 && !accepted; ++attempt) {
            cand = tchan;
            for (std::size_t r = 0; r < rows; ++r) {
                if (!row_active[r]) continue;
                double total = 0.0;
                for (std::size_t cc = 0; cc < cols; ++cc) {
                    const double tv = tchan[r * cols + cc];
                    if (tv <= 0.0) {
                        cand[r * cols + cc] = 0.0;
                        continue;
                    }
                    const double e = std::clamp(-step * grad[r * cols + cc], -200.0, 200.0);
                    const double nv = tv * std::exp2(e);
                    cand[r * cols + cc] = nv;
                    total += nv;
                }
                if (total > 0.0) {
                    for (std::size_t cc = 0; cc < cols; ++cc) cand[r * cols + cc] /= total;
                } else {
                    for (std::size_t cc = 0; cc < cols; ++cc)
                        cand[r * cols + cc] = tchan[r * cols + cc];
                }
            }
            const double v = value_fn(cand);
            if (v < value_cur - kAcceptSlack) {
                tchan.swap(cand);
                value_cur = v;
                step = std::min(step * 1.3, 64.0);
                accepted = true;
            } else {
                step *= 0.45;
            }
        }
        if (!accepted) {
            value_fn(tchan); // restore marginals at the incumbent
            if (step < 1e-10) break;
        }
    }
}

struct InnerResult {
    double value = kInf;
    std::vector<double> tchan;
    std::vector<double> attack;
};

// Projected gradient descent of the gain functional over the distortion ball;
// returns the attacking channel found (used as the capacity inner solver and
// as a candidate generator for the exponent solvers).
std::vector<double> minimize_j_over_ball(Evaluator& ev, std::vector<double> attack, int iters) {
    const std::size_t ar = ev.arows();
    const std::size_t ny = static_cast<std::size_t>(ev.ny());
    project_rows_to_polytope(attack, ar, ny, ev.attack_cost(), ev.d2());
    double j = ev.capacity_j(attack);
    std::vector<double> grad;
    std::vector<double> cand;
    double step = 0.5;
    for (int it = 0; it < iters; ++it) {
        ev.capacity_j_grad(grad);
        bool accepted = false;
        for (int attempt = 0; attempt < 4 && !accepted; ++attempt) {
            cand = attack;
            for (std::size_t i = 0; i < cand.size(); ++i) cand[i] -= step * grad[i];
            project_rows_to_polytope(cand, ar, ny, ev.attack_cost(), ev.d2());
            const double jc = ev.capacity_j(cand);
            if (jc < j - kAcceptSlack) {
                attack.swap(cand);
                j = jc;
                step = std::min(step * 1.4, 32.0);
                accepted = true;
            } else {
                step *= 0.5;
            }
        }
        if (!accepted) {
            ev.capacity_j(attack);
            if (step < 1e-11) break;
        }
    }
    ev.capacity_j(attack); // leave marginals at the returned point
    return attack;
}

std::vector<double> uniform_attack_seed(const Evaluator& ev) {
    // Strictly positive feasible channel: the exact best response to uniform
    // output weights within the distortion ball.
    std::vector<double> w(ev.arows() * static_cast<std::size_t>(ev.ny()), 1.0);
    return weighted_ce_best_response(w, ev.attack_cost(), ev.arows(),
                                     static_cast<std::size_t>(ev.ny()), ev.d2());
}

// Inner solver, compound adversary: joint minimization over the hypothesis
// channel and a channel from the distortion ball (alternating exact
// best-response steps with mirror descent).
InnerResult inner_compound_ball(Evaluator& ev, int rounds, int iters) {
    const std::size_t rows = ev.rows();
    const std::size_t cols = ev.cols();
    InnerResult best;
    std::vector<double> attack = uniform_attack_seed(ev);
    std::vector<double> tchan;
    ev.factorized_hypothesis(attack, tchan);
    double vcur = ev.cdmc_value(tchan, attack);
    auto track = [&](double v, const std::vector<double>& tc, const std::vector<double>& at) {
        if (v < best.value) {
            best.value = v;
            best.tchan = tc;
            best.attack = at;
        }
    };
    track(vcur, tchan, attack);
    {
        // Candidate built from the channel minimizing the gain functional:
        // above capacity this pair drives the objective to zero exactly.
        std::vector<double> aj = minimize_j_over_ball(ev, attack, std::max(20, iters));
        std::vector<double> cand;
        ev.factorized_hypothesis(aj, cand);
        const double vj = ev.cdmc_value(cand, aj);
        track(vj, cand, aj);
        if (vj < vcur) {
            tchan = cand;
            attack = aj;
            vcur = vj;
        }
    }
    std::vector<double> w;
    std::vector<double> cand;
    for (int round = 0; round < rounds; ++round) {
        ev.attack_weights(tchan, w);
        attack = weighted_ce_best_response(w, ev.attack_cost(), ev.arows(),
                                           static_cast<std::size_t>(ev.ny()), ev.d2());
        vcur = ev.cdmc_value(tchan, attack);
        ev.factorized_hypothesis(attack, cand);
        const double vfact = ev.cdmc_value(cand, attack);
        if (vfact < vcur) {
            tchan = cand;
            vcur = vfact;
        }
        ev.cdmc_value(tchan, attack); // marginals at the incumbent
        eg_minimize(
            tchan, vcur, iters, rows, cols, ev.row_active(),
            [&](std::vector<double>& point) { return ev.cdmc_value(point, attack); },
            [&](const std::vector<double>& point, std::vector<double>& g) {
                ev.cdmc_grad(point, attack, ev.last_j() > ev.rate(), g);
            });
        track(vcur, tchan, attack);
    }
    return best;
}

// Inner solver, compound adversary with an explicitly fixed channel.
InnerResult inner_compound_fixed(Evaluator& ev, const std::vector<double>& attack, int iters) {
    InnerResult out;
    out.attack = attack;
    ev.factorized_hypothesis(attack, out.tchan);
    out.value = ev.cdmc_value(out.tchan, attack);
    eg_minimize(
        out.tchan, out.value, iters, ev.rows(), ev.cols(), ev.row_active(),
        [&](std::vector<double>& point) { return ev.cdmc_value(point, attack); },
        [&](const std::vector<double>& point, std::vector<double>& g) {
            ev.cdmc_grad(point, attack, ev.last_j() > ev.rate(), g);
        });
    return out;
}

// Inner solver, adversary with arbitrary memoryless strategies: minimization
// over hypothesis joints whose induced output channel stays inside the
// distortion ball. Infeasible candidates are repaired by mixing toward the
// factorized identity-output joint, whose induced distortion is minimal.
InnerResult inner_arbitrary(Evaluator& ev, int rounds, int iters) {
    const std::size_t rows = ev.rows();
    const std::size_t cols = ev.cols();
    std::vector<double> anchor;
    {
        std::vector<double> ident(ev.arows() * static_cast<std::size_t>(ev.ny()), 0.0);
        const int ny = ev.ny();
        const int nsa = ev.nsa();
        for (std::size_t r = 0; r < ev.arows(); ++r) {
            const int x = static_cast<int>(r / static_cast<std::size_t>(nsa));
            ident[r * static_cast<std::size_t>(ny) + std::min(x, ny - 1)] = 1.0;
        }
        ev.factorized_hypothesis(ident, anchor);
    }
    std::vector<double> blend(rows * cols);
    auto repair = [&](std::vector<double>& point) {
        ev.cam_light(point);
        if (ev.induced_distortion() <= ev.d2() + kDistortionSlack) return;
        double lo = 0.0;
        double hi = 1.0;
        for (int k = 0; k < 60; ++k) {
            const double mid = 0.5 * (lo + hi);
            for (std::size_t i = 0; i < point.size(); ++i)
                blend[i] = (1.0 - mid) * point[i] + mid * anchor[i];
            ev.cam_light(blend);
            if (ev.induced_distortion() <= ev.d2() + kDistortionSlack) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        for (std::size_t i = 0; i < point.size(); ++i)
            point[i] = (1.0 - hi) * point[i] + hi * anchor[i];
        ev.cam_light(point);
        if (ev.induced_distortion() > ev.d2() + 1e-9) point = anchor;
    };
    ValueFn value_fn = [&](std::vector<double>& point) {
        repair(point);
        return ev.cam_value(point);
    };
    GradFn grad_fn = [&](const std::vector<double>& point, std::vector<double>& g) {
        ev.cam_grad(point, ev.last_j() > ev.rate(), g);
    };

    InnerResult best;
    auto track = [&](double v, const std::vector<double>& tc) {
        if (v < best.value) {
            best.value = v;
            best.tchan = tc;
        }
    };
    std::vector<double> attack0 = uniform_attack_seed(ev);
    std::vector<double> tchan;
    ev.factorized_hypothesis(attack0, tchan);
    double vcur = value_fn(tchan);
    track(vcur, tchan);
    {
        // Candidate built from the channel minimizing the gain functional:
        // ties the exponent to the capacity saddle point.
        std::vector<double> aj = minimize_j_over_ball(ev, attack0, std::max(20, iters));
        std::vector<double> cand;
        ev.factorized_hypothesis(aj, cand);
        const double vc = value_fn(cand);
        track(vc, cand);
        if (vc < vcur) {
            tchan = cand;
            vcur = vc;
        }
        ev.cam_value(tchan); // marginals at the incumbent
    }
    std::vector<double> w;
    for (int round = 0; round < rounds; ++round) {
        eg_minimize(tchan, vcur, iters, rows, cols, ev.row_active(), value_fn, grad_fn);
        track(vcur, tchan);
        // Proxy exact step: factorize through the best response to the
        // current output weights, which always lands inside the ball.
        ev.attack_weights(tchan, w);
        std::vector<double> ap = weighted_ce_best_response(
            w, ev.attack_cost(), ev.arows(), static_cast<std::size_t>(ev.ny()), ev.d2());
        std::vector<double> cand;
        ev.factorized_hypothesis(ap, cand);
        const double vc = value_fn(cand);
        track(vc, cand);
        if (vc < vcur) {
            tchan = cand;
            vcur = vc;
        } else {
            ev.cam_value(tchan);
        }
    }
    ev.cam_light(best.tchan);
    ev.induced_attack_rows(best.attack);
    return best;
}

InnerResult solve_inner(Evaluator& ev, ChannelModel model, const AttackClass& attacks,
                        int rounds, int iters,
                        const std::vector<std::vector<double>>& finite_members) {
    if (model == ChannelModel::Arbitrary) return inner_arbitrary(ev, rounds, iters);
    if (attacks.kind == AttackClass::Kind::Finite) {
        InnerResult best;
        for (const auto& member : finite_members) {
            InnerResult r = inner_compound_fixed(ev, member, rounds * iters);
            if (r.value < best.value) best = std::move(r);
        }
        return best;
    }
    return inner_compound_ball(ev, rounds, iters);
}

// ---------------------------------------------------------------------------
// Middle level: population search over the transmit channel.
// ---------------------------------------------------------------------------

SimplexProductSpace make_transmit_space(const ScenarioSpec& spec) {
    SimplexProductSpace space;
    const int block = spec.x_size * spec.u_size;
    space.blocks.assign(static_cast<std::size_t>(spec.se_size), SimplexBlock{block, 0.0});
    const std::vector<double> p_se = spec.se_marginal();
    LinearConstraint cost;
    cost.coeffs.assign(static_cast<std::size_t>(spec.se_size) * block, 0.0);
    for (int se = 0; se < spec.se_size; ++se)
        for (int x = 0; x < spec.x_size; ++x)
            for (int u = 0; u < spec.u_size; ++u)
                cost.coeffs[(static_cast<std::size_t>(se) * spec.x_size + x) * spec.u_size + u] =
                    p_se[static_cast<std::size_t>(se)] * spec.cost_at(se, x);
    cost.bound = spec.D1 + 1e-12;
    space.constraints.push_back(std::move(cost));
    // Anchor: cheapest deterministic transmit (lowest-cost input per state).
    space.anchor.assign(static_cast<std::size_t>(spec.se_size) * block, 0.0);
    double anchor_cost = 0.0;
    for (int se = 0; se < spec.se_size; ++se) {
        int bx = 0;
        for (int x = 1; x < spec.x_size; ++x)
            if (spec.cost_at(se, x) < spec.cost_at(se, bx)) bx = x;
        space.anchor[(static_cast<std::size_t>(se) * spec.x_size + bx) * spec.u_size] = 1.0;
        anchor_cost += p_se[static_cast<std::size_t>(se)] * spec.cost_at(se, bx);
    }
    if (anchor_cost > spec.D1 + kFeasibilitySlack)
        throw CostInfeasible("no transmit channel satisfies the cost budget");
    return space;
}

void push_warm(std::vector<std::vector<double>>& pool, const std::vector<double>& candidate,
               std::size_t protected_prefix = 2, std::size_t cap = 7) {
    for (const auto& p : pool) {
        if (p.size() != candidate.size()) continue;
        double diff = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) diff = std::max(diff, std::fabs(p[i] - candidate[i]));
        if (diff < 1e-12) return;
    }
    pool.push_back(candidate);
    if (pool.size() > cap && pool.size() > protected_prefix)
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(
                                      std::min(protected_prefix, pool.size() - 1)));
}

struct PointEval {
    double value = kInf;
    std::vector<double> transmit;
    std::vector<double> restart_values;
};

PointEval solve_middle(const Evaluator& base, const SimplexProductSpace& space,
                       ChannelModel model, const AttackClass& attacks,
                       const std::vector<std::vector<double>>& finite_members,
                       const SolverOptions& opts, const std::vector<double>& tilde,
                       std::uint64_t stage_tag, std::uint64_t grid_index, int n_restarts,
                       std::vector<std::vector<double>>& warm_pool,
                       std::size_t warm_protect = 2) {
    PointEval out;
    // An outer hypothesis prior charging states the true law never produces
    // costs an infinite divergence regardless of the transmit channel.
    for (std::size_t se = 0; se < tilde.size(); ++se) {
        if (tilde[se] > 0.0 && base.p_se()[se] <= 0.0) {
            out.value = kInf;
            out.transmit = space.anchor;
            out.restart_values.assign(static_cast<std::size_t>(n_restarts), kInf);
            return out;
        }
    }
    Objective objective = [&](const std::vector<double>& t) {
        Evaluator ev = base;
        ev.set_state(tilde, t);
        return solve_inner(ev, model, attacks, opts.alt_rounds, opts.eg_iters, finite_members)
            .value;
    };
    double best = -kInf;
    for (int k = 0; k < n_restarts; ++k) {
        GaConfig cfg = opts.transmit_ga;
        cfg.seed = derive_seed(opts.seed, {stage_tag, grid_index, static_cast<std::uint64_t>(k)});
        GaResult res = optimize(objective, space, cfg, OptSense::Maximize, warm_pool);
        out.restart_values.push_back(res.value);
        if (res.value > best) {
            best = res.value;
            out.transmit = std::move(res.best);
        }
    }
    out.value = best;
    push_warm(warm_pool, out.transmit, warm_protect, warm_protect + 5);
    return out;
}

std::vector<std::vector<double>> flatten_finite_members(const ScenarioSpec& spec,
                                                        const AttackClass& attacks) {
    std::vector<std::vector<double>> members;
    if (attacks.kind != AttackClass::Kind::Finite) return members;
    if (attacks.members.empty())
        throw ConfigError("finite attack class must list at least one channel");
    const std::size_t rows = static_cast<std::size_t>(spec.x_size) * spec.sa_size;
    const std::size_t cols = static_cast<std::size_t>(spec.y_size);
    for (const auto& m : attacks.members) {
        if (m.rows() != rows || m.cols() != cols)
            throw ConfigError("finite attack class member has the wrong shape");
        members.push_back(m.values());
    }
    return members;
}

struct OuterBest {
    double grid_min = kInf;
    PointEval point;
    std::vector<double> tilde;
};

ExponentResult er_solve(const ExponentProblem& problem, ChannelModel model) {
    const ScenarioSpec& spec = problem.spec;
    spec.validate();
    const SolverOptions& opts = problem.solver;
    opts.validate();
    if (model == ChannelModel::Arbitrary && problem.attacks.kind == AttackClass::Kind::Finite)
        throw ConfigError("finite attack classes apply only to the compound model");
    const auto finite_members = flatten_finite_members(spec, problem.attacks);
    Evaluator base(spec, problem.rate);
    SimplexProductSpace space = make_transmit_space(spec);
    std::vector<std::vector<double>> warm_pool{space.anchor};
    {
        // Below capacity the per-transmit inner value is zero on most of the
        // transmit polytope and positive only around the capacity-achieving
        // saddle; seeding the search there keeps the middle maximization from
        // stalling on the flat region.
        SolverOptions cap_opts = opts;
        cap_opts.restarts = std::max(2, opts.restarts / 2);
        const CapacityResult cap = capacity_CL(spec, cap_opts, problem.attacks);
        push_warm(warm_pool, cap.transmit, 1);
    }
    const std::size_t transmit_len =
        static_cast<std::size_t>(spec.se_size) * spec.x_size * spec.u_size;
    for (const auto& w : opts.transmit_warm_starts) {
        if (w.size() != transmit_len)
            throw ConfigError("transmit warm start has the wrong length");
        push_warm(warm_pool, w, warm_pool.size() + 1, warm_pool.size() + 8);
    }
    const std::size_t warm_protect = warm_pool.size();

    OuterBest incumbent;
    auto consider = [&](const std::vector<double>& tilde, PointEval&& pe) {
        incumbent.grid_min = std::min(incumbent.grid_min, pe.value);
        if (incumbent.tilde.empty() || pe.value < incumbent.point.value) {
            incumbent.point = std::move(pe);
            incumbent.tilde = tilde;
        }
    };

    const int nse = spec.se_size;
    if (nse == 1) {
        std::vector<double> tilde{1.0};
        consider(tilde, solve_middle(base, space, model, problem.attacks, finite_members, opts,
                                     tilde, 0, 0, opts.restarts, warm_pool, warm_protect));
    } else if (nse == 2) {
        auto run_stage = [&](std::uint64_t stage_tag, double lo, double hi, double step,
                             int n_restarts) {
            if (step <= 0.0) return;
            lo = std::max(0.0, lo);
            hi = std::min(1.0, hi);
            std::uint64_t idx = 0;
            for (double tau = lo; tau <= hi + 1e-12; tau += step, ++idx) {
                const double tv = std::min(tau, 1.0);
                std::vector<double> tilde{1.0 - tv, tv};
                consider(tilde, solve_middle(base, space, model, problem.attacks, finite_members,
                                             opts, tilde, stage_tag, idx, n_restarts,
                                             warm_pool, warm_protect));
            }
        };
        const int stage1_restarts = std::max(1, opts.restarts / 2);
        run_stage(1, 0.0, 1.0, opts.outer_coarse, stage1_restarts);
        double center = incumbent.tilde.empty() ? 0.5 : incumbent.tilde[1];
        run_stage(2, center - opts.outer_coarse, center + opts.outer_coarse, opts.outer_mid,
                  opts.restarts);
        center = incumbent.tilde.empty() ? 0.5 : incumbent.tilde[1];
        run_stage(3, center - opts.outer_mid, center + opts.outer_mid, opts.outer_fine,
                  opts.restarts);
    } else {
        // General outer prior: population search over the prior simplex with a
        // refinement pass at the best point found.
        SimplexProductSpace prior_space;
        prior_space.blocks = {SimplexBlock{nse, 0.0}};
        prior_space.anchor = base.p_se();
        GaConfig prior_cfg;
        prior_cfg.population = 16;
        prior_cfg.generations = 14;
        prior_cfg.elite_count = 2;
        prior_cfg.mutation_scale = 0.08;
        prior_cfg.mutation_rate = 0.3;
        prior_cfg.stall_patience = 8;
        prior_cfg.seed = derive_seed(opts.seed, {4u});
        Objective prior_obj = [&](const std::vector<double>& tilde) {
            return solve_middle(base, space, model, problem.attacks, finite_members, opts, tilde,
                                4, 0, 1, warm_pool, warm_protect)
                .value;
        };
        GaResult pres = optimize(prior_obj, prior_space, prior_cfg, OptSense::Minimize);
        consider(pres.best, solve_middle(base, space, model, problem.attacks, finite_members,
                                         opts, pres.best, 5, 0, opts.restarts, warm_pool,
                                         warm_protect));
    }

    if (incumbent.tilde.empty())
        throw SolverError("exponent solver: no outer grid point was evaluated");

    // Deep inner pass for witnesses (and a sharper value) at the incumbent.
    Evaluator ev = base;
    ev.set_state(incumbent.tilde, incumbent.point.transmit);
    const int wr = opts.refine ? opts.refine_rounds : opts.alt_rounds;
    const int wi = opts.refine ? opts.refine_eg_iters : opts.eg_iters;
    InnerResult witness = solve_inner(ev, model, problem.attacks, wr, wi, finite_members);

    ExponentResult out;
    // The objective is a sum of divergences and a positive part, hence
    // nonnegative; tiny negative values are floating-point residue.
    out.value = std::max(0.0, std::min(witness.value, incumbent.grid_min));
    out.tilde_p_se = incumbent.tilde;
    out.transmit = incumbent.point.transmit;
    out.hypothesis = std::move(witness.tchan);
    out.attack = std::move(witness.attack);
    out.restart_values = incumbent.point.restart_values;
    return out;
}

// Generic shrinking pattern search over a closed interval.
double pattern_search_1d(const std::function<double(double)>& f, double x, double lo, double hi,
                         double h0, int rounds, bool maximize) {
    double fx = f(x);
    double h = h0;
    for (int k = 0; k < rounds; ++k) {
        bool moved = false;
        for (const double cand : {std::max(lo, x - h), std::min(hi, x + h)}) {
            const double fc = f(cand);
            if ((maximize && fc > fx + 1e-15) || (!maximize && fc < fx - 1e-15)) {
                x = cand;
                fx = fc;
                moved = true;
            }
        }
        if (!moved) h *= 0.5;
        if (h < 1e-9) break;
    }
    return x;
}

} // namespace

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

ChannelModel channel_model_from_name(const std::string& name) {
    if (name == "cdmc" || name == "compound") return ChannelModel::Compound;
    if (name == "cam" || name == "arbitrary") return ChannelModel::Arbitrary;
    throw ConfigError("unknown channel model: " + name);
}

std::string channel_model_name(ChannelModel model) {
    return model == ChannelModel::Compound ? "cdmc" : "cam";
}

SolverOptions SolverOptions::defaults() {
    SolverOptions o;
    o.transmit_ga.population = 32;
    o.transmit_ga.generations = 40;
    o.transmit_ga.elite_count = 2;
    o.transmit_ga.mutation_scale = 0.08;
    o.transmit_ga.mutation_rate = 0.25;
    o.transmit_ga.crossover_rate = 0.7;
    o.transmit_ga.stall_patience = 14;
    return o;
}

SolverOptions SolverOptions::fast() {
    SolverOptions o = defaults();
    o.transmit_ga.population = 14;
    o.transmit_ga.generations = 14;
    o.transmit_ga.stall_patience = 8;
    o.restarts = 2;
    o.alt_rounds = 2;
    o.eg_iters = 20;
    o.refine_rounds = 4;
    o.refine_eg_iters = 30;
    o.outer_coarse = 0.1;
    o.outer_mid = 0.02;
    o.outer_fine = 0.0;
    return o;
}

void SolverOptions::validate() const {
    transmit_ga.validate();
    if (restarts < 1) throw ConfigError("solver options: restarts must be at least 1");
    if (alt_rounds < 1 || eg_iters < 1)
        throw ConfigError("solver options: inner budgets must be positive");
    if (refine && (refine_rounds < 1 || refine_eg_iters < 1))
        throw ConfigError("solver options: refine budgets must be positive");
    if (outer_coarse <= 0.0) throw ConfigError("solver options: coarse grid step must be positive");
}

CapacityResult capacity_CL(const ScenarioSpec& spec, const SolverOptions& opts,
                           const AttackClass& attacks) {
    spec.validate();
    opts.validate();
    const auto finite_members = flatten_finite_members(spec, attacks);
    Evaluator base(spec, 0.0);
    SimplexProductSpace space = make_transmit_space(spec);
    const std::vector<double> p_se = spec.se_marginal();

    auto worst_j = [&](Evaluator& ev, int iters) {
        if (!finite_members.empty()) {
            double j = kInf;
            for (const auto& m : finite_members) j = std::min(j, ev.capacity_j(m));
            return j;
        }
        const std::vector<double> a1 = minimize_j_over_ball(ev, uniform_attack_seed(ev), iters);
        const double j1 = ev.capacity_j(a1);
        std::vector<double> ident(ev.arows() * static_cast<std::size_t>(ev.ny()), 0.0);
        for (std::size_t r = 0; r < ev.arows(); ++r) {
            const int x = static_cast<int>(r / static_cast<std::size_t>(ev.nsa()));
            ident[r * static_cast<std::size_t>(ev.ny()) + std::min(x, ev.ny() - 1)] = 1.0;
        }
        const std::vector<double> a2 = minimize_j_over_ball(ev, std::move(ident), iters);
        const double j2 = ev.capacity_j(a2);
        return std::min(j1, j2);
    };

    Objective objective = [&](const std::vector<double>& t) {
        Evaluator ev = base;
        ev.set_state(p_se, t);
        return worst_j(ev, 80);
    };

    std::vector<std::vector<double>> warm{space.anchor};
    {
        std::vector<double> uniform(space.dimension(),
                                    1.0 / static_cast<double>(spec.x_size * spec.u_size));
        warm.push_back(decode_candidate(space, uniform));
    }
    for (const auto& w : opts.transmit_warm_starts) {
        if (w.size() != space.dimension())
            throw ConfigError("transmit warm start has the wrong length");
        push_warm(warm, w, warm.size() + 1, warm.size() + 8);
    }
    const std::size_t warm_protect = warm.size();
    CapacityResult out;
    double best = -kInf;
    for (int k = 0; k < opts.restarts; ++k) {
        GaConfig cfg = opts.transmit_ga;
        cfg.seed = derive_seed(opts.seed, {7001u, static_cast<std::uint64_t>(k)});
        GaResult res = optimize(objective, space, cfg, OptSense::Maximize, warm);
        out.restart_values.push_back(res.value);
        if (res.value > best) {
            best = res.value;
            out.transmit = res.best;
        }
        push_warm(warm, res.best, warm_protect, warm_protect + 5);
    }
    // Re-solve the worst channel at the chosen transmit with a deeper budget;
    // the reported value is that of the witness pair, never the (possibly
    // optimistic) search-stage estimate.
    Evaluator ev = base;
    ev.set_state(p_se, out.transmit);
    if (!finite_members.empty()) {
        double j = kInf;
        for (const auto& m : finite_members) {
            const double jm = ev.capacity_j(m);
            if (jm < j) {
                j = jm;
                out.attack = m;
            }
        }
        out.value = j;
    } else {
        out.attack = minimize_j_over_ball(ev, uniform_attack_seed(ev), 300);
        out.value = std::min(best, ev.capacity_j(out.attack));
    }
    return out;
}

std::vector<double> embed_transmit(const std::vector<double>& transmit, int se_size,
                                   int x_size, int u_from, int u_to) {
    if (se_size < 1 || x_size < 1 || u_from < 1 || u_to < u_from)
        throw ConfigError("embed_transmit: invalid alphabet sizes");
    const std::size_t expect =
        static_cast<std::size_t>(se_size) * x_size * u_from;
    if (transmit.size() != expect)
        throw ConfigError("embed_transmit: transmit has the wrong length");
    std::vector<double> out(static_cast<std::size_t>(se_size) * x_size * u_to, 0.0);
    for (int se = 0; se < se_size; ++se)
        for (int x = 0; x < x_size; ++x)
            for (int u = 0; u < u_from; ++u)
                out[(static_cast<std::size_t>(se) * x_size + x) * u_to + u] =
                    transmit[(static_cast<std::size_t>(se) * x_size + x) * u_from + u];
    return out;
}

ExponentResult er_cdmc(const ExponentProblem& problem) {
    return er_solve(problem, ChannelModel::Compound);
}

ExponentResult er_cam(const ExponentProblem& problem) {
    return er_solve(problem, ChannelModel::Arbitrary);
}

std::vector<SweepRow> sweep_rates(const ExponentProblem& problem,
                                  const std::vector<double>& rates) {
    const CapacityResult cap = capacity_CL(problem.spec, problem.solver, problem.attacks);
    std::vector<SweepRow> out;
    out.reserve(rates.size());
    for (const double r : rates) {
        ExponentProblem p = problem;
        p.rate = r;
        const ExponentResult res = er_solve(p, problem.model);
        out.push_back(SweepRow{r, res.value, cap.value});
    }
    return out;
}

double g_star(double d1, double d2) {
    if (d1 < 0.0 || d1 > 1.0 || d2 < 0.0 || d2 > 0.5)
        throw ConfigError("g_star: budgets must satisfy 0 <= D1 <= 1 and 0 <= D2 <= 1/2");
    const double hb2 = binary_entropy(d2);
    if (d1 > 0.5) return 1.0 - hb2;
    const double delta2 = 1.0 - std::exp2(-hb2);
    if (d1 >= delta2) return binary_entropy(d1) - hb2;
    // Below the tangency point the value grows linearly from zero.
    return (d1 / delta2) * (binary_entropy(delta2) - hb2);
}

double c_priv(double d1, double d2) {
    if (d1 < 0.0 || d1 > 1.0 || d2 < 0.0 || d2 > 0.5)
        throw ConfigError("c_priv: budgets must satisfy 0 <= D1 <= 1 and 0 <= D2 <= 1/2");
    return binary_entropy(star(d1, d2)) - binary_entropy(d2);
}

double er_cam_pub_closed(double rate, double d1, double d2) {
    return pos_part(g_star(d1, d2) - rate);
}

double er_cam_deg_closed(double rate, double d1, double d2) {
    return pos_part(g_star(d1, d2) - rate);
}

namespace {

// Shared single-user machinery: min over hypothesis channels tilde(y|x) of
// D(tilde || channel | p_x) + |I(p_x, tilde) - R|+.
double dmc_exponent_fixed(double rate, const std::vector<double>& p_x,
                          const std::vector<double>& chan, std::size_t nx, std::size_t ny) {
    std::vector<double> m_y(ny, 0.0);
    auto value = [&](const std::vector<double>& t) {
        double d = 0.0;
        std::fill(m_y.begin(), m_y.end(), 0.0);
        for (std::size_t x = 0; x < nx; ++x) {
            if (p_x[x] <= 0.0) continue;
            for (std::size_t y = 0; y < ny; ++y) {
                const double tv = t[x * ny + y];
                if (tv <= 0.0) continue;
                if (chan[x * ny + y] <= 0.0) return kInf;
                d += p_x[x] * tv * std::log2(tv / chan[x * ny + y]);
                m_y[y] += p_x[x] * tv;
            }
        }
        double info = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            if (p_x[x] <= 0.0) continue;
            for (std::size_t y = 0; y < ny; ++y) {
                const double tv = t[x * ny + y];
                if (tv > 0.0) info += p_x[x] * tv * std::log2(tv / m_y[y]);
            }
        }
        info = std::max(info, 0.0);
        return d + pos_part(info - rate);
    };
    std::vector<char> active(nx, 0);
    for (std::size_t x = 0; x < nx; ++x) active[x] = p_x[x] > 0.0 ? 1 : 0;
    auto run = [&](std::vector<double> t) {
        double v = value(t);
        eg_minimize(
            t, v, 300, nx, ny, active, [&](std::vector<double>& point) { return value(point); },
            [&](const std::vector<double>& point, std::vector<double>& g) {
                g.assign(nx * ny, 0.0);
                // Marginals recomputed by the preceding value() call.
                const bool pen = [&] {
                    double info = 0.0;
                    for (std::size_t x = 0; x < nx; ++x)
                        for (std::size_t y = 0; y < ny; ++y) {
                            const double tv = point[x * ny + y];
                            if (p_x[x] > 0.0 && tv > 0.0)
                                info += p_x[x] * tv * std::log2(tv / m_y[y]);
                        }
                    return info > rate;
                }();
                for (std::size_t x = 0; x < nx; ++x) {
                    if (p_x[x] <= 0.0) continue;
                    for (std::size_t y = 0; y < ny; ++y) {
                        const double tv = point[x * ny + y];
                        double gg = clamp_log2_ratio(tv, chan[x * ny + y]);
                        if (pen) gg += clamp_log2_ratio(tv, m_y[y]);
                        g[x * ny + y] = gg;
                    }
                }
            });
        return v;
    };
    // Starting points: the channel itself, its output profile replicated per
    // input (zero information), the uniform channel, and two random draws.
    double best = value(chan);
    std::vector<double> mix(nx * ny);
    {
        std::vector<double> m0(ny, 0.0);
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y) m0[y] += p_x[x] * chan[x * ny + y];
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < ny; ++y) mix[x * ny + y] = m0[y];
        best = std::min(best, value(mix));
        best = std::min(best, run(mix));
    }
    {
        std::vector<double> t = chan;
        for (auto& v : t) v = 0.999 * v + 0.001 / static_cast<double>(ny);
        best = std::min(best, run(t));
    }
    best = std::min(best, run(std::vector<double>(nx * ny, 1.0 / static_cast<double>(ny))));
    RngStream rng(20240811u);
    for (int k = 0; k < 2; ++k) {
        std::vector<double> t(nx * ny);
        for (std::size_t x = 0; x < nx; ++x) {
            double s = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                t[x * ny + y] = -std::log(std::max(rng.uniform(), 1e-300));
                s += t[x * ny + y];
            }
            for (std::size_t y = 0; y < ny; ++y) t[x * ny + y] /= s;
        }
        best = std::min(best, run(std::move(t)));
    }
    return best;
}

} // namespace

double dmc_exponent(double rate, const std::vector<double>& p_x, const CondPmf& channel) {
    const std::size_t nx = channel.rows();
    const std::size_t ny = channel.cols();
    if (p_x.size() != nx) throw ConfigError("dmc_exponent: input law has the wrong length");
    double total = 0.0;
    for (const double v : p_x) {
        if (v < 0.0) throw ConfigError("dmc_exponent: input law has a negative entry");
        total += v;
    }
    if (std::fabs(total - 1.0) > 1e-9)
        throw ConfigError("dmc_exponent: input law must sum to one");
    if (rate < 0.0) throw ConfigError("dmc_exponent: rate must be nonnegative");
    return dmc_exponent_fixed(rate, p_x, channel.values(), nx, ny);
}

double compound_dmc_exponent(double rate, const std::vector<double>& p_x,
                             const std::vector<CondPmf>& channel_class) {
    if (channel_class.empty())
        throw ConfigError("compound_dmc_exponent: the channel class must be nonempty");
    double best = kInf;
    for (const auto& chan : channel_class) best = std::min(best, dmc_exponent(rate, p_x, chan));
    return best;
}

double private_wm_exponent(double rate, double d1, double d2) {
    if (rate < 0.0) throw ConfigError("private_wm_exponent: rate must be nonnegative");
    if (d1 < 0.0 || d1 > 1.0 || d2 < 0.0 || d2 > 1.0)
        throw ConfigError("private_wm_exponent: budgets must lie in [0, 1]");
    // Binary uniform shared state; transmit picks p(x|s) under expected
    // Hamming cost d1; the adversary picks p(y|x,s) inside the ball of
    // expected Hamming distortion d2 under those weights; payoff is
    // I(S;Y|X) + |I(X;Y|S) - R|+.
    const std::size_t rows = 4; // (x, s)
    const std::size_t cols = 2;
    std::vector<double> w(rows, 0.0), coeffs(rows * cols, 0.0);
    auto inner = [&](double t0, double t1) {
        // w(x, s): row layout r = x * 2 + s.
        w[0] = 0.5 * (1.0 - t0); // x=0,s=0
        w[1] = 0.5 * t1;         // x=0,s=1
        w[2] = 0.5 * t0;         // x=1,s=0
        w[3] = 0.5 * (1.0 - t1); // x=1,s=1
        for (std::size_t r = 0; r < rows; ++r) {
            const std::size_t x = r / 2;
            for (std::size_t y = 0; y < cols; ++y)
                coeffs[r * cols + y] = w[r] * ((x == y) ? 0.0 : 1.0);
        }
        const double px0 = w[0] + w[1];
        const double px1 = w[2] + w[3];
        const double ps = 0.5;
        auto value = [&](const std::vector<double>& t) {
            // m_x(y) = sum_s p(s|x) t(y|x,s); m_s(y) = sum_x p(x|s) t(y|x,s).
            double i1 = 0.0, i2 = 0.0;
            double mx[2][2] = {{0, 0}, {0, 0}};
            double ms[2][2] = {{0, 0}, {0, 0}};
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t x = r / 2, s = r % 2;
                const double px = (x == 0) ? px0 : px1;
                if (px <= 0.0 || w[r] <= 0.0) continue;
                for (std::size_t y = 0; y < cols; ++y) {
                    mx[x][y] += (w[r] / px) * t[r * cols + y];
                    ms[s][y] += (w[r] / ps) * t[r * cols + y];
                }
            }
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t x = r / 2, s = r % 2;
                if (w[r] <= 0.0) continue;
                for (std::size_t y = 0; y < cols; ++y) {
                    const double tv = t[r * cols + y];
                    if (tv <= 0.0) continue;
                    i1 += w[r] * tv * std::log2(tv / mx[x][y]);
                    i2 += w[r] * tv * std::log2(tv / ms[s][y]);
                }
            }
            i1 = std::max(i1, 0.0);
            i2 = std::max(i2, 0.0);
            return i1 + pos_part(i2 - rate);
        };
        auto grad_at = [&](const std::vector<double>& t, std::vector<double>& g) {
            double mx[2][2] = {{0, 0}, {0, 0}};
            double ms[2][2] = {{0, 0}, {0, 0}};
            double i2 = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t x = r / 2, s = r % 2;
                const double px = (x == 0) ? px0 : px1;
                if (px <= 0.0 || w[r] <= 0.0) continue;
                for (std::size_t y = 0; y < cols; ++y) {
                    mx[x][y] += (w[r] / px) * t[r * cols + y];
                    ms[s][y] += (w[r] / ps) * t[r * cols + y];
                }
            }
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t s = r % 2;
                if (w[r] <= 0.0) continue;
                for (std::size_t y = 0; y < cols; ++y) {
                    const double tv = t[r * cols + y];
                    if (tv > 0.0) i2 += w[r] * tv * std::log2(tv / ms[s][y]);
                }
            }
            const bool pen = i2 > rate;
            g.assign(rows * cols, 0.0);
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t x = r / 2, s = r % 2;
                if (w[r] <= 0.0) continue;
                for (std::size_t y = 0; y < cols; ++y) {
                    const double tv = t[r * cols + y];
                    double gg = w[r] * clamp_log2_ratio(tv, mx[x][y]);
                    if (pen) gg += w[r] * clamp_log2_ratio(tv, ms[s][y]);
                    g[r * cols + y] = gg;
                }
            }
        };
        auto run = [&](std::vector<double> t) {
            project_rows_to_polytope(t, rows, cols, coeffs, d2);
            double v = value(t);
            double step = 0.5;
            std::vector<double> g, cand;
            for (int it = 0; it < 150; ++it) {
                grad_at(t, g);
                bool acc = false;
                for (int attempt = 0; attempt < 4 && !acc; ++attempt) {
                    cand = t;
                    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] -= step * g[i];
                    project_rows_to_polytope(cand, rows, cols, coeffs, d2);
                    const double vc = value(cand);
                    if (vc < v - kAcceptSlack) {
                        t.swap(cand);
                        v = vc;
                        step = std::min(step * 1.4, 16.0);
                        acc = true;
                    } else {
                        step *= 0.5;
                    }
                }
                if (!acc && step < 1e-11) break;
            }
            return v;
        };
        double best = kInf;
        best = std::min(best, run({1, 0, 1, 0, 0, 1, 0, 1})); // identity output
        best = std::min(best, run(std::vector<double>(rows * cols, 0.5)));
        best = std::min(best, run({0, 1, 0, 1, 1, 0, 1, 0})); // flipped output
        return best;
    };
    // Outer maximization over (t0, t1) with (t0 + t1)/2 <= d1.
    const double cap = std::min(1.0, 2.0 * d1);
    double best = -kInf, bt0 = 0.0, bt1 = 0.0;
    const double step = 0.02;
    for (double t0 = 0.0; t0 <= cap + 1e-12; t0 += step)
        for (double t1 = 0.0; t1 <= cap + 1e-12; t1 += step) {
            if (0.5 * (t0 + t1) > d1 + 1e-12) continue;
            const double v = inner(std::min(t0, 1.0), std::min(t1, 1.0));
            if (v > best) {
                best = v;
                bt0 = t0;
                bt1 = t1;
            }
        }
    // Local polish along each coordinate, keeping the cost feasible.
    for (int sweep = 0; sweep < 3; ++sweep) {
        bt0 = pattern_search_1d(
            [&](double t0) {
                if (0.5 * (t0 + bt1) > d1 + 1e-12) return -kInf;
                return inner(t0, bt1);
            },
            bt0, 0.0, std::min(1.0, cap), 0.01, 24, true);
        bt1 = pattern_search_1d(
            [&](double t1) {
                if (0.5 * (bt0 + t1) > d1 + 1e-12) return -kInf;
                return inner(bt0, t1);
            },
            bt1, 0.0, std::min(1.0, cap), 0.01, 24, true);
        best = std::max(best, inner(bt0, bt1));
    }
    return best;
}

double jamming_exponent(double rate, double d2) {
    if (rate < 0.0) throw ConfigError("jamming_exponent: rate must be nonnegative");
    if (d2 < 0.0 || d2 > 1.0) throw ConfigError("jamming_exponent: weight budget must lie in [0, 1]");
    auto mi2 = [](double q00, double q01, double q10, double q11) {
        const double r0 = q00 + q01, r1 = q10 + q11;
        const double c0 = q00 + q10, c1 = q01 + q11;
        double i = 0.0;
        if (q00 > 0.0) i += q00 * std::log2(q00 / (r0 * c0));
        if (q01 > 0.0) i += q01 * std::log2(q01 / (r0 * c1));
        if (q10 > 0.0) i += q10 * std::log2(q10 / (r1 * c0));
        if (q11 > 0.0) i += q11 * std::log2(q11 / (r1 * c1));
        return std::max(i, 0.0);
    };
    // Joint q over (x, s) with q_X(1) = a fixed, q_S(1) = b <= d2 free, and
    // free coupling tau = q(1,1). The noisy word is z = x xor s.
    auto point_value = [&](double a, double b, double tau) {
        const double q11 = tau;
        const double q10 = a - tau;
        const double q01 = b - tau;
        const double q00 = 1.0 - a - b + tau;
        if (q10 < -1e-12 || q01 < -1e-12 || q00 < -1e-12) return kInf;
        const double ixs = mi2(q00, q01, q10, q11);
        // (x, z) joint: x=0 -> z=s ; x=1 -> z = 1 xor s.
        const double ixz = mi2(q00, q01, q11, q10);
        return ixs + pos_part(ixz - rate);
    };
    auto inner = [&](double a) {
        const double bcap = std::min(d2, 1.0);
        double best = kInf, bb = 0.0, btau = 0.0;
        const int nb = 40, nt = 40;
        for (int i = 0; i <= nb; ++i) {
            const double b = bcap * static_cast<double>(i) / nb;
            const double lo = std::max(0.0, a + b - 1.0);
            const double hi = std::min(a, b);
            for (int k = 0; k <= nt; ++k) {
                const double tau = hi <= lo ? lo : lo + (hi - lo) * static_cast<double>(k) / nt;
                const double v = point_value(a, b, tau);
                if (v < best) {
                    best = v;
                    bb = b;
                    btau = tau;
                }
                if (hi <= lo) break;
            }
        }
        // Pattern refinement in (b, tau).
        double h = 0.02;
        for (int k = 0; k < 40; ++k) {
            bool moved = false;
            for (const double db : {-h, 0.0, h})
                for (const double dt : {-h, 0.0, h}) {
                    const double b = std::clamp(bb + db, 0.0, bcap);
                    const double tau =
                        std::clamp(btau + dt, std::max(0.0, a + b - 1.0), std::min(a, b));
                    const double v = point_value(a, b, tau);
                    if (v < best - 1e-15) {
                        best = v;
                        bb = b;
                        btau = tau;
                        moved = true;
                    }
                }
            if (!moved) h *= 0.5;
            if (h < 1e-8) break;
        }
        return best;
    };
    double best = -kInf, ba = 0.5;
    for (double a = 0.0; a <= 1.0 + 1e-12; a += 0.01) {
        const double v = inner(std::min(a, 1.0));
        if (v > best) {
            best = v;
            ba = a;
        }
    }
    ba = pattern_search_1d(inner, ba, 0.0, 1.0, 0.005, 30, true);
    return std::max(best, inner(ba));
}

namespace {

Evaluator make_checked_evaluator(const ScenarioSpec& spec, double rate,
                                 const std::vector<double>& tilde_p_se,
                                 const std::vector<double>& transmit,
                                 const std::vector<double>& hypothesis) {
    spec.validate();
    Evaluator ev(spec, rate);
    if (hypothesis.size() != ev.rows() * ev.cols())
        throw ConfigError("objective evaluator: hypothesis channel has the wrong shape");
    ev.set_state(tilde_p_se, transmit);
    return ev;
}

} // namespace

double cdmc_objective(const ScenarioSpec& spec, double rate,
                      const std::vector<double>& tilde_p_se,
                      const std::vector<double>& transmit,
                      const std::vector<double>& hypothesis,
                      const std::vector<double>& attack) {
    Evaluator ev = make_checked_evaluator(spec, rate, tilde_p_se, transmit, hypothesis);
    if (attack.size() != ev.arows() * static_cast<std::size_t>(ev.ny()))
        throw ConfigError("objective evaluator: attack channel has the wrong shape");
    return ev.cdmc_value(hypothesis, attack);
}

double cam_objective(const ScenarioSpec& spec, double rate,
                     const std::vector<double>& tilde_p_se,
                     const std::vector<double>& transmit,
                     const std::vector<double>& hypothesis) {
    Evaluator ev = make_checked_evaluator(spec, rate, tilde_p_se, transmit, hypothesis);
    return ev.cam_value(hypothesis);
}

std::vector<double> cam_induced_attack(const ScenarioSpec& spec,
                                       const std::vector<double>& tilde_p_se,
                                       const std::vector<double>& transmit,
                                       const std::vector<double>& hypothesis) {
    Evaluator ev = make_checked_evaluator(spec, 0.0, tilde_p_se, transmit, hypothesis);
    ev.cam_light(hypothesis);
    std::vector<double> out;
    ev.induced_attack_rows(out);
    return out;
}

double cam_induced_distortion(const ScenarioSpec& spec,
                              const std::vector<double>& tilde_p_se,
                              const std::vector<double>& transmit,
                              const std::vector<double>& hypothesis) {
    Evaluator ev = make_checked_evaluator(spec, 0.0, tilde_p_se, transmit, hypothesis);
    ev.cam_light(hypothesis);
    return ev.induced_distortion();
}

double hypothesis_coupling_gap(const ScenarioSpec& spec,
                               const std::vector<double>& tilde_p_se,
                               const std::vector<double>& transmit,
                               const std::vector<double>& hypothesis) {
    Evaluator ev = make_checked_evaluator(spec, 0.0, tilde_p_se, transmit, hypothesis);
    return ev.coupling_gap(hypothesis);
}

} // namespace gpexp
