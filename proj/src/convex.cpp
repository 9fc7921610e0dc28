#include "gpexp/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpexp/errors.hpp"

namespace gpexp {

namespace {

constexpr int kRowBisectIters = 90;
constexpr int kBudgetBisectIters = 64;

// Projects row r of p, shifted by -gamma * coeffs, onto the simplex.
void project_shifted_rows(std::vector<double>& out, const std::vector<double>& p,
                          const std::vector<double>& coeffs, double gamma, std::size_t rows,
                          std::size_t cols, std::vector<double>& scratch) {
    for (std::size_t r = 0; r < rows; ++r) {
        scratch.assign(p.begin() + static_cast<std::ptrdiff_t>(r * cols),
                       p.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
        if (gamma != 0.0) {
            for (std::size_t y = 0; y < cols; ++y) scratch[y] -= gamma * coeffs[r * cols + y];
        }
        project_simplex(scratch);
        std::copy(scratch.begin(), scratch.end(), out.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

void project_simplex(std::span<double> v) {
    const std::size_t n = v.size();
    if (n == 0) throw ConfigError("cannot project an empty vector onto the simplex");
    if (n == 1) {
        v[0] = 1.0;
        return;
    }
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cumulative = 0.0;
    double theta = 0.0;
    std::size_t support = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cumulative += u[i];
        const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (u[i] - candidate > 0.0) {
            theta = candidate;
            support = i + 1;
        }
    }
    if (support == 0) {
        // Degenerate input (e.g. NaN); fall back to uniform.
        for (auto& x : v) x = 1.0 / static_cast<double>(n);
        return;
    }
    for (auto& x : v) x = std::max(0.0, x - theta);
    // Exact renormalization guards accumulated rounding.
    double total = 0.0;
    for (const auto& x : v) total += x;
    if (total <= 0.0) {
        for (auto& x : v) x = 1.0 / static_cast<double>(n);
    } else {
        for (auto& x : v) x /= total;
    }
}

void project_rows_to_polytope(std::vector<double>& p, std::size_t rows, std::size_t cols,
                              const std::vector<double>& coeffs, double bound) {
    if (p.size() != rows * cols || coeffs.size() != rows * cols)
        throw ConfigError("row-polytope projection: size mismatch");
    std::vector<double> scratch(cols);
    std::vector<double> candidate(rows * cols);
    project_shifted_rows(candidate, p, coeffs, 0.0, rows, cols, scratch);
    const double slack = 1e-12 * std::max(1.0, std::fabs(bound));
    if (dot(candidate, coeffs) <= bound + slack) {
        p = candidate;
        return;
    }
    // The linear functional of the projection is nonincreasing in gamma; find a
    // bracketing upper endpoint by doubling, then bisect.
    double lo = 0.0;
    double hi = 1.0;
    for (int k = 0; k < 80; ++k) {
        project_shifted_rows(candidate, p, coeffs, hi, rows, cols, scratch);
        if (dot(candidate, coeffs) <= bound + slack) break;
        lo = hi;
        hi *= 2.0;
    }
    project_shifted_rows(candidate, p, coeffs, hi, rows, cols, scratch);
    if (dot(candidate, coeffs) > bound + slack)
        throw SolverError("row-polytope projection: the distortion bound is unattainable");
    for (int k = 0; k < kBudgetBisectIters; ++k) {
        const double mid = 0.5 * (lo + hi);
        project_shifted_rows(candidate, p, coeffs, mid, rows, cols, scratch);
        if (dot(candidate, coeffs) <= bound + slack) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    project_shifted_rows(candidate, p, coeffs, hi, rows, cols, scratch);
    p = candidate;
}

namespace {

// Solves sum_y w(y) / (nu + mu * cost(y)) = 1 for nu on the feasible branch and
// writes the row a(y) = w(y) / (nu + mu * cost(y)).
void solve_row(const double* w, const double* cost, std::size_t cols, double mu, double* out) {
    double wsum = 0.0;
    double min_active_cost = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < cols; ++y) {
        wsum += w[y];
        if (w[y] > 0.0) min_active_cost = std::min(min_active_cost, cost[y]);
    }
    const double barrier = -mu * min_active_cost;
    double lo = barrier + 1e-300 + 1e-15 * std::max(1.0, std::fabs(barrier));
    double hi = std::max(wsum, lo * 2.0 + 1e-12);
    // Ensure F(hi) <= 1 (F is decreasing); F(wsum) <= 1 holds analytically but
    // guard against rounding.
    auto row_sum = [&](double nu) {
        double s = 0.0;
        for (std::size_t y = 0; y < cols; ++y) {
            if (w[y] > 0.0) s += w[y] / (nu + mu * cost[y]);
        }
        return s;
    };
    for (int guard = 0; guard < 60 && row_sum(hi) > 1.0; ++guard) hi = hi * 2.0 + 1.0;
    for (int k = 0; k < kRowBisectIters; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (row_sum(mid) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double nu = 0.5 * (lo + hi);
    double total = 0.0;
    for (std::size_t y = 0; y < cols; ++y) {
        out[y] = (w[y] > 0.0) ? w[y] / (nu + mu * cost[y]) : 0.0;
        total += out[y];
    }
    if (total <= 0.0) throw SolverError("attack best response: degenerate row");
    for (std::size_t y = 0; y < cols; ++y) out[y] /= total;
}

} // namespace

std::vector<double> weighted_ce_best_response(const std::vector<double>& w,
                                              const std::vector<double>& cost,
                                              std::size_t rows, std::size_t cols,
                                              double budget) {
    if (w.size() != rows * cols || cost.size() != rows * cols)
        throw ConfigError("attack best response: size mismatch");
    std::vector<double> a(rows * cols, 0.0);
    std::vector<char> active(rows, 0);
    double base_cost = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double wsum = 0.0;
        for (std::size_t y = 0; y < cols; ++y) wsum += w[r * cols + y];
        if (wsum > 0.0) {
            active[r] = 1;
            continue;
        }
        // Free row: place all mass on the cheapest output (lowest index on ties).
        std::size_t best = 0;
        for (std::size_t y = 1; y < cols; ++y) {
            if (cost[r * cols + y] < cost[r * cols + best]) best = y;
        }
        a[r * cols + best] = 1.0;
        base_cost += cost[r * cols + best];
    }
    auto fill_rows = [&](double mu) {
        double total = base_cost;
        for (std::size_t r = 0; r < rows; ++r) {
            if (!active[r]) continue;
            solve_row(&w[r * cols], &cost[r * cols], cols, mu, &a[r * cols]);
            for (std::size_t y = 0; y < cols; ++y) total += a[r * cols + y] * cost[r * cols + y];
        }
        return total;
    };
    const double slack = 1e-11 * std::max(1.0, std::fabs(budget));
    if (fill_rows(0.0) <= budget + slack) return a;
    double lo = 0.0;
    double hi = 1.0;
    bool bracketed = false;
    for (int k = 0; k < 80; ++k) {
        if (fill_rows(hi) <= budget + slack) {
            bracketed = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if (!bracketed)
        throw SolverError("attack best response: the distortion budget is unattainable");
    for (int k = 0; k < kBudgetBisectIters; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (fill_rows(mid) <= budget + slack) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    fill_rows(hi);
    return a;
}

} // namespace gpexp
