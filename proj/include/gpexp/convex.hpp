#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gpexp {

// Euclidean projection onto the probability simplex (in place).
void project_simplex(std::span<double> v);

// Projects every row of p (rows x cols, row-major) onto the simplex and then
// enforces sum(coeffs .* p) <= bound by bisecting the halfspace multiplier.
// coeffs must be entrywise nonnegative (a distortion-type functional).
void project_rows_to_polytope(std::vector<double>& p, std::size_t rows, std::size_t cols,
                              const std::vector<double>& coeffs, double bound);

// argmin over row-stochastic a of -sum_{r,y} w(r,y) log2 a(r,y) subject to
// sum_{r,y} a(r,y) cost(r,y) <= budget. Exact KKT solution via nested
// bisections. Rows with zero weight are set to their cheapest vertex.
std::vector<double> weighted_ce_best_response(const std::vector<double>& w,
                                              const std::vector<double>& cost,
                                              std::size_t rows, std::size_t cols,
                                              double budget);

} // namespace gpexp
