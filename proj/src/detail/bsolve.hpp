#pragma once

#include <cstddef>
#include <vector>

#include "credal/agenda.hpp"
#include "credal/divergence.hpp"

namespace credal::detail {

/// One coordinate of an additive Bregman divergence:
/// phi(x) - phi(y) - phi'(y)(x - y), +inf when phi' diverges at y and x != y.
double bregman_term(const BregmanGenerator& gen, double x, double y);

/// Weighted-average divergence sum_k alpha_k D(first_k, second_k) where one
/// side is fixed; zero-weight agents are skipped entirely.
double weighted_divergence(const BregmanGenerator& gen,
                           const std::vector<std::vector<double>>& credences,
                           const std::vector<double>& weights,
                           const std::vector<double>& candidate, int direction);

struct D1Solution {
  std::vector<double> x;
  double k = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// Solves phi'(x_j) = tbar_j + K (clamped to [0,1]), sum_j x_j = 1, by
/// bisection on K. tbar entries of -inf pin their coordinate to zero.
/// Throws SolverError when no coordinate has a finite slope or the bracket
/// carries no sign change.
D1Solution solve_d1_system(const BregmanGenerator& gen,
                           const std::vector<double>& tbar);

struct D2Solution {
  std::vector<double> x;
  double k = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double objective = 0.0;
};

/// Stationary-system search for the direction-2 repair of c on a partition:
/// (x_j - c_j) phi''(x_j) = K with sum x = 1 and box complementarity. The
/// objective need not be convex in x, so per-coordinate roots are enumerated
/// under every low/middle/high selection policy and candidates compete by
/// objective value. Throws SolverError when no stationary point is found.
D2Solution solve_d2_generic(const BregmanGenerator& gen,
                            const std::vector<double>& c);

/// Minimizes sum_k alpha_k D(V q, c_k) (direction 1) or
/// sum_k alpha_k D(c_k, V q) (direction 2) over distributions q on the
/// agenda's worlds by mirror descent. Worlds incompatible with a divergence
/// staying finite (direction 1 with log-singular generators and zero
/// credences) are excluded up front. Throws SolverError on iteration cap
/// without convergence, carrying the best iterate.
SolveReport minimize_weighted_divergence(
    const BregmanGenerator& gen, const Agenda& agenda,
    const std::vector<std::vector<double>>& credences,
    const std::vector<double>& weights, int direction, double tol,
    int max_iterations);

}  // namespace credal::detail
