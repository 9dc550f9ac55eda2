#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace credal::detail {

/// Solves A x = b by Gaussian elimination with partial pivoting. A is
/// row-major n x n and modified in place. Returns false on a (numerically)
/// singular pivot.
bool solve_linear(std::vector<double>& a, std::vector<double>& b,
                  std::size_t n);

/// Exact Euclidean projection of v onto the probability simplex, by the
/// sort-based active-set method: out_i = max(v_i + theta, 0) with theta
/// chosen so the positive part sums to one.
std::vector<double> project_simplex(const std::vector<double>& v);

/// Least squares over the simplex: minimizes ||V q - c||^2 subject to
/// q >= 0, sum q = 1, where V is row-major rows x cols. Active-set method
/// with equality-constrained subproblems; finite termination, exact up to
/// linear-algebra precision. Returns q.
std::vector<double> simplex_least_squares(const std::vector<double>& v,
                                          std::size_t rows, std::size_t cols,
                                          const std::vector<double>& c);

/// Stationarity violation of gradient g at q on the simplex: the multiplier
/// is estimated from the support, support coordinates report |g_t - mu| and
/// boundary coordinates report max(0, mu - g_t).
double simplex_kkt_residual(const std::vector<double>& g,
                            const std::vector<double>& q,
                            double support_eps = 1e-10);

struct SimplexProblem {
  std::function<double(const std::vector<double>&)> value;
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
  // Optional analytic Hessian (row-major dim x dim); when absent the polish
  // step differentiates the gradient numerically.
  std::function<std::vector<double>(const std::vector<double>&)> hessian;
  std::size_t dim = 0;
};

struct SimplexMinimizeOptions {
  double tol = 1e-9;          // relative objective decrease
  int max_iterations = 100000;
  bool polish = true;         // Newton refinement on the identified support
  // Starting point; empty means the barycenter.
  std::vector<double> initial;
};

struct SimplexMinimizeResult {
  std::vector<double> q;
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Minimizes a smooth objective over the probability simplex by mirror
/// descent with exponentiated-gradient updates: deterministic barycenter
/// start, step 1/(1+L) from a gradient bound, halved whenever a step fails
/// to decrease the objective. Iterates stay strictly interior. An optional
/// Newton polish on the identified support sharpens the stationarity
/// residual once the first-order loop stalls.
SimplexMinimizeResult minimize_over_simplex(const SimplexProblem& problem,
                                            const SimplexMinimizeOptions& opts);

}  // namespace credal::detail
