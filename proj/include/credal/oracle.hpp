#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace credal::oracle {

// Independent brute-force minimizers and derivative checkers. These certify
// the closed forms and solvers in the test suites; nothing in the production
// paths depends on them.

enum class Domain { simplex, box };

struct GridResult {
  std::vector<double> point;
  double value = 0.0;
};

/// Exhaustive lattice scan of `objective` over the m-simplex or the unit
/// m-box at the given resolution, followed by two rounds of 10x local
/// refinement around the incumbent. Scan order is deterministic and ties
/// keep the first point visited. Dimensions above 4 throw ScaleError.
GridResult grid_minimize(
    const std::function<double(const std::vector<double>&)>& objective,
    Domain domain, std::size_t dim, double resolution);

/// Max relative error between f_prime and the central finite difference of f
/// (step 1e-6) over the given interior points. The error is measured
/// relative to max(1, |f_prime(x)|).
double finite_diff_check(const std::function<double(double)>& f,
                         const std::function<double(double)>& f_prime,
                         const std::vector<double>& points);

}  // namespace credal::oracle
