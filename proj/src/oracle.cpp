#include "credal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credal/errors.hpp"

namespace credal::oracle {

namespace {

// Scans the lattice {base + i * step : |i| <= half_span per coordinate},
// clipped to [0,1], keeping the first strict minimum in odometer order.
// Simplex mode enumerates the first dim-1 coordinates and derives the last.
void scan(const std::function<double(const std::vector<double>&)>& objective,
          Domain domain, std::size_t dim, const std::vector<double>& base,
          double step, long half_span, std::vector<double>& best_point,
          double& best_value) {
  const std::size_t free_dims = domain == Domain::simplex ? dim - 1 : dim;
  std::vector<long> idx(free_dims, -half_span);
  std::vector<double> point(dim, 0.0);
  while (true) {
    bool valid = true;
    double sum = 0.0;
    for (std::size_t j = 0; j < free_dims && valid; ++j) {
      const double x = base[j] + static_cast<double>(idx[j]) * step;
      if (x < -1e-12 || x > 1.0 + 1e-12) {
        valid = false;
        break;
      }
      point[j] = std::clamp(x, 0.0, 1.0);
      sum += point[j];
    }
    if (valid && domain == Domain::simplex) {
      const double last = 1.0 - sum;
      if (last < -1e-12 || last > 1.0 + 1e-12) {
        valid = false;
      } else {
        point[dim - 1] = std::clamp(last, 0.0, 1.0);
      }
    }
    if (valid) {
      const double value = objective(point);
      if (value < best_value) {
        best_value = value;
        best_point = point;
      }
    }
    std::size_t j = 0;
    for (; j < free_dims; ++j) {
      if (++idx[j] <= half_span) break;
      idx[j] = -half_span;
    }
    if (j == free_dims) break;
  }
}

}  // namespace

GridResult grid_minimize(
    const std::function<double(const std::vector<double>&)>& objective,
    Domain domain, std::size_t dim, double resolution) {
  if (dim == 0 || dim > 4) {
    throw ScaleError("grid_minimize handles dimensions 1 through 4");
  }
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw Error("resolution must lie in (0, 1]");
  }

  GridResult result;
  result.value = std::numeric_limits<double>::infinity();
  const long steps = std::lround(1.0 / resolution);
  const double step = 1.0 / static_cast<double>(steps);

  // Base pass over the whole domain, anchored at the origin; out-of-range
  // offsets are rejected inside the scan.
  std::vector<double> origin(dim, 0.0);
  scan(objective, domain, dim, origin, step, steps, result.point, result.value);

  // Two rounds of 10x local refinement around the incumbent.
  double fine = step;
  for (int round = 0; round < 2; ++round) {
    fine /= 10.0;
    const std::vector<double> centre = result.point;
    scan(objective, domain, dim, centre, fine, 10, result.point, result.value);
  }
  return result;
}

double finite_diff_check(const std::function<double(double)>& f,
                         const std::function<double(double)>& f_prime,
                         const std::vector<double>& points) {
  const double h = 1e-6;
  double worst = 0.0;
  for (double x : points) {
    const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
    const double exact = f_prime(x);
    const double err = std::fabs(fd - exact) / std::max(1.0, std::fabs(exact));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace credal::oracle
