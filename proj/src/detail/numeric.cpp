#include "detail/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace credal::detail {

bool solve_linear(std::vector<double>& a, std::vector<double>& b,
                  std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
    }
    if (std::fabs(a[pivot * n + col]) < 1e-300) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * b[j];
    b[i] = s / a[i * n + i];
  }
  return true;
}

std::vector<double> project_simplex(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> sorted(v);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double prefix = 0.0;
  double theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < n; ++j) {
    prefix += sorted[j];
    const double cand = (1.0 - prefix) / static_cast<double>(j + 1);
    if (sorted[j] + cand > 0.0) {
      rho = j + 1;
      theta = cand;
    }
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = std::max(v[j] + theta, 0.0);
  (void)rho;
  return out;
}

namespace {

// Equality-constrained least squares on a support set: minimizes
// ||V_S q_S - c||^2 with sum q_S = 1, via the KKT system.
bool solve_support(const std::vector<double>& v, std::size_t rows,
                   std::size_t cols, const std::vector<double>& c,
                   const std::vector<std::size_t>& support,
                   std::vector<double>& q_out, double& lambda_out) {
  const std::size_t s = support.size();
  const std::size_t n = s + 1;
  std::vector<double> a(n * n, 0.0);
  std::vector<double> b(n, 0.0);
  for (std::size_t p = 0; p < s; ++p) {
    for (std::size_t r = 0; r <= p; ++r) {
      double dot = 0.0;
      for (std::size_t i = 0; i < rows; ++i)
        dot += v[i * cols + support[p]] * v[i * cols + support[r]];
      a[p * n + r] = dot;
      a[r * n + p] = dot;
    }
    a[p * n + s] = 1.0;
    a[s * n + p] = 1.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < rows; ++i) rhs += v[i * cols + support[p]] * c[i];
    b[p] = rhs;
  }
  b[s] = 1.0;
  if (!solve_linear(a, b, n)) return false;
  q_out.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(s));
  lambda_out = b[s];
  return true;
}

}  // namespace

std::vector<double> simplex_least_squares(const std::vector<double>& v,
                                          std::size_t rows, std::size_t cols,
                                          const std::vector<double>& c) {
  // Start from the single best world.
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < cols; ++t) {
    double val = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      const double d = v[i * cols + t] - c[i];
      val += d * d;
    }
    if (val < best_val) {
      best_val = val;
      best = t;
    }
  }
  std::vector<std::size_t> support{best};
  std::vector<double> q(cols, 0.0);
  q[best] = 1.0;

  const double dual_tol = 1e-11;
  for (int pass = 0; pass < 8 * static_cast<int>(cols) + 16; ++pass) {
    // Inner loop: solve on the current support, trimming negative entries.
    std::vector<double> qs;
    double lambda = 0.0;
    for (int inner = 0; inner < static_cast<int>(cols) + 2; ++inner) {
      if (!solve_support(v, rows, cols, c, support, qs, lambda)) {
        // Singular support (redundant worlds); drop the last added entry.
        if (support.size() <= 1) break;
        support.pop_back();
        continue;
      }
      double min_q = 0.0;
      std::size_t min_at = support.size();
      for (std::size_t p = 0; p < qs.size(); ++p) {
        if (qs[p] < min_q) {
          min_q = qs[p];
          min_at = p;
        }
      }
      if (min_at == support.size()) break;  // feasible on this support
      // Step from the previous feasible q toward qs until the first
      // coordinate hits zero, then remove it.
      double alpha = 1.0;
      for (std::size_t p = 0; p < support.size(); ++p) {
        if (qs[p] < 0.0) {
          const double prev = q[support[p]];
          const double denom = prev - qs[p];
          if (denom > 0.0) alpha = std::min(alpha, prev / denom);
        }
      }
      for (std::size_t p = 0; p < support.size(); ++p) {
        q[support[p]] = std::max(0.0, q[support[p]] + alpha * (qs[p] - q[support[p]]));
      }
      std::vector<std::size_t> next;
      for (std::size_t p = 0; p < support.size(); ++p) {
        if (q[support[p]] > 1e-14) next.push_back(support[p]);
      }
      if (next.empty()) next.push_back(support[min_at == support.size() ? 0 : min_at]);
      support = std::move(next);
    }
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t p = 0; p < support.size(); ++p) q[support[p]] = std::max(qs[p], 0.0);

    // Dual feasibility: residual gradient g_t = v_t . (V q - c); need
    // g_t + lambda >= 0 for all t off the support.
    std::vector<double> resid(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      double y = 0.0;
      for (std::size_t t = 0; t < cols; ++t) y += v[i * cols + t] * q[t];
      resid[i] = y - c[i];
    }
    double worst = -dual_tol;
    std::size_t worst_t = cols;
    for (std::size_t t = 0; t < cols; ++t) {
      if (q[t] > 0.0) continue;
      double g = 0.0;
      for (std::size_t i = 0; i < rows; ++i) g += v[i * cols + t] * resid[i];
      const double mu = g + lambda;
      if (mu < worst) {
        worst = mu;
        worst_t = t;
      }
    }
    if (worst_t == cols) return q;
    support.push_back(worst_t);
  }
  return q;  // active-set cycling is theoretically excluded; best effort
}

double simplex_kkt_residual(const std::vector<double>& g,
                            const std::vector<double>& q, double support_eps) {
  double mu = 0.0;
  double mass = 0.0;
  for (std::size_t t = 0; t < q.size(); ++t) {
    if (q[t] > support_eps) {
      mu += q[t] * g[t];
      mass += q[t];
    }
  }
  if (mass > 0.0) mu /= mass;
  double r = 0.0;
  for (std::size_t t = 0; t < q.size(); ++t) {
    if (q[t] > support_eps) {
      r = std::max(r, std::fabs(g[t] - mu));
    } else {
      r = std::max(r, std::max(0.0, mu - g[t]));
    }
  }
  return r;
}

namespace {

std::vector<double> fd_hessian(const SimplexProblem& problem,
                               const std::vector<double>& q) {
  const std::size_t n = problem.dim;
  const double h = 1e-7;
  std::vector<double> hess(n * n, 0.0);
  std::vector<double> qp(q), qm(q);
  for (std::size_t j = 0; j < n; ++j) {
    qp[j] = q[j] + h;
    qm[j] = std::max(q[j] - h, 1e-300);
    const std::vector<double> gp = problem.gradient(qp);
    const std::vector<double> gm = problem.gradient(qm);
    const double denom = qp[j] - qm[j];
    for (std::size_t i = 0; i < n; ++i) hess[i * n + j] = (gp[i] - gm[i]) / denom;
    qp[j] = q[j];
    qm[j] = q[j];
  }
  // Symmetrize.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = 0.5 * (hess[i * n + j] + hess[j * n + i]);
      hess[i * n + j] = s;
      hess[j * n + i] = s;
    }
  return hess;
}

// Equality-constrained Newton steps on the support identified by the mirror
// descent phase. Accepts a step only when it keeps the iterate strictly
// feasible and decreases the objective.
void newton_polish(const SimplexProblem& problem, std::vector<double>& q,
                   double& f, int& iterations) {
  const std::size_t n = problem.dim;
  for (int round = 0; round < 40; ++round) {
    // Coordinates the first-order phase has driven to the boundary stall the
    // constrained step; drop them when doing so does not hurt the objective.
    double live_mass = 0.0;
    bool truncated = false;
    for (std::size_t t = 0; t < n; ++t) {
      if (q[t] > 1e-9) {
        live_mass += q[t];
      } else if (q[t] > 0.0) {
        truncated = true;
      }
    }
    if (truncated && live_mass > 0.5) {
      std::vector<double> trimmed(q);
      for (double& v : trimmed) v = v > 1e-9 ? v / live_mass : 0.0;
      const double ft = problem.value(trimmed);
      ++iterations;
      if (std::isfinite(ft) && ft <= f + 1e-12) {
        q = std::move(trimmed);
        f = ft;
      }
    }
    std::vector<std::size_t> support;
    for (std::size_t t = 0; t < n; ++t)
      if (q[t] > 1e-12) support.push_back(t);
    if (support.empty()) return;
    const std::size_t s = support.size();
    const std::vector<double> g = problem.gradient(q);
    const std::vector<double> hess =
        problem.hessian ? problem.hessian(q) : fd_hessian(problem, q);
    // KKT system: [H 1; 1' 0] [d; lambda] = [-g; 0] restricted to support.
    const std::size_t dim = s + 1;
    std::vector<double> a(dim * dim, 0.0);
    std::vector<double> b(dim, 0.0);
    for (std::size_t p = 0; p < s; ++p) {
      for (std::size_t r = 0; r < s; ++r)
        a[p * dim + r] = hess[support[p] * n + support[r]];
      a[p * dim + s] = 1.0;
      a[s * dim + p] = 1.0;
      b[p] = -g[support[p]];
    }
    if (!solve_linear(a, b, dim)) return;
    double step_norm = 0.0;
    for (std::size_t p = 0; p < s; ++p) step_norm = std::max(step_norm, std::fabs(b[p]));
    if (step_norm < 1e-15) return;
    bool accepted = false;

    // Largest step before a support coordinate leaves the simplex.
    double beta_max = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < s; ++p) {
      if (b[p] < 0.0) beta_max = std::min(beta_max, q[support[p]] / -b[p]);
    }
    // When the Newton direction drives a coordinate negative, land exactly
    // on that face so the active set can shrink.
    if (beta_max <= 1.0) {
      std::vector<double> cand(q);
      for (std::size_t p = 0; p < s; ++p) {
        cand[support[p]] = std::max(0.0, q[support[p]] + beta_max * b[p]);
      }
      const double fc = problem.value(cand);
      ++iterations;
      if (std::isfinite(fc) && fc <= f) {
        q = std::move(cand);
        f = fc;
        accepted = true;
      }
    }
    if (!accepted) {
      double beta = std::min(1.0, 0.5 * beta_max);
      for (int ls = 0; ls < 40 && !accepted; ++ls, beta *= 0.5) {
        std::vector<double> cand(q);
        bool feasible = true;
        for (std::size_t p = 0; p < s; ++p) {
          cand[support[p]] = q[support[p]] + beta * b[p];
          if (cand[support[p]] < 1e-15) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        const double fc = problem.value(cand);
        ++iterations;
        if (std::isfinite(fc) && fc <= f) {
          q = std::move(cand);
          f = fc;
          accepted = true;
        }
      }
    }
    if (!accepted) {
      // No Newton descent. The surface can be locally concave toward a face
      // (the constrained step then points at a saddle), with the optimum on
      // the face itself: try retiring each small coordinate outright.
      double best_f = f;
      std::vector<double> best_q;
      for (std::size_t p = 0; p < s; ++p) {
        const double qt = q[support[p]];
        if (qt <= 0.0 || qt > 1e-4) continue;
        const double keep = 1.0 - qt;
        if (keep <= 0.5) continue;
        std::vector<double> cand(q);
        cand[support[p]] = 0.0;
        for (double& v : cand) v /= keep;
        const double fc = problem.value(cand);
        ++iterations;
        if (std::isfinite(fc) &&
            fc <= best_f + 1e-14 * (1.0 + std::fabs(best_f))) {
          best_f = std::min(best_f, fc);
          best_q = std::move(cand);
          accepted = true;
        }
      }
      if (accepted) {
        q = std::move(best_q);
        f = problem.value(q);
      }
    }
    if (!accepted) return;
  }
}

}  // namespace

SimplexMinimizeResult minimize_over_simplex(const SimplexProblem& problem,
                                            const SimplexMinimizeOptions& opts) {
  const std::size_t n = problem.dim;
  SimplexMinimizeResult res;
  if (opts.initial.size() == n) {
    res.q = opts.initial;
    for (double& v : res.q) v = std::max(v, 1e-12);
    double total = 0.0;
    for (double v : res.q) total += v;
    for (double& v : res.q) v /= total;
  } else {
    res.q.assign(n, 1.0 / static_cast<double>(n));
  }
  res.value = problem.value(res.q);
  std::vector<double> g = problem.gradient(res.q);

  double bound = 1.0;
  for (double gt : g) bound = std::max(bound, std::fabs(gt));
  double eta = 1.0 / (1.0 + bound);

  int it = 0;
  int stalled = 0;
  bool converged = false;
  while (it < opts.max_iterations) {
    ++it;
    double gmin = g[0];
    for (double gt : g) gmin = std::min(gmin, gt);
    std::vector<double> cand(n);
    double z = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // Exponents are nonpositive after the shift, so no overflow; a floor
      // keeps coordinates strictly positive.
      cand[t] = std::max(res.q[t] * std::exp(-eta * (g[t] - gmin)), 1e-300);
      z += cand[t];
    }
    for (std::size_t t = 0; t < n; ++t) cand[t] /= z;
    const double fc = problem.value(cand);
    if (std::isfinite(fc) && fc <= res.value) {
      const double drop = res.value - fc;
      res.q = std::move(cand);
      res.value = fc;
      g = problem.gradient(res.q);
      eta = std::min(eta * 1.1, 1e8);
      if (drop <= opts.tol * std::max(1.0, std::fabs(res.value))) {
        if (++stalled >= 3) {
          converged = true;
          break;
        }
      } else {
        stalled = 0;
      }
    } else {
      eta *= 0.5;
      if (eta < 1e-18) {
        converged = true;  // no descent direction at float resolution
        break;
      }
    }
  }
  res.iterations = it;
  if (opts.polish) {
    newton_polish(problem, res.q, res.value, res.iterations);
    g = problem.gradient(res.q);
  }
  res.residual = simplex_kkt_residual(g, res.q);
  res.converged = converged || res.residual <= opts.tol;
  return res;
}

}  // namespace credal::detail
