#include "detail/bsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <functional>
#include <optional>

#include "detail/numeric.hpp"

namespace credal::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double bregman_term(const BregmanGenerator& gen, double x, double y) {
  if (x == y) return 0.0;
  const double slope = gen.phi_prime(y);
  if (!std::isfinite(slope)) return kInf;
  const double t = gen.phi(x) - gen.phi(y) - slope * (x - y);
  return t < 0.0 && t > -1e-12 ? 0.0 : t;
}

double weighted_divergence(const BregmanGenerator& gen,
                           const std::vector<std::vector<double>>& credences,
                           const std::vector<double>& weights,
                           const std::vector<double>& candidate,
                           int direction) {
  double total = 0.0;
  for (std::size_t k = 0; k < credences.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    double dk = 0.0;
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      dk += direction == 1 ? bregman_term(gen, candidate[j], credences[k][j])
                           : bregman_term(gen, credences[k][j], candidate[j]);
      if (dk == kInf) break;
    }
    total += weights[k] * dk;
    if (total == kInf) return kInf;
  }
  return total;
}

D1Solution solve_d1_system(const BregmanGenerator& gen,
                           const std::vector<double>& tbar) {
  const std::size_t m = tbar.size();
  double tmax = -kInf;
  double tmin = kInf;
  std::size_t finite = 0;
  for (double t : tbar) {
    if (t == -kInf) continue;
    ++finite;
    tmax = std::max(tmax, t);
    tmin = std::min(tmin, t);
  }
  if (finite == 0) {
    throw SolverError(
        "cannot bracket: every coordinate has slope -inf (all mass at zero)");
  }

  int evals = 0;
  const auto sum_at = [&](double k) {
    double s = 0.0;
    for (double t : tbar) {
      if (t == -kInf) continue;
      s += phi_prime_inverse(gen, t + k);
    }
    ++evals;
    return s;
  };

  const double eps = 1e-12;
  double lo = gen.phi_prime(eps) - tmax;
  double hi = gen.phi_prime_limit_one() - tmin;
  const double s_lo = sum_at(lo);
  const double s_hi = sum_at(hi);
  if (s_lo > 1.0 || s_hi < 1.0 - 1e-12) {
    throw SolverError("bisection bracket carries no sign change: S(" +
                      std::to_string(lo) + ")=" + std::to_string(s_lo) +
                      ", S(" + std::to_string(hi) + ")=" + std::to_string(s_hi));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-15 * (1.0 + std::fabs(mid))) break;
    if (sum_at(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  D1Solution sol;
  sol.k = 0.5 * (lo + hi);
  sol.iterations = evals;
  sol.x.resize(m);
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    sol.x[j] = tbar[j] == -kInf ? 0.0 : phi_prime_inverse(gen, tbar[j] + sol.k);
    sum += sol.x[j];
  }
  double stat = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (sol.x[j] <= 1e-9 || sol.x[j] >= 1.0 - 1e-9) continue;
    const double err = std::fabs(gen.phi_prime(sol.x[j]) - tbar[j] - sol.k);
    stat = std::max(stat, err / (1.0 + gen.phi_double_prime(sol.x[j])));
  }
  sol.residual = std::max(stat, std::fabs(sum - 1.0));
  return sol;
}

namespace {

// Direction-2 stationarity value (x - c) phi''(x) at one coordinate.
double d2_g(const BregmanGenerator& gen, double c, double x) {
  return (x - c) * gen.phi_double_prime(x);
}

// Golden-section refinement of an extremum of f inside [lo, hi].
double golden_extremum(const std::function<double(double)>& f, double lo,
                       double hi, bool maximize) {
  const double inv_phi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = maximize ? -f(x1) : f(x1);
  double f2 = maximize ? -f(x2) : f(x2);
  for (int it = 0; it < 90 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = maximize ? -f(x1) : f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = maximize ? -f(x2) : f(x2);
    }
  }
  return 0.5 * (a + b);
}

// The stationarity curve split into monotone segments: breakpoints are the
// refined interior extrema, so each segment carries at most one root per
// level and none can hide between grid points. The fine grid accelerates
// root location inside a segment without generator evaluations.
struct D2Coordinate {
  double c = 0.0;
  std::vector<double> xs;  // fine grid abscissae
  std::vector<double> gs;  // stationarity values on the grid
  struct Segment {
    double x0, g0, x1, g1;   // monotone span
    std::size_t lo, hi;      // grid indices strictly inside (x0, x1); lo > hi means none
  };
  std::vector<Segment> segments;
};

D2Coordinate build_d2_coordinate(const BregmanGenerator& gen, double c,
                                 std::vector<double>& levels) {
  const int cells = 256;
  D2Coordinate co;
  co.c = c;
  co.xs.push_back(1e-13);
  for (int i = 1; i <= cells; ++i) co.xs.push_back(static_cast<double>(i) / cells);
  for (double x : co.xs) {
    co.gs.push_back(d2_g(gen, c, x));
    if (std::isfinite(co.gs.back())) levels.push_back(co.gs.back());
  }
  const auto g_of = [&](double x) { return d2_g(gen, c, x); };
  std::vector<double> bx{co.xs.front()};
  std::vector<double> bg{co.gs.front()};
  for (std::size_t i = 1; i + 1 < co.xs.size(); ++i) {
    const double dl = co.gs[i] - co.gs[i - 1];
    const double dr = co.gs[i + 1] - co.gs[i];
    if ((dl > 0.0 && dr < 0.0) || (dl < 0.0 && dr > 0.0)) {
      const double x_hat = golden_extremum(g_of, co.xs[i - 1], co.xs[i + 1], dl > 0.0);
      const double g_hat = g_of(x_hat);
      if (std::isfinite(g_hat) && x_hat > bx.back() + 1e-12) {
        bx.push_back(x_hat);
        bg.push_back(g_hat);
        levels.push_back(g_hat);
      }
    }
  }
  bx.push_back(1.0);
  bg.push_back(co.gs.back());
  for (std::size_t s = 0; s + 1 < bx.size(); ++s) {
    D2Coordinate::Segment seg;
    seg.x0 = bx[s];
    seg.g0 = bg[s];
    seg.x1 = bx[s + 1];
    seg.g1 = bg[s + 1];
    seg.lo = std::upper_bound(co.xs.begin(), co.xs.end(), seg.x0) - co.xs.begin();
    seg.hi = (std::lower_bound(co.xs.begin(), co.xs.end(), seg.x1) - co.xs.begin());
    seg.hi = seg.hi == 0 ? 0 : seg.hi - 1;
    co.segments.push_back(seg);
  }
  return co;
}

// Unique root of g = k inside a monotone segment. The grid narrows the
// bracket without generator evaluations; `exact` then bisects inside it.
double segment_root(const BregmanGenerator& gen, const D2Coordinate& co,
                    const D2Coordinate::Segment& seg, double k, bool exact,
                    int& evals) {
  const bool increasing = seg.g1 > seg.g0;
  double x_lo = seg.x0;
  double g_lo = seg.g0;
  double x_hi = seg.x1;
  double g_hi = seg.g1;
  if (seg.lo <= seg.hi && seg.hi < co.xs.size()) {
    // Binary search the monotone grid values for the straddling pair.
    std::size_t a = seg.lo;
    std::size_t b = seg.hi;
    if ((increasing ? co.gs[a] : -co.gs[a]) > (increasing ? k : -k)) {
      x_hi = co.xs[a];
      g_hi = co.gs[a];
    } else if ((increasing ? co.gs[b] : -co.gs[b]) < (increasing ? k : -k)) {
      x_lo = co.xs[b];
      g_lo = co.gs[b];
    } else {
      while (b - a > 1) {
        const std::size_t mid = (a + b) / 2;
        if ((increasing ? co.gs[mid] : -co.gs[mid]) < (increasing ? k : -k)) {
          a = mid;
        } else {
          b = mid;
        }
      }
      x_lo = co.xs[a];
      g_lo = co.gs[a];
      x_hi = co.xs[b];
      g_hi = co.gs[b];
    }
  }
  if (!exact) {
    const double span = g_hi - g_lo;
    const double x = span == 0.0 ? x_lo : x_lo + (k - g_lo) * (x_hi - x_lo) / span;
    return std::clamp(x, x_lo, x_hi);
  }
  double sign_lo = g_lo - k;
  for (int it = 0; it < 34 && x_hi - x_lo > 1e-13; ++it) {
    const double mid = 0.5 * (x_lo + x_hi);
    const double gm = d2_g(gen, co.c, mid) - k;
    ++evals;
    if ((gm <= 0.0) == (sign_lo <= 0.0)) {
      x_lo = mid;
      sign_lo = gm;
    } else {
      x_hi = mid;
    }
  }
  return 0.5 * (x_lo + x_hi);
}

// All stationary candidates at level k, ascending: the lower boundary when
// it is KKT-eligible, one root per bracketing monotone segment, and the
// upper boundary when eligible.
std::vector<double> d2_candidates(const BregmanGenerator& gen,
                                  const D2Coordinate& co, double k, bool exact,
                                  int& evals) {
  std::vector<double> out;
  if (co.gs.front() >= k) out.push_back(0.0);
  for (const D2Coordinate::Segment& seg : co.segments) {
    const double a = seg.g0 - k;
    const double b = seg.g1 - k;
    if (a == 0.0) {
      out.push_back(seg.x0);
    } else if (a * b < 0.0) {
      out.push_back(segment_root(gen, co, seg, k, exact, evals));
    }
  }
  if (co.gs.back() <= k) out.push_back(1.0);
  std::vector<double> dedup;
  for (double x : out) {
    if (dedup.empty() || x - dedup.back() > 1e-9) dedup.push_back(x);
  }
  return dedup;
}

std::optional<double> pick(const std::vector<double>& candidates, int rank) {
  if (candidates.empty()) return std::nullopt;
  if (rank == 0) return candidates.front();
  if (rank == 2) return candidates.back();
  return candidates[candidates.size() / 2];
}

// Sharpens an interior line minimum using the derivative sign; value-only
// search cannot locate a smooth minimum beyond ~sqrt(eps).
double polish_line_root(const std::function<double(double)>& deriv, double t,
                        double lo, double hi) {
  const double h = 1e-6;
  double a = std::max(lo, t - h);
  double b = std::min(hi, t + h);
  const double da = deriv(a);
  const double db = deriv(b);
  if (!(da < 0.0) || !(db > 0.0)) return t;  // boundary or flat: keep
  for (int it = 0; it < 80 && b - a > 1e-17; ++it) {
    const double mid = 0.5 * (a + b);
    if (deriv(mid) <= 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Dense scan plus golden refinement of every local minimum; deterministic.
double minimize_line(const std::function<double(double)>& f, double lo,
                     double hi, double& best_value, int samples) {
  if (hi <= lo) {
    best_value = f(lo);
    return lo;
  }
  std::vector<double> vals(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    vals[i] = f(lo + (hi - lo) * i / samples);
  }
  double best_x = lo;
  best_value = vals[0];
  const auto consider = [&](double a, double b) {
    const double x = golden_extremum(f, a, b, false);
    const double v = f(x);
    if (v < best_value) {
      best_value = v;
      best_x = x;
    }
  };
  for (int i = 0; i <= samples; ++i) {
    const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
    const bool right_ok = i == samples || vals[i] <= vals[i + 1];
    if (!left_ok || !right_ok) continue;
    const double a = lo + (hi - lo) * std::max(i - 1, 0) / samples;
    const double b = lo + (hi - lo) * std::min(i + 1, samples) / samples;
    consider(a, b);
  }
  return best_x;
}

}  // namespace

D2Solution solve_d2_generic(const BregmanGenerator& gen,
                            const std::vector<double>& c) {
  const std::size_t m = c.size();
  const double csum = std::accumulate(c.begin(), c.end(), 0.0);

  D2Solution sol;
  // A coherent credence is its own repair: the divergence is zero there and
  // positive everywhere else.
  if (std::fabs(csum - 1.0) <= 1e-12) {
    sol.x = c;
    return sol;
  }
  if (m == 1) {
    sol.x = {1.0};
    sol.k = d2_g(gen, c[0], 1.0);
    sol.objective = bregman_term(gen, c[0], 1.0);
    return sol;
  }

  int evals = 0;

  const auto finish = [&](std::vector<double> x, double k, double objective) {
    sol.x = std::move(x);
    sol.k = k;
    sol.objective = objective;
    sol.iterations = evals;
    double sum = 0.0;
    double stat = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      sum += sol.x[j];
      if (sol.x[j] <= 1e-9 || sol.x[j] >= 1.0 - 1e-9) continue;
      const double err = std::fabs(d2_g(gen, c[j], sol.x[j]) - sol.k);
      stat = std::max(stat, err / (1.0 + std::fabs(gen.phi_double_prime(sol.x[j]))));
    }
    sol.residual = std::max(stat, std::fabs(sum - 1.0));
    return sol;
  };

  const auto interior_k = [&](const std::vector<double>& x) {
    double k = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (x[j] > 1e-9 && x[j] < 1.0 - 1e-9) {
        k += d2_g(gen, c[j], x[j]);
        ++count;
      }
    }
    return count > 0 ? k / static_cast<double>(count) : 0.0;
  };

  // Two cells reduce to a one-dimensional minimization along the simplex.
  if (m == 2) {
    const auto objective = [&](double t) {
      ++evals;
      return bregman_term(gen, c[0], t) + bregman_term(gen, c[1], 1.0 - t);
    };
    const auto slope = [&](double t) {
      return d2_g(gen, c[0], t) - d2_g(gen, c[1], 1.0 - t);
    };
    double value = 0.0;
    double t = minimize_line(objective, 0.0, 1.0, value, 4096);
    t = polish_line_root(slope, t, 0.0, 1.0);
    value = objective(t);
    const std::vector<double> x = {t, 1.0 - t};
    return finish(x, interior_k(x), value);
  }

  std::vector<D2Coordinate> coords;
  std::vector<double> levels;
  coords.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    coords.push_back(build_d2_coordinate(gen, c[j], levels));
  }
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // The candidate structure only changes when K crosses an observed level.
  // Probing at midpoints between consecutive levels visits every regime and
  // never lands a root exactly on a breakpoint.
  std::vector<double> keep;
  const std::size_t cap = 640;
  const std::size_t stride = std::max<std::size_t>(1, levels.size() / cap);
  for (std::size_t i = 0; i < levels.size(); i += stride) keep.push_back(levels[i]);
  if (keep.back() != levels.back()) keep.push_back(levels.back());
  std::vector<double> probes;
  probes.push_back(keep.front() - 1.0);
  for (std::size_t i = 0; i + 1 < keep.size(); ++i) {
    probes.push_back(0.5 * (keep[i] + keep[i + 1]));
  }
  probes.push_back(keep.back() + 1.0);

  // Rank policies: every low/middle/high assignment for small m, a fixed
  // bundle of eight otherwise.
  std::vector<std::vector<int>> policies;
  if (m <= 5) {
    std::size_t count = 1;
    for (std::size_t j = 0; j < m; ++j) count *= 3;
    for (std::size_t p = 0; p < count; ++p) {
      std::vector<int> ranks(m);
      std::size_t v = p;
      for (std::size_t j = 0; j < m; ++j) {
        ranks[j] = static_cast<int>(v % 3);
        v /= 3;
      }
      policies.push_back(std::move(ranks));
    }
  } else {
    for (int p = 0; p < 8; ++p) {
      std::vector<int> ranks(m);
      for (std::size_t j = 0; j < m; ++j) {
        ranks[j] = (p & 1 ? 2 : 0) ^ ((p >> 1 & 1) && j % 2 ? 2 : 0) ^
                   ((p >> 2 & 1) && j + 1 == m ? 2 : 0);
        ranks[j] = std::min(ranks[j], 2);
      }
      policies.push_back(std::move(ranks));
    }
  }

  const auto sum_at = [&](const std::vector<int>& ranks, double k,
                          bool exact) -> std::optional<double> {
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const auto x = pick(d2_candidates(gen, coords[j], k, exact, evals), ranks[j]);
      if (!x) return std::nullopt;
      s += *x;
    }
    return s;
  };

  struct Candidate {
    std::vector<double> x;
    double k;
    double objective;
  };
  std::vector<Candidate> found;

  const auto offer = [&](std::vector<double> x, double k) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      x[j] = std::clamp(x[j], 0.0, 1.0);
      sum += x[j];
    }
    if (std::fabs(sum - 1.0) > 1e-8) return;
    for (const Candidate& prev : found) {
      double gap = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        gap = std::max(gap, std::fabs(prev.x[j] - x[j]));
      if (gap < 1e-7) return;
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < m; ++j) obj += bregman_term(gen, c[j], x[j]);
    if (!std::isfinite(obj)) return;
    found.push_back({std::move(x), k, obj});
  };

  const auto harvest = [&](const std::vector<int>& ranks, double k) {
    std::vector<double> x(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto xj = pick(d2_candidates(gen, coords[j], k, true, evals), ranks[j]);
      if (!xj) return;
      x[j] = *xj;
    }
    offer(std::move(x), k);
  };

  struct PolicyState {
    bool have_prev = false;
    double prev_k = 0.0;
    double prev_s = 0.0;
  };
  std::vector<PolicyState> states(policies.size());
  std::vector<std::vector<double>> lists(m);
  for (double k : probes) {
    for (std::size_t j = 0; j < m; ++j) {
      lists[j] = d2_candidates(gen, coords[j], k, false, evals);
    }
    for (std::size_t p = 0; p < policies.size(); ++p) {
      const std::vector<int>& ranks = policies[p];
      PolicyState& st = states[p];
      double s_val = 0.0;
      bool defined = true;
      for (std::size_t j = 0; j < m; ++j) {
        const auto x = pick(lists[j], ranks[j]);
        if (!x) {
          defined = false;
          break;
        }
        s_val += *x;
      }
      if (!defined) {
        st.have_prev = false;
        continue;
      }
      if (st.have_prev && (st.prev_s - 1.0) * (s_val - 1.0) <= 0.0) {
        // Refine the crossing with exact roots.
        double ka = st.prev_k;
        double kb = k;
        auto sa = sum_at(ranks, ka, true);
        auto sb = sum_at(ranks, kb, true);
        // Scan error can push the exact crossing just outside the probe
        // pair; widen one step on the nearer side.
        if (sa && sb && (*sa - 1.0) * (*sb - 1.0) > 0.0) {
          const double pad = kb - ka;
          if (std::fabs(*sa - 1.0) < std::fabs(*sb - 1.0)) {
            if (const auto widened = sum_at(ranks, ka - pad, true)) {
              ka -= pad;
              sa = widened;
            }
          } else {
            if (const auto widened = sum_at(ranks, kb + pad, true)) {
              kb += pad;
              sb = widened;
            }
          }
        }
        if (sa && sb && (*sa - 1.0) * (*sb - 1.0) <= 0.0) {
          for (int it = 0; it < 48; ++it) {
            const double mid = 0.5 * (ka + kb);
            const auto sm = sum_at(ranks, mid, true);
            if (!sm) break;
            if ((*sm - 1.0) * (*sa - 1.0) <= 0.0) {
              kb = mid;
            } else {
              ka = mid;
              sa = sm;
            }
          }
          harvest(ranks, 0.5 * (ka + kb));
        }
      }
      st.have_prev = true;
      st.prev_k = k;
      st.prev_s = s_val;
    }
  }

  // Pairwise coordinate descent from deterministic starts, as an extra
  // candidate source: each pair solve is a one-dimensional line search with
  // the pair's mass held fixed, so sweeps decrease the objective and settle
  // on a stationary point, possibly in a basin the level scan misses.
  {
    std::vector<std::vector<double>> starts;
    starts.emplace_back(m, 1.0 / static_cast<double>(m));
    starts.push_back(project_simplex(c));
    std::vector<double> blended(m);
    for (std::size_t j = 0; j < m; ++j) {
      blended[j] = 0.5 * c[j] + 0.5 / static_cast<double>(m);
    }
    starts.push_back(project_simplex(blended));
    for (std::vector<double>& x : starts) {
      for (int sweep = 0; sweep < 40; ++sweep) {
        double moved = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = i + 1; j < m; ++j) {
            const double mass = x[i] + x[j];
            if (mass <= 0.0) continue;
            const double lo = std::max(0.0, mass - 1.0);
            const double hi = std::min(mass, 1.0);
            const auto slice = [&](double t) {
              ++evals;
              return bregman_term(gen, c[i], t) +
                     bregman_term(gen, c[j], mass - t);
            };
            const auto slice_slope = [&](double t) {
              return d2_g(gen, c[i], t) - d2_g(gen, c[j], mass - t);
            };
            double value = 0.0;
            double t = minimize_line(slice, lo, hi, value, 256);
            t = polish_line_root(slice_slope, t, lo, hi);
            moved = std::max(moved, std::fabs(t - x[i]));
            x[i] = t;
            x[j] = mass - t;
          }
        }
        if (moved < 1e-11) break;
      }
      offer(x, interior_k(x));
    }
  }

  if (found.empty()) {
    throw SolverError("no stationary point found for the direction-2 repair");
  }
  const Candidate* best = &found.front();
  for (const Candidate& cand : found) {
    if (cand.objective < best->objective) best = &cand;
  }
  return finish(best->x, best->k, best->objective);
}

SolveReport minimize_weighted_divergence(
    const BregmanGenerator& gen, const Agenda& agenda,
    const std::vector<std::vector<double>>& credences,
    const std::vector<double>& weights, int direction, double tol,
    int max_iterations) {
  if (direction != 1 && direction != 2) {
    throw Error("direction must be 1 or 2");
  }
  const std::size_t m = agenda.proposition_count();
  const std::size_t w = agenda.world_count();
  const std::size_t n = credences.size();

  // Direction 1 with a log-singular generator: a zero credence under
  // positive weight pins its proposition to zero, which excludes every world
  // where that proposition is true.
  std::vector<bool> forced(m, false);
  if (direction == 1 && gen.phi_prime_limit_zero() == -kInf) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (weights[k] > 0.0 && credences[k][i] == 0.0) {
          forced[i] = true;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> worlds;
  for (std::size_t t = 0; t < w; ++t) {
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (forced[i] && agenda.truth(i, t) == 1) ok = false;
    }
    if (ok) worlds.push_back(t);
  }
  if (worlds.empty()) {
    throw SolverError(
        "every world is excluded: no coherent credence keeps the divergence finite");
  }

  std::vector<std::size_t> rows;  // rows that actually vary with q
  double constant = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    bool varies = false;
    for (std::size_t t : worlds) {
      if (agenda.truth(i, t) == 1) {
        varies = true;
        break;
      }
    }
    if (varies) {
      rows.push_back(i);
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        if (weights[k] <= 0.0) continue;
        constant += weights[k] * (direction == 1
                                      ? bregman_term(gen, 0.0, credences[k][i])
                                      : bregman_term(gen, credences[k][i], 0.0));
      }
    }
  }

  // Per-row aggregates. Direction 1 needs the weighted phi' average and the
  // matching affine constant; direction 2 needs the linear pool and the
  // weighted phi average.
  const std::size_t nr = rows.size();
  std::vector<double> tbar(nr, 0.0), affine(nr, 0.0), ell(nr, 0.0), aphi(nr, 0.0);
  for (std::size_t r = 0; r < nr; ++r) {
    const std::size_t i = rows[r];
    for (std::size_t k = 0; k < n; ++k) {
      if (weights[k] <= 0.0) continue;
      const double cki = credences[k][i];
      if (direction == 1) {
        tbar[r] += weights[k] * gen.phi_prime(cki);
        if (cki > 0.0) affine[r] += weights[k] * (gen.phi_prime(cki) * cki - gen.phi(cki));
        else affine[r] -= weights[k] * gen.phi(0.0);
      } else {
        ell[r] += weights[k] * cki;
        aphi[r] += weights[k] * gen.phi(cki);
      }
    }
  }

  const auto mix = [&](const std::vector<double>& q) {
    std::vector<double> y(nr, 0.0);
    for (std::size_t r = 0; r < nr; ++r) {
      const std::size_t i = rows[r];
      for (std::size_t u = 0; u < worlds.size(); ++u) {
        if (agenda.truth(i, worlds[u]) == 1) y[r] += q[u];
      }
    }
    return y;
  };

  SimplexProblem problem;
  problem.dim = worlds.size();
  problem.value = [&, direction](const std::vector<double>& q) {
    const std::vector<double> y = mix(q);
    double f = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
      f += direction == 1 ? gen.phi(y[r]) - tbar[r] * y[r] + affine[r]
                          : aphi[r] - gen.phi(y[r]) - gen.phi_prime(y[r]) * (ell[r] - y[r]);
    }
    return f;
  };
  problem.gradient = [&, direction](const std::vector<double>& q) {
    const std::vector<double> y = mix(q);
    std::vector<double> row_g(nr);
    for (std::size_t r = 0; r < nr; ++r) {
      row_g[r] = direction == 1 ? gen.phi_prime(y[r]) - tbar[r]
                                : gen.phi_double_prime(y[r]) * (y[r] - ell[r]);
    }
    std::vector<double> g(worlds.size(), 0.0);
    for (std::size_t u = 0; u < worlds.size(); ++u) {
      for (std::size_t r = 0; r < nr; ++r) {
        if (agenda.truth(rows[r], worlds[u]) == 1) g[u] += row_g[r];
      }
    }
    return g;
  };
  if (direction == 1) {
    problem.hessian = [&](const std::vector<double>& q) {
      const std::vector<double> y = mix(q);
      const std::size_t d = worlds.size();
      std::vector<double> h(d * d, 0.0);
      for (std::size_t r = 0; r < nr; ++r) {
        const double curv = gen.phi_double_prime(y[r]);
        for (std::size_t u = 0; u < d; ++u) {
          if (agenda.truth(rows[r], worlds[u]) != 1) continue;
          for (std::size_t v = 0; v < d; ++v) {
            if (agenda.truth(rows[r], worlds[v]) == 1) h[u * d + v] += curv;
          }
        }
      }
      return h;
    };
  }

  SimplexMinimizeOptions opts;
  opts.tol = tol;
  opts.max_iterations = max_iterations;
  SimplexMinimizeResult res = minimize_over_simplex(problem, opts);

  // Direction 2 is convex for the squared-distance and GKL families only;
  // other generators can have several basins, so restart from each
  // vertex-leaning point and keep the best.
  if (direction == 2 && !gen.induces_sed() && !gen.induces_gkl()) {
    const std::size_t d = worlds.size();
    for (std::size_t t = 0; t < d && d <= 16; ++t) {
      SimplexMinimizeOptions restart = opts;
      restart.initial.assign(d, 0.1 / static_cast<double>(d));
      restart.initial[t] += 0.9;
      const SimplexMinimizeResult alt = minimize_over_simplex(problem, restart);
      if (alt.converged && alt.value < res.value) res = alt;
    }
  }

  std::vector<double> q_full(w, 0.0);
  for (std::size_t u = 0; u < worlds.size(); ++u) q_full[worlds[u]] = res.q[u];
  const std::vector<double> out = agenda.mix_worlds(q_full);

  if (!res.converged) {
    throw SolverError("mirror descent hit the iteration cap (" +
                          std::to_string(res.iterations) + ") with residual " +
                          std::to_string(res.residual),
                      out);
  }

  SolveReport report;
  report.argmin = Credence(out);
  report.objective = res.value + constant;
  report.iterations = res.iterations;
  report.residual = res.residual;
  return report;
}

}  // namespace credal::detail
