#include "credal/pooling.hpp"

#include <cmath>
#include <limits>

#include "credal/fixing.hpp"
#include "detail/bsolve.hpp"
#include "detail/numeric.hpp"

namespace credal {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Credence linear_pool(const Profile& profile) {
  const std::size_t m = profile.agenda().proposition_count();
  std::vector<double> out(m, 0.0);
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    const double alpha = profile.weight(k);
    if (alpha <= 0.0) continue;
    const Credence& ck = profile.credence(k);
    for (std::size_t j = 0; j < m; ++j) out[j] += alpha * ck[j];
  }
  return Credence(std::move(out));
}

Credence geometric_pool_unnormalized(const Profile& profile) {
  const std::size_t m = profile.agenda().proposition_count();
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    double log_sum = 0.0;
    bool zero = false;
    for (std::size_t k = 0; k < profile.agent_count(); ++k) {
      const double alpha = profile.weight(k);
      if (alpha <= 0.0) continue;  // 0^0 := 1
      const double v = profile.credence(k)[j];
      if (v == 0.0) {
        zero = true;
        break;
      }
      log_sum += alpha * std::log(v);
    }
    out[j] = zero ? 0.0 : std::exp(log_sum);
  }
  return Credence(std::move(out));
}

Credence geometric_pool(const Profile& profile) {
  if (!profile.agenda().is_partition()) {
    throw PreconditionError("geometric_pool requires a partition agenda");
  }
  const Credence raw = geometric_pool_unnormalized(profile);
  const double z = raw.sum();
  if (z <= 0.0) {
    throw DegenerateProfile(
        "geometric pool undefined: the weighted geometric average vanishes on "
        "every cell");
  }
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = raw[j] / z;
  return Credence(std::move(out));
}

Credence agg_d1(const BregmanGenerator& gen, const Profile& profile) {
  if (!profile.agenda().is_partition()) {
    throw PreconditionError("agg_d1 requires a partition agenda");
  }
  const std::size_t m = profile.agenda().proposition_count();
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    double avg = 0.0;
    for (std::size_t k = 0; k < profile.agent_count(); ++k) {
      const double alpha = profile.weight(k);
      if (alpha <= 0.0) continue;
      const double slope = gen.phi_prime(profile.credence(k)[j]);
      avg = avg == -kInf || slope == -kInf ? -kInf : avg + alpha * slope;
    }
    out[j] = avg == -kInf ? 0.0 : phi_prime_inverse(gen, avg);
  }
  return Credence(std::move(out));
}

Credence agg_d2(const BregmanGenerator& gen, const Profile& profile) {
  (void)gen;  // the minimizer is the linear pool for every generator
  return linear_pool(profile);
}

double geometric_objective(const BregmanGenerator& gen, const Profile& profile,
                           const Credence& candidate, int direction) {
  if (direction != 1 && direction != 2) throw Error("direction must be 1 or 2");
  double log_sum = 0.0;
  bool saw_inf = false;
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    const double alpha = profile.weight(k);
    if (alpha <= 0.0) continue;
    const double d = direction == 1 ? bregman(gen, candidate, profile.credence(k))
                                    : bregman(gen, profile.credence(k), candidate);
    if (d == 0.0) return 0.0;  // a vanishing factor dominates
    if (d == kInf) {
      saw_inf = true;
      continue;
    }
    log_sum += alpha * std::log(d);
  }
  return saw_inf ? kInf : std::exp(log_sum);
}

DictatorReport dictator_select(const BregmanGenerator& gen,
                               const Profile& profile, bool constrained,
                               int direction) {
  if (direction != 1 && direction != 2) throw Error("direction must be 1 or 2");
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    if (profile.weight(k) <= 0.0) continue;
    if (constrained &&
        !is_coherent(profile.agenda(), profile.credence(k), 1e-9)) {
      continue;
    }
    DictatorReport report;
    report.agent = k;
    report.credence = profile.credence(k);
    report.objective = geometric_objective(gen, profile, report.credence, direction);
    report.dictatorship = true;
    return report;
  }

  // Constrained rule over incoherent agents only: objective zero is
  // unattainable, so minimize the product numerically over the coherent set
  // and say so.
  const Agenda& agenda = profile.agenda();
  const std::size_t w = agenda.world_count();

  std::vector<std::vector<double>> creds;
  std::vector<double> weights;
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    if (profile.weight(k) <= 0.0) continue;
    creds.push_back(profile.credence(k).values());
    weights.push_back(profile.weight(k));
  }

  const auto product_log = [&](const std::vector<double>& q) {
    const std::vector<double> y = agenda.mix_worlds(q);
    double log_sum = 0.0;
    for (std::size_t k = 0; k < creds.size(); ++k) {
      double d = 0.0;
      for (std::size_t j = 0; j < y.size(); ++j) {
        d += direction == 1 ? detail::bregman_term(gen, y[j], creds[k][j])
                            : detail::bregman_term(gen, creds[k][j], y[j]);
      }
      if (d <= 0.0) return -kInf;
      if (d == kInf) return kInf;
      log_sum += weights[k] * std::log(d);
    }
    return log_sum;
  };

  detail::SimplexProblem problem;
  problem.dim = w;
  problem.value = product_log;
  problem.gradient = [&](const std::vector<double>& q) {
    // Central differences; the problem is desk-scale and the objective cheap.
    std::vector<double> g(w, 0.0);
    const double h = 1e-7;
    std::vector<double> qp(q);
    for (std::size_t t = 0; t < w; ++t) {
      const double orig = qp[t];
      qp[t] = orig + h;
      const double fp = product_log(qp);
      qp[t] = std::max(orig - h, 1e-300);
      const double fm = product_log(qp);
      g[t] = (fp - fm) / (orig + h - std::max(orig - h, 1e-300));
      qp[t] = orig;
    }
    return g;
  };

  detail::SimplexMinimizeOptions opts;
  const detail::SimplexMinimizeResult res =
      detail::minimize_over_simplex(problem, opts);

  DictatorReport report;
  report.agent.reset();
  report.credence = Credence(agenda.mix_worlds(res.q));
  report.objective = geometric_objective(gen, profile, report.credence, direction);
  report.dictatorship = false;
  return report;
}

}  // namespace credal
