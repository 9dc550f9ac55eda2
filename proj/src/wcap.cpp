#include "credal/wcap.hpp"

#include <cmath>
#include <limits>

#include "credal/fixing.hpp"
#include "credal/pooling.hpp"
#include "detail/bsolve.hpp"

namespace credal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_partition(const Profile& profile, const char* op) {
  if (!profile.agenda().is_partition()) {
    throw PreconditionError(std::string(op) + " requires a partition agenda");
  }
}

std::vector<std::vector<double>> raw_credences(const Profile& profile) {
  std::vector<std::vector<double>> out;
  out.reserve(profile.agent_count());
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    out.push_back(profile.credence(k).values());
  }
  return out;
}

double weighted_objective(const BregmanGenerator& gen, const Profile& profile,
                          const Credence& candidate, int direction) {
  return detail::weighted_divergence(gen, raw_credences(profile),
                                     profile.weights().values(),
                                     candidate.values(), direction);
}

}  // namespace

SolveReport wcap_d1(const BregmanGenerator& gen, const Profile& profile,
                    double tol) {
  require_partition(profile, "wcap_d1");
  const std::size_t m = profile.agenda().proposition_count();
  std::vector<double> tbar(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < profile.agent_count(); ++k) {
      const double alpha = profile.weight(k);
      if (alpha <= 0.0) continue;
      const double slope = gen.phi_prime(profile.credence(k)[j]);
      tbar[j] = tbar[j] == -kInf || slope == -kInf ? -kInf : tbar[j] + alpha * slope;
    }
  }
  detail::D1Solution sol;
  try {
    sol = detail::solve_d1_system(gen, tbar);
  } catch (const SolverError&) {
    bool all_zero = true;
    for (double t : tbar) all_zero = all_zero && t == -kInf;
    if (all_zero) {
      throw DegenerateProfile(
          "every positively weighted agent puts zero mass on every cell the "
          "others support");
    }
    throw;
  }
  SolveReport report;
  report.argmin = Credence(sol.x);
  report.objective = weighted_objective(gen, profile, report.argmin, 1);
  report.iterations = sol.iterations;
  report.residual = sol.residual;
  if (report.residual > tol) {
    throw SolverError("wcap_d1 residual " + std::to_string(report.residual) +
                          " exceeds tolerance",
                      sol.x);
  }
  return report;
}

SolveReport wcap_d2(const BregmanGenerator& gen, const Profile& profile,
                    double tol) {
  require_partition(profile, "wcap_d2");
  // Minimizing the weighted average divergence to coherence decomposes as
  // repairing the linear pool, for every additive Bregman divergence.
  SolveReport report = fix_d2(gen, profile.agenda(), linear_pool(profile), tol);
  report.objective = weighted_objective(gen, profile, report.argmin, 2);
  return report;
}

SolveReport wcap_general(const BregmanGenerator& gen, const Profile& profile,
                         int direction, double tol, int max_iterations) {
  return detail::minimize_weighted_divergence(
      gen, profile.agenda(), raw_credences(profile), profile.weights().values(),
      direction, tol, max_iterations);
}

}  // namespace credal
