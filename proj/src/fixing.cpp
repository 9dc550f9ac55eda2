#include "credal/fixing.hpp"

#include <cmath>
#include <numeric>

#include "detail/bsolve.hpp"
#include "detail/numeric.hpp"

namespace credal {

namespace {

void require_partition(const Agenda& agenda, const char* op) {
  if (!agenda.is_partition()) {
    throw PreconditionError(std::string(op) + " requires a partition agenda");
  }
}

void require_match(const Agenda& agenda, const Credence& c) {
  if (c.size() != agenda.proposition_count()) {
    throw ShapeError("credence length does not match agenda");
  }
}

}  // namespace

Credence fix_sed(const Agenda& agenda, const Credence& c) {
  require_partition(agenda, "fix_sed");
  require_match(agenda, c);
  const std::size_t m = c.size();
  const double shift = (1.0 - c.sum()) / static_cast<double>(m);
  std::vector<double> out(m);
  bool feasible = true;
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = c[j] + shift;
    if (out[j] < 0.0) feasible = false;
  }
  if (!feasible) out = detail::project_simplex(c.values());
  return Credence(std::move(out));
}

Credence fix_gkl(const Agenda& agenda, const Credence& c) {
  require_partition(agenda, "fix_gkl");
  require_match(agenda, c);
  const double total = c.sum();
  if (total <= 0.0) {
    throw DegenerateCredence("cannot rescale an all-zero credence");
  }
  std::vector<double> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) out[j] = c[j] / total;
  return Credence(std::move(out));
}

SolveReport fix_d1(const BregmanGenerator& gen, const Agenda& agenda,
                   const Credence& c, double tol) {
  require_partition(agenda, "fix_d1");
  require_match(agenda, c);
  SolveReport report;
  if (std::fabs(c.sum() - 1.0) <= 1e-12) {
    report.argmin = c;  // already coherent; the divergence vanishes only here
    return report;
  }
  std::vector<double> tbar(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) tbar[j] = gen.phi_prime(c[j]);
  detail::D1Solution sol;
  try {
    sol = detail::solve_d1_system(gen, tbar);
  } catch (const SolverError&) {
    if (c.sum() <= 0.0) {
      throw DegenerateCredence("cannot repair an all-zero credence");
    }
    throw;
  }
  report.argmin = Credence(sol.x);
  report.objective = bregman(gen, report.argmin, c);
  report.iterations = sol.iterations;
  report.residual = sol.residual;
  if (report.residual > tol) {
    throw SolverError("direction-1 repair residual " +
                          std::to_string(report.residual) + " exceeds tolerance",
                      sol.x);
  }
  return report;
}

SolveReport fix_d2(const BregmanGenerator& gen, const Agenda& agenda,
                   const Credence& c, double tol) {
  require_partition(agenda, "fix_d2");
  require_match(agenda, c);
  // The two directions coincide for the squared-distance and rescaling
  // families, where the closed forms apply.
  if (gen.induces_sed()) {
    SolveReport report;
    report.argmin = fix_sed(agenda, c);
    report.objective = bregman(gen, c, report.argmin);
    report.residual = std::fabs(report.argmin.sum() - 1.0);
    return report;
  }
  if (gen.induces_gkl()) {
    SolveReport report;
    report.argmin = fix_gkl(agenda, c);
    report.objective = bregman(gen, c, report.argmin);
    report.residual = std::fabs(report.argmin.sum() - 1.0);
    return report;
  }
  const detail::D2Solution sol = detail::solve_d2_generic(gen, c.values());
  SolveReport report;
  report.argmin = Credence(sol.x);
  report.objective = sol.objective;
  report.iterations = sol.iterations;
  report.residual = sol.residual;
  if (report.residual > tol) {
    throw SolverError("direction-2 repair residual " +
                          std::to_string(report.residual) + " exceeds tolerance",
                      sol.x);
  }
  return report;
}

SolveReport project_coherent_general(const BregmanGenerator& gen,
                                     const Agenda& agenda, const Credence& c,
                                     int direction, double tol,
                                     int max_iterations) {
  require_match(agenda, c);
  return detail::minimize_weighted_divergence(gen, agenda, {c.values()}, {1.0},
                                              direction, tol, max_iterations);
}

}  // namespace credal
