#include <doctest.h>

#include <cmath>

#include "credal/divergence.hpp"
#include "credal/fixing.hpp"
#include "credal/lab.hpp"
#include "credal/oracle.hpp"

using namespace credal;

namespace {

const Agenda kPair = Agenda::partition(2);

Credence random_credence(std::uint64_t seed, std::size_t m) {
  return lab::random_profile(seed, m, 1, false).credence(0);
}

double linf(const Credence& a, const Credence& b) {
  double gap = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    gap = std::max(gap, std::fabs(a[j] - b[j]));
  }
  return gap;
}

}  // namespace

TEST_CASE("additive repair reproduces the two-expert table") {
  CHECK(linf(fix_sed(kPair, Credence({0.5, 0.1})), Credence({0.7, 0.3})) <= 1e-12);
  CHECK(linf(fix_sed(kPair, Credence({0.2, 0.6})), Credence({0.3, 0.7})) <= 1e-12);
}

TEST_CASE("additive repair leaves coherent credences alone") {
  CHECK(linf(fix_sed(kPair, Credence({0.3, 0.7})), Credence({0.3, 0.7})) <= 1e-12);
}

TEST_CASE("additive repair falls back to the exact simplex projection") {
  const Agenda a3 = Agenda::partition(3);
  const Credence out = fix_sed(a3, Credence({1.0, 1.0, 0.0}));
  CHECK(linf(out, Credence({0.5, 0.5, 0.0})) <= 1e-12);

  // Independent route: brute-force scan of the squared distance.
  const Credence target({1.0, 1.0, 0.0});
  const auto objective = [&](const std::vector<double>& x) {
    return sed(Credence(x), target);
  };
  const oracle::GridResult grid =
      oracle::grid_minimize(objective, oracle::Domain::simplex, 3, 1e-3);
  CHECK(linf(out, Credence(grid.point)) <= 1e-4);
}

TEST_CASE("rescaling repair reproduces the two-expert table") {
  CHECK(linf(fix_gkl(kPair, Credence({0.5, 0.1})),
             Credence({5.0 / 6.0, 1.0 / 6.0})) <= 1e-12);
  CHECK(linf(fix_gkl(kPair, Credence({0.2, 0.6})), Credence({0.25, 0.75})) <=
        1e-12);
  CHECK(linf(fix_gkl(kPair, Credence({0.3, 0.7})), Credence({0.3, 0.7})) <=
        1e-12);
}

TEST_CASE("rescaling repair preserves zeros and rejects the zero credence") {
  const Agenda a3 = Agenda::partition(3);
  const Credence out = fix_gkl(a3, Credence({0.4, 0.0, 0.4}));
  CHECK(out[1] == 0.0);
  CHECK(out.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(fix_gkl(a3, Credence({0.0, 0.0, 0.0})), DegenerateCredence);
}

TEST_CASE("closed forms require partitions") {
  const Agenda general = validate_agenda({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  CHECK_THROWS_AS(fix_sed(general, Credence({0.2, 0.3, 0.5, 0.5})),
                  PreconditionError);
}

TEST_CASE("general direction-1 solver matches the closed forms") {
  const SolveReport sed_report =
      fix_d1(BregmanGenerator::sed(), kPair, Credence({0.5, 0.1}));
  CHECK(linf(sed_report.argmin, Credence({0.7, 0.3})) <= 1e-9);
  CHECK(sed_report.residual <= 1e-9);

  const SolveReport gkl_report =
      fix_d1(BregmanGenerator::gkl(), kPair, Credence({0.2, 0.6}));
  CHECK(linf(gkl_report.argmin, Credence({0.25, 0.75})) <= 1e-9);
}

TEST_CASE("direction-1 repair under power(3) matches the grid oracle") {
  const Credence c({0.5, 0.1});
  const BregmanGenerator g = BregmanGenerator::power(3.0);
  const Credence out = fix_d1(g, kPair, c).argmin;
  const auto objective = [&](const std::vector<double>& x) {
    return bregman(g, Credence(x), c);
  };
  const oracle::GridResult grid =
      oracle::grid_minimize(objective, oracle::Domain::simplex, 2, 1e-4);
  CHECK(linf(out, Credence(grid.point)) <= 1e-4);
}

TEST_CASE("direction-2 repair dispatches to closed forms where directions agree") {
  CHECK(linf(fix_d2(BregmanGenerator::gkl(), kPair, Credence({0.5, 0.1})).argmin,
             Credence({5.0 / 6.0, 1.0 / 6.0})) <= 1e-9);
  CHECK(linf(fix_d2(BregmanGenerator::sed(), kPair, Credence({0.5, 0.1})).argmin,
             Credence({0.7, 0.3})) <= 1e-9);
}

TEST_CASE("direction-2 repair leaves coherent credences alone for any generator") {
  const Credence c({0.25, 0.75});
  for (const BregmanGenerator& g :
       {BregmanGenerator::sed(), BregmanGenerator::gkl(),
        BregmanGenerator::power(3.0)}) {
    CHECK(linf(fix_d2(g, kPair, c).argmin, c) <= 1e-12);
  }
}

TEST_CASE("direction-2 repair under power(3) matches the grid oracle") {
  const Credence c({0.9, 0.4});
  const BregmanGenerator g = BregmanGenerator::power(3.0);
  const Credence out = fix_d2(g, kPair, c).argmin;
  const auto objective = [&](const std::vector<double>& x) {
    return bregman(g, c, Credence(x));
  };
  const oracle::GridResult grid =
      oracle::grid_minimize(objective, oracle::Domain::simplex, 2, 1e-4);
  CHECK(linf(out, Credence(grid.point)) <= 1e-4);
}

TEST_CASE("direction-2 repair under power(3) matches the oracle on three cells") {
  const Agenda a3 = Agenda::partition(3);
  const Credence c({0.8, 0.5, 0.2});
  const BregmanGenerator g = BregmanGenerator::power(3.0);
  const Credence out = fix_d2(g, a3, c).argmin;
  const auto objective = [&](const std::vector<double>& x) {
    return bregman(g, c, Credence(x));
  };
  const oracle::GridResult grid =
      oracle::grid_minimize(objective, oracle::Domain::simplex, 3, 1e-3);
  CHECK(linf(out, Credence(grid.point)) <= 1e-3);
}

TEST_CASE("projection onto a general agenda reduces to the partition solvers") {
  const Credence c({0.6, 0.3});
  for (const BregmanGenerator& g :
       {BregmanGenerator::sed(), BregmanGenerator::gkl()}) {
    const SolveReport direct1 = fix_d1(g, kPair, c);
    const SolveReport general1 = project_coherent_general(g, kPair, c, 1);
    CHECK(linf(direct1.argmin, general1.argmin) <= 1e-6);
    const SolveReport direct2 = fix_d2(g, kPair, c);
    const SolveReport general2 = project_coherent_general(g, kPair, c, 2);
    CHECK(linf(direct2.argmin, general2.argmin) <= 1e-6);
  }
}

TEST_CASE("projection fixes nothing when the credence is already coherent") {
  const Agenda general =
      validate_agenda({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  const Credence carol({0.2, 0.3, 0.5, 0.5});
  const SolveReport r1 =
      project_coherent_general(BregmanGenerator::gkl(), general, carol, 1);
  CHECK(linf(r1.argmin, carol) <= 1e-6);
  const SolveReport r2 =
      project_coherent_general(BregmanGenerator::sed(), general, carol, 2);
  CHECK(linf(r2.argmin, carol) <= 1e-6);
}

TEST_CASE("projection onto a general agenda agrees with the grid oracle") {
  const Agenda general =
      validate_agenda({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  const Credence c({0.5, 0.4, 0.3, 0.8});  // incoherent: violates additivity
  const BregmanGenerator g = BregmanGenerator::sed();
  const SolveReport report = project_coherent_general(g, general, c, 1);
  const auto objective = [&](const std::vector<double>& q) {
    return bregman(g, Credence(general.mix_worlds(q)), c);
  };
  const oracle::GridResult grid =
      oracle::grid_minimize(objective, oracle::Domain::simplex, 3, 1e-3);
  CHECK(linf(report.argmin, Credence(general.mix_worlds(grid.point))) <= 1e-3);
}

TEST_CASE("generic repairs track the oracle across power exponents") {
  // Exponents below 2 have unbounded curvature at zero; above 2 the zero
  // boundary becomes stationarity-eligible. Both regimes must match the
  // brute-force scan.
  for (double p : {1.5, 2.5, 5.0}) {
    const BregmanGenerator g = BregmanGenerator::power(p);
    const Agenda a3 = Agenda::partition(3);
    const Credence c({0.1, 0.75, 0.6});
    const auto to_cand = [&](const std::vector<double>& x) { return Credence(x); };

    const Credence d2_out = fix_d2(g, a3, c).argmin;
    const oracle::GridResult d2_grid = oracle::grid_minimize(
        [&](const std::vector<double>& x) { return bregman(g, c, to_cand(x)); },
        oracle::Domain::simplex, 3, 1e-3);
    CHECK(linf(d2_out, Credence(d2_grid.point)) <= 1e-4);

    const Credence d1_out = fix_d1(g, a3, c).argmin;
    const oracle::GridResult d1_grid = oracle::grid_minimize(
        [&](const std::vector<double>& x) { return bregman(g, to_cand(x), c); },
        oracle::Domain::simplex, 3, 1e-3);
    CHECK(linf(d1_out, Credence(d1_grid.point)) <= 1e-4);
  }
}

TEST_CASE("log-singular projection pins zero credences and excludes their worlds") {
  const Agenda full =
      validate_agenda({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  const Credence c({0.5, 0.0, 0.4, 0.5});
  const SolveReport r =
      project_coherent_general(BregmanGenerator::gkl(), full, c, 1);
  CHECK(r.argmin[1] == 0.0);
  CHECK(is_coherent(full, r.argmin, 1e-8));
  const oracle::GridResult grid = oracle::grid_minimize(
      [&](const std::vector<double>& q) {
        return bregman(BregmanGenerator::gkl(), Credence(full.mix_worlds(q)), c);
      },
      oracle::Domain::simplex, 3, 1e-3);
  CHECK(linf(r.argmin, Credence(full.mix_worlds(grid.point))) <= 1e-3);
}

TEST_CASE("projection fails loudly when no world keeps the divergence finite") {
  CHECK_THROWS_AS(project_coherent_general(BregmanGenerator::gkl(),
                                           Agenda::partition(2),
                                           Credence({0.0, 0.0}), 1),
                  SolverError);
}

TEST_CASE("repairs are idempotent and coherent") {
  const std::vector<BregmanGenerator> gens = {BregmanGenerator::sed(),
                                              BregmanGenerator::gkl(),
                                              BregmanGenerator::power(3.0)};
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::size_t m = 2 + i % 3;
    const Agenda agenda = Agenda::partition(m);
    const Credence c = random_credence(i, m);
    const BregmanGenerator& g = gens[i % gens.size()];
    const Credence once = fix_d1(g, agenda, c).argmin;
    CHECK(is_coherent(agenda, once, 1e-8));
    CHECK(linf(fix_d1(g, agenda, once).argmin, once) <= 1e-9);
  }
}

TEST_CASE("equal-shift law for interior additive repairs") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const std::size_t m = 2 + i % 3;
    const Credence c = random_credence(1000 + i, m);
    const Credence out = fix_sed(Agenda::partition(m), c);
    bool interior = true;
    for (std::size_t j = 0; j < m; ++j) {
      interior = interior && out[j] > 1e-9 && out[j] < 1.0 - 1e-9;
    }
    if (!interior) continue;
    const double shift = out[0] - c[0];
    for (std::size_t j = 1; j < m; ++j) {
      CHECK(std::fabs((out[j] - c[j]) - shift) <= 1e-10);
    }
  }
}

TEST_CASE("equal-ratio law for rescaling repairs") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const std::size_t m = 2 + i % 3;
    const Credence c = random_credence(2000 + i, m);
    const Credence out = fix_gkl(Agenda::partition(m), c);
    const double ratio = out[0] / c[0];
    for (std::size_t j = 1; j < m; ++j) {
      if (c[j] > 1e-12) CHECK(std::fabs(out[j] / c[j] - ratio) <= 1e-10);
    }
  }
}

TEST_CASE("the two directions agree for SED and GKL on partitions") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const std::size_t m = 2 + i % 3;
    const Agenda agenda = Agenda::partition(m);
    const Credence c = random_credence(3000 + i, m);
    for (const BregmanGenerator& g :
         {BregmanGenerator::sed(), BregmanGenerator::gkl()}) {
      CHECK(linf(fix_d1(g, agenda, c).argmin, fix_d2(g, agenda, c).argmin) <=
            1e-9);
    }
  }
}

TEST_CASE("two-cell additive repair is the orthogonal projection onto the diagonal") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Credence c = random_credence(4000 + i, 2);
    const Credence out = fix_sed(kPair, c);
    // The displacement is orthogonal to the coherent line, i.e. the same in
    // both coordinates.
    CHECK(std::fabs((out[0] - c[0]) - (out[1] - c[1])) <= 1e-12);
  }
}

TEST_CASE("direction-1 repair reduces divergence from the repaired credence") {
  // The objective value reported is the divergence actually attained.
  const Credence c({0.5, 0.1});
  const SolveReport report = fix_d1(BregmanGenerator::sed(), kPair, c);
  CHECK(report.objective == doctest::Approx(0.08).epsilon(1e-9));
}
