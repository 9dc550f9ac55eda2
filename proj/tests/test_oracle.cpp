#include <doctest.h>

#include <cmath>

#include "credal/divergence.hpp"
#include "credal/oracle.hpp"

using namespace credal;
using oracle::Domain;
using oracle::grid_minimize;

TEST_CASE("grid search recovers the nearest coherent point") {
  const Credence target({0.5, 0.1});
  const auto objective = [&](const std::vector<double>& x) {
    return sed(Credence(x), target);
  };
  const oracle::GridResult r = grid_minimize(objective, Domain::simplex, 2, 1e-4);
  CHECK(std::fabs(r.point[0] - 0.7) <= 2e-4);
  CHECK(std::fabs(r.point[1] - 0.3) <= 2e-4);
}

TEST_CASE("constant objectives return the first lattice point") {
  const auto constant = [](const std::vector<double>&) { return 1.0; };
  const oracle::GridResult r = grid_minimize(constant, Domain::simplex, 2, 0.25);
  CHECK(r.point[0] == 0.0);
  CHECK(r.point[1] == 1.0);
  const oracle::GridResult rb = grid_minimize(constant, Domain::box, 2, 0.25);
  CHECK(rb.point[0] == 0.0);
  CHECK(rb.point[1] == 0.0);
}

TEST_CASE("grid search over the benchmark polytope reproduces the GKL aggregate") {
  const Agenda full = Agenda::from_truth_table(
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  const Credence carol({0.2, 0.3, 0.5, 0.5});
  const Credence dan({0.6, 0.3, 0.1, 0.9});
  const auto objective = [&](const std::vector<double>& q) {
    const Credence cand(full.mix_worlds(q));
    return 0.5 * gkl(cand, carol) + 0.5 * gkl(cand, dan);
  };
  const oracle::GridResult r = grid_minimize(objective, Domain::simplex, 3, 1e-3);
  const std::vector<double> credences = full.mix_worlds(r.point);
  CHECK(std::fabs(credences[0] - 0.390) <= 1e-3);
  CHECK(std::fabs(credences[1] - 0.338) <= 1e-3);
  CHECK(std::fabs(credences[2] - 0.272) <= 1e-3);
  CHECK(std::fabs(credences[3] - 0.728) <= 1e-3);
}

TEST_CASE("dimension and resolution guards") {
  const auto constant = [](const std::vector<double>&) { return 0.0; };
  CHECK_THROWS_AS(grid_minimize(constant, Domain::box, 5, 0.1), ScaleError);
  CHECK_THROWS(grid_minimize(constant, Domain::box, 2, 0.0));
}

TEST_CASE("refining the resolution never worsens the minimum") {
  const Credence target({0.9, 0.2, 0.4});
  const auto objective = [&](const std::vector<double>& x) {
    return sed(Credence(x), target);
  };
  const oracle::GridResult coarse =
      grid_minimize(objective, Domain::simplex, 3, 2e-2);
  const oracle::GridResult fine =
      grid_minimize(objective, Domain::simplex, 3, 1e-2);
  CHECK(fine.value <= coarse.value + 1e-15);
}

TEST_CASE("finite differences accept correct derivatives") {
  CHECK(oracle::finite_diff_check([](double x) { return x * x; },
                                  [](double x) { return 2.0 * x; },
                                  {0.1, 0.25, 0.5, 0.9}) <= 1e-8);
  CHECK(oracle::finite_diff_check(
            [](double x) { return x * std::log(x) - x; },
            [](double x) { return std::log(x); }, {0.5}) <= 1e-6);
}

TEST_CASE("finite differences flag a wrong derivative") {
  CHECK(oracle::finite_diff_check([](double x) { return x * x; },
                                  [](double x) { return 2.0 * x + 0.05; },
                                  {0.1, 0.5}) > 1e-2);
}
