#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "credal/agenda.hpp"
#include "credal/lab.hpp"

using namespace credal;

TEST_CASE("two-cell identity table is a partition") {
  const Agenda a = validate_agenda({{1, 0}, {0, 1}});
  CHECK(a.is_partition());
  CHECK(a.proposition_count() == 2);
  CHECK(a.world_count() == 2);
  CHECK(a.propositions()[0] == "X1");
}

TEST_CASE("overlapping four-proposition agenda over three worlds") {
  const Agenda a =
      validate_agenda({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  CHECK_FALSE(a.is_partition());
  CHECK(a.proposition_count() == 4);
  CHECK(a.world_count() == 3);
}

TEST_CASE("duplicate worlds are rejected") {
  CHECK_THROWS_AS(validate_agenda({{1, 1}, {0, 0}}), DegenerateAgenda);
}

TEST_CASE("non-binary entries are rejected") {
  CHECK_THROWS_AS(validate_agenda({{1, 2}, {0, 1}}), InvalidAgenda);
  CHECK_THROWS_AS(validate_agenda({}), InvalidAgenda);
}

TEST_CASE("omniscient credences are truth columns") {
  const Agenda p3 = Agenda::partition(3);
  CHECK(omniscient(p3, 0).values() == std::vector<double>{1, 0, 0});
  CHECK(omniscient(Agenda::partition(2), 1).values() ==
        std::vector<double>{0, 1});

  const Agenda general =
      validate_agenda({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  CHECK(omniscient(general, 1).values() == std::vector<double>{0, 1, 0, 1});

  CHECK_THROWS_AS(omniscient(p3, 3), InvalidWorld);
}

TEST_CASE("coherence on partitions is the unit-sum test") {
  const Agenda a = Agenda::partition(2);
  CHECK_FALSE(is_coherent(a, Credence({0.5, 0.1})));
  CHECK(is_coherent(a, Credence({0.3, 0.7})));
}

TEST_CASE("coherence on a general agenda means lying in the world polytope") {
  const Agenda a =
      validate_agenda({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  CHECK(is_coherent(a, Credence({0.2, 0.3, 0.5, 0.5})));
  CHECK(is_coherent(a, Credence({0.6, 0.3, 0.1, 0.9})));
  // Breaks the additivity the fourth row encodes.
  CHECK_FALSE(is_coherent(a, Credence({0.2, 0.3, 0.5, 0.9})));
}

TEST_CASE("omniscient credences are coherent on any agenda") {
  const Agenda general =
      validate_agenda({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 0}, {1, 1, 0, 0}});
  for (std::size_t t = 0; t < general.world_count(); ++t) {
    CHECK(is_coherent(general, omniscient(general, t), 1e-12));
  }
  const Agenda part = Agenda::partition(4);
  for (std::size_t t = 0; t < 4; ++t) {
    CHECK(is_coherent(part, omniscient(part, t), 1e-12));
  }
}

TEST_CASE("partition coherence agrees with the sum test on random credences") {
  const Agenda a = Agenda::partition(3);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const Credence c = lab::random_profile(seed, 3, 1, false).credence(0);
    const bool by_sum = std::fabs(c.sum() - 1.0) <= 1e-9;
    CHECK(is_coherent(a, c) == by_sum);
  }
}

TEST_CASE("relabeling propositions permutes omniscient credences") {
  const std::vector<std::vector<int>> rows = {{1, 0, 0}, {0, 1, 1}, {1, 1, 0}};
  const std::vector<std::vector<int>> permuted = {{0, 1, 1}, {1, 1, 0}, {1, 0, 0}};
  const Agenda a = validate_agenda(rows);
  const Agenda b = validate_agenda(permuted);
  // Rows moved as 0 -> 2, 1 -> 0, 2 -> 1; worlds may re-sort, so compare sets.
  std::set<std::vector<double>> mapped;
  for (std::size_t t = 0; t < a.world_count(); ++t) {
    const Credence v = omniscient(a, t);
    mapped.insert({v[1], v[2], v[0]});
  }
  std::set<std::vector<double>> direct;
  for (std::size_t t = 0; t < b.world_count(); ++t) {
    direct.insert(omniscient(b, t).values());
  }
  CHECK(mapped == direct);
}

TEST_CASE("credence values outside the unit interval are rejected") {
  CHECK_THROWS_AS(Credence({0.5, 1.5}), InvalidCredence);
  CHECK_THROWS_AS(Credence({-0.2, 0.1}), InvalidCredence);
  CHECK(Credence({0.0, 1.0}).sum() == 1.0);
}

TEST_CASE("weights must be a distribution") {
  CHECK_THROWS(WeightVector({0.5, 0.6}));
  CHECK_THROWS(WeightVector({-0.1, 1.1}));
  const WeightVector w = WeightVector::normalized({2.0, 3.0});
  CHECK(w[0] == doctest::Approx(0.4));
}

TEST_CASE("profiles validate agent shape") {
  const Agenda a = Agenda::partition(2);
  CHECK_THROWS_AS(Profile(a, {{"x", Credence({0.1, 0.2, 0.3})}},
                          WeightVector({1.0})),
                  ShapeError);
}
