#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "credal/fixing.hpp"
#include "credal/lab.hpp"
#include "credal/pooling.hpp"

using namespace credal;
using namespace credal::lab;

namespace {

double linf(const Credence& a, const Credence& b) {
  double gap = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    gap = std::max(gap, std::fabs(a[j] - b[j]));
  }
  return gap;
}

Profile two_experts() {
  return Profile(Agenda::partition(2),
                 {{"a", Credence({0.5, 0.1})}, {"b", Credence({0.2, 0.6})}},
                 WeightVector({0.4, 0.6}));
}

}  // namespace

TEST_CASE("random profiles replay bit-identically from their seed") {
  const Profile a = random_profile(42, 3, 2, false);
  const Profile b = random_profile(42, 3, 2, false);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(a.credence(k).values() == b.credence(k).values());
    CHECK(a.weight(k) == b.weight(k));
  }
  const Profile c = random_profile(43, 3, 2, false);
  CHECK(a.credence(0).values() != c.credence(0).values());
}

TEST_CASE("coherent mode draws coherent agents") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Profile p = random_profile(seed, 2 + seed % 3, 2, true);
    for (std::size_t k = 0; k < p.agent_count(); ++k) {
      CHECK(is_coherent(p.agenda(), p.credence(k), 1e-12));
    }
  }
}

TEST_CASE("uniform draws on two cells are almost never coherent") {
  std::size_t incoherent = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Profile p = random_profile(seed, 2, 1, false);
    if (!is_coherent(p.agenda(), p.credence(0), 1e-9)) ++incoherent;
  }
  CHECK(incoherent >= 990);
}

TEST_CASE("matched pairings commute on the two-expert fixture") {
  const auto sed_fix = [](const Agenda& a, const Credence& c) {
    return fix_sed(a, c);
  };
  const auto gkl_fix = [](const Agenda& a, const Credence& c) {
    return fix_gkl(a, c);
  };
  const CommutationReport lp_sed =
      check_commutation(linear_pool, sed_fix, two_experts(), 1e-12);
  CHECK(lp_sed.pass);
  CHECK(lp_sed.max_gap <= 1e-12);

  const CommutationReport gp_gkl =
      check_commutation(geometric_pool, gkl_fix, two_experts(), 1e-12);
  CHECK(gp_gkl.pass);

  const CommutationReport lp_gkl =
      check_commutation(linear_pool, gkl_fix, two_experts(), 1e-9);
  CHECK_FALSE(lp_gkl.pass);
  CHECK(lp_gkl.max_gap > 1e-3);
}

TEST_CASE("repair strictly improves distance to every omniscient credence") {
  const Agenda a = Agenda::partition(2);
  const DominanceReport sed_report =
      check_dominance(BregmanGenerator::sed(), a, Credence({0.5, 0.1}));
  CHECK(sed_report.pass);
  // World 0 (first proposition true): 0.18 against 0.26; world 1: 0.98
  // against 1.06.
  CHECK(sed(omniscient(a, 0), fix_sed(a, Credence({0.5, 0.1}))) ==
        doctest::Approx(0.18).epsilon(1e-12));
  CHECK(sed(omniscient(a, 0), Credence({0.5, 0.1})) ==
        doctest::Approx(0.26).epsilon(1e-12));
  CHECK(sed(omniscient(a, 1), fix_sed(a, Credence({0.5, 0.1}))) ==
        doctest::Approx(0.98).epsilon(1e-12));
  CHECK(sed(omniscient(a, 1), Credence({0.5, 0.1})) ==
        doctest::Approx(1.06).epsilon(1e-12));

  const DominanceReport gkl_report =
      check_dominance(BregmanGenerator::gkl(), a, Credence({0.2, 0.6}));
  CHECK(gkl_report.pass);
  CHECK(gkl_report.margin > 0.0);

  CHECK_THROWS_AS(
      check_dominance(BregmanGenerator::sed(), a, Credence({0.3, 0.7})),
      PreconditionError);
}

TEST_CASE("the overlap study reproduces the benchmark rows") {
  const OverlapStudy study = run_overlap_study();
  CHECK(linf(study.lp_fine, Credence({0.4, 0.3, 0.3, 0.7})) <= 1e-12);
  CHECK(linf(study.lp_direct, Credence({0.4, 0.3, 0.3, 0.7})) <= 1e-12);
  CHECK(linf(study.lp_minimize, Credence({0.4, 0.3, 0.3, 0.7})) <= 1e-6);
  CHECK(std::fabs(study.gp_fine[0] - 0.398) <= 1e-3);
  CHECK(std::fabs(study.gp_fine[1] - 0.345) <= 1e-3);
  CHECK(std::fabs(study.gp_fine[2] - 0.257) <= 1e-3);
  CHECK(std::fabs(study.gp_fine[3] - 0.743) <= 1e-3);
  CHECK(std::fabs(study.gp_minimize[0] - 0.390) <= 1e-3);
  CHECK(std::fabs(study.gp_minimize[3] - 0.728) <= 1e-3);
  CHECK_FALSE(study.gp_direct_error.empty());
}

TEST_CASE("certification subset runs and emits deterministic JSON") {
  CertifyOptions options;
  options.claims = {"prop2ii", "prop5iii", "sec9"};
  const CertificationReport first = certify(options);
  CHECK(first.claims.size() == 3);
  for (const ClaimResult& c : first.claims) CHECK(c.pass);

  const CertificationReport second = certify(options);
  CHECK(first.to_json() == second.to_json());

  const nlohmann::json parsed = nlohmann::json::parse(first.to_json());
  CHECK(parsed["claims"].size() == 3);
  CHECK(parsed["all_pass"].get<bool>());
  CHECK(parsed["claims"][0]["id"].get<std::string>() == "prop2ii");
}

TEST_CASE("unknown claim identifiers are rejected") {
  CertifyOptions options;
  options.claims = {"prop99"};
  CHECK_THROWS_AS(certify(options), Error);
}

TEST_CASE("negative-claim witnesses replay with stable gaps") {
  CertifyOptions options;
  options.claims = {"prop2ii"};
  const double gap_a = certify(options).claims[0].gap;
  const double gap_b = certify(options).claims[0].gap;
  CHECK(gap_a == gap_b);
  CHECK(gap_a > 1e-4);
}

TEST_CASE("every registered claim has an id and description") {
  const std::vector<std::string> ids = claim_ids();
  CHECK(ids.size() == 22);
  CHECK(ids.front() == "prop1");
  CHECK(ids.back() == "sec9");
}
