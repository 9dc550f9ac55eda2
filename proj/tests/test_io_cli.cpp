#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "credal/io.hpp"
#include "credal/lab.hpp"

using namespace credal;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("CREDAL_CLI");
  return p ? p : "";
}

std::string data_path() {
  const char* p = std::getenv("CREDAL_DATA");
  return p ? p : "tests/data";
}

RunResult run_cli(const std::string& args, bool capture_stderr = false) {
  RunResult result;
  const std::string cmd =
      cli_path() + " " + args + (capture_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.out.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

bool have_cli() { return !cli_path().empty(); }

}  // namespace

TEST_CASE("profiles round-trip bit-exactly through the JSON emitter") {
  const Profile original = lab::random_profile(123, 3, 2, false);
  const std::string once = io::emit_profile_json(original);
  const io::LoadResult loaded = io::load_profile(once);
  CHECK_FALSE(loaded.normalized_weights);
  const std::string twice = io::emit_profile_json(loaded.profile);
  CHECK(once == twice);
  for (std::size_t k = 0; k < original.agent_count(); ++k) {
    CHECK(original.credence(k).values() == loaded.profile.credence(k).values());
    CHECK(original.weight(k) == loaded.profile.weight(k));
  }
}

TEST_CASE("weights that do not sum to one are rescaled and flagged") {
  const std::string text = R"({
    "agenda": {"propositions": [{"name": "X", "truth": [1, 0]},
                                {"name": "Y", "truth": [0, 1]}]},
    "agents": [
      {"name": "a", "credences": [0.5, 0.1], "weight": 0.4},
      {"name": "b", "credences": [0.2, 0.6], "weight": 0.8}
    ]
  })";
  const io::LoadResult loaded = io::load_profile(text);
  CHECK(loaded.normalized_weights);
  CHECK(loaded.profile.weight(0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("percentage-style credences are rejected with a pointer to the field") {
  const std::string text = R"({
    "agenda": {"propositions": [{"name": "X", "truth": [1, 0]},
                                {"name": "Y", "truth": [0, 1]}]},
    "agents": [{"name": "a", "credences": [20, 0.1], "weight": 1.0}]
  })";
  try {
    io::load_profile(text);
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("credences[0]") != std::string::npos);
    CHECK(what.find("percentages") != std::string::npos);
  }
}

TEST_CASE("invalid JSON reports a parse diagnostic") {
  CHECK_THROWS_AS(io::load_profile("{\"agenda\": ["), Error);
}

TEST_CASE("csv emission lists one agent per row") {
  const io::LoadResult loaded = io::load_profile_file(
      data_path() + "/experts_pair.json");
  const std::string csv = io::emit_profile_csv(loaded.profile);
  CHECK(csv.find("agent,weight,X,notX\n") == 0);
  CHECK(csv.find("alice,") != std::string::npos);
}

TEST_CASE("cli: additive repair of the expert pair") {
  if (!have_cli()) return;
  const RunResult r =
      run_cli("fix --divergence sed " + data_path() + "/experts_pair.json");
  REQUIRE(r.exit_code == 0);
  const io::LoadResult out = io::load_profile(r.out);
  CHECK(out.profile.agents()[0].name == "alice");
  CHECK(out.profile.credence(0)[0] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(out.profile.credence(0)[1] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(out.profile.credence(1)[0] == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("cli: both repair directions agree on partitions") {
  if (!have_cli()) return;
  const std::string base = " --divergence gkl " + data_path() + "/experts_pair.json";
  const RunResult from = run_cli("fix --direction from" + base);
  const RunResult to = run_cli("fix --direction to" + base);
  REQUIRE(from.exit_code == 0);
  REQUIRE(to.exit_code == 0);
  const io::LoadResult a = io::load_profile(from.out);
  const io::LoadResult b = io::load_profile(to.out);
  for (std::size_t k = 0; k < a.profile.agent_count(); ++k) {
    for (std::size_t j = 0; j < a.profile.credence(k).size(); ++j) {
      CHECK(a.profile.credence(k)[j] ==
            doctest::Approx(b.profile.credence(k)[j]).epsilon(1e-9));
    }
  }
}

TEST_CASE("cli: malformed input exits 1 with no partial output") {
  if (!have_cli()) return;
  const RunResult r =
      run_cli("fix --divergence sed " + data_path() + "/malformed.json");
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
}

TEST_CASE("cli: linear pool with weight override") {
  if (!have_cli()) return;
  const RunResult r = run_cli("pool --method lp --weights 0.4,0.6 " +
                              data_path() + "/experts_pair.json");
  REQUIRE(r.exit_code == 0);
  const io::LoadResult out = io::load_profile(r.out);
  CHECK(out.profile.credence(0)[0] == doctest::Approx(0.32).epsilon(1e-12));
  CHECK(out.profile.credence(0)[1] == doctest::Approx(0.40).epsilon(1e-12));
}

TEST_CASE("cli: direction-2 GKL aggregation rescales the linear pool") {
  if (!have_cli()) return;
  const RunResult r = run_cli("wcap --divergence gkl --direction to " +
                              data_path() + "/experts_pair.json");
  REQUIRE(r.exit_code == 0);
  const io::LoadResult out = io::load_profile(r.out);
  CHECK(out.profile.credence(0)[0] ==
        doctest::Approx(0.32 / 0.72).epsilon(1e-9));
  CHECK(out.profile.credence(0)[1] ==
        doctest::Approx(0.40 / 0.72).epsilon(1e-9));
}

TEST_CASE("cli: geometric pool on the three-cell partition") {
  if (!have_cli()) return;
  const RunResult r =
      run_cli("pool --method gp " + data_path() + "/experts_three_cell.json");
  REQUIRE(r.exit_code == 0);
  const io::LoadResult out = io::load_profile(r.out);
  CHECK(out.profile.credence(0)[0] == doctest::Approx(0.398).epsilon(3e-3));
  CHECK(out.profile.credence(0)[1] == doctest::Approx(0.345).epsilon(3e-3));
  CHECK(out.profile.credence(0)[2] == doctest::Approx(0.257).epsilon(3e-3));
}

TEST_CASE("cli: geometric pooling on an overlapping agenda is a structured error") {
  if (!have_cli()) return;
  const RunResult r = run_cli(
      "pool --method gp " + data_path() + "/experts_overlap.json", true);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("normaliz") != std::string::npos);

  const RunResult forced = run_cli(
      "pool --method gp --general-normalize " + data_path() +
          "/experts_pair.json",
      true);
  CHECK(forced.exit_code == 1);
}

TEST_CASE("cli: identical invocations are byte-identical") {
  if (!have_cli()) return;
  const std::string args =
      "wcap --divergence sed " + data_path() + "/experts_pair.json";
  CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("cli: certification subset passes, negative claims included") {
  if (!have_cli()) return;
  const RunResult r = run_cli("certify --claims sec9,prop2ii --report ''");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS sec9") != std::string::npos);
  CHECK(r.out.find("PASS prop2ii") != std::string::npos);
  CHECK(r.out.find("counterexample") != std::string::npos);
}

TEST_CASE("cli: unknown claim exits with an input error") {
  if (!have_cli()) return;
  const RunResult r = run_cli("certify --claims nonsense --report ''");
  CHECK(r.exit_code == 1);
}

TEST_CASE("cli: seeded dominance certification passes") {
  if (!have_cli()) return;
  const RunResult r = run_cli("certify --seed 7 --claims thm8 --report ''");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS thm8") != std::string::npos);
}

TEST_CASE("cli: repair on an overlapping agenda leaves coherent agents alone") {
  if (!have_cli()) return;
  const RunResult r =
      run_cli("fix --divergence sed " + data_path() + "/experts_overlap.json");
  REQUIRE(r.exit_code == 0);
  const io::LoadResult out = io::load_profile(r.out);
  CHECK(out.profile.credence(0)[0] == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(out.profile.credence(1)[3] == doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("cli: --output writes the payload to a file") {
  if (!have_cli()) return;
  const std::string path = "/tmp/credal_cli_out_test.json";
  std::remove(path.c_str());
  const RunResult r = run_cli("pool --method lp --output " + path + " " +
                              data_path() + "/experts_pair.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  const io::LoadResult out = io::load_profile(buf.str());
  CHECK(out.profile.credence(0)[0] == doctest::Approx(0.32).epsilon(1e-12));
  std::remove(path.c_str());
}

TEST_CASE("cli: csv output") {
  if (!have_cli()) return;
  const RunResult r = run_cli("pool --method lp --format csv " + data_path() +
                              "/experts_pair.json");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("agent,weight,X,notX\n") == 0);
  CHECK(r.out.find("aggregate,1,0.32") != std::string::npos);
}
