#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "credal/agenda.hpp"
#include "credal/divergence.hpp"
#include "credal/fixing.hpp"
#include "credal/io.hpp"
#include "credal/lab.hpp"
#include "credal/pooling.hpp"
#include "credal/wcap.hpp"

namespace {

using namespace credal;

// Exit codes: 0 ok, 1 input error, 2 solver error, 3 certification failure.
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCertify = 3;

struct CommonOptions {
  std::string input;
  std::string output = "-";
  std::string format = "json";
  std::string weights;
  double tol = 1e-9;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("input", opts.input, "profile JSON file")->required();
  cmd->add_option("--output", opts.output, "output path, '-' for stdout");
  cmd->add_option("--format", opts.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--weights", opts.weights,
                  "comma-separated weights overriding the file");
  cmd->add_option("--tol", opts.tol, "solver tolerance");
  cmd->add_flag("--verbose", opts.verbose, "print solve diagnostics to stderr");
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("cannot parse weight '" + item + "'");
    }
  }
  if (out.empty()) throw Error("--weights needs at least one value");
  return out;
}

Profile load_input(const CommonOptions& opts) {
  io::LoadResult loaded = io::load_profile_file(opts.input);
  if (loaded.normalized_weights) {
    std::cerr << "warning: agent weights did not sum to 1; normalized\n";
  }
  if (opts.weights.empty()) return loaded.profile;

  std::vector<double> w = parse_weights(opts.weights);
  if (w.size() != loaded.profile.agent_count()) {
    throw Error("--weights has " + std::to_string(w.size()) + " values for " +
                std::to_string(loaded.profile.agent_count()) + " agents");
  }
  double total = 0.0;
  for (double v : w) total += v;
  if (total <= 0.0) throw Error("--weights must have positive sum");
  if (std::fabs(total - 1.0) > 1e-9) {
    std::cerr << "warning: --weights sum to " << total << "; normalized\n";
  }
  return Profile(loaded.profile.agenda(), loaded.profile.agents(),
                 WeightVector::normalized(w));
}

void write_output(const CommonOptions& opts, const Profile& result) {
  const std::string payload = opts.format == "csv" ? io::emit_profile_csv(result)
                                                   : io::emit_profile_json(result);
  if (opts.output == "-") {
    std::cout << payload;
  } else {
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw Error("cannot open '" + opts.output + "' for writing");
    out << payload;
  }
}

Profile aggregate_profile(const Profile& source, const Credence& pooled) {
  return Profile(source.agenda(), {{"aggregate", pooled}},
                 WeightVector({1.0}));
}

void note_report(const CommonOptions& opts, const SolveReport& report) {
  if (!opts.verbose) return;
  std::cerr << "objective=" << io::format_double(report.objective)
            << " iterations=" << report.iterations
            << " residual=" << io::format_double(report.residual) << "\n";
}

int run_fix(const CommonOptions& opts, const std::string& divergence,
            const std::string& direction) {
  const Profile profile = load_input(opts);
  const BregmanGenerator gen = BregmanGenerator::from_name(divergence);
  const int dir = direction == "to" ? 2 : 1;
  std::vector<Agent> repaired;
  for (std::size_t k = 0; k < profile.agent_count(); ++k) {
    SolveReport report;
    if (profile.agenda().is_partition()) {
      report = dir == 1 ? fix_d1(gen, profile.agenda(), profile.credence(k), opts.tol)
                        : fix_d2(gen, profile.agenda(), profile.credence(k), opts.tol);
    } else {
      report = project_coherent_general(gen, profile.agenda(),
                                        profile.credence(k), dir, opts.tol);
    }
    note_report(opts, report);
    repaired.push_back({profile.agents()[k].name, report.argmin});
  }
  write_output(opts, Profile(profile.agenda(), repaired, profile.weights()));
  return 0;
}

int run_pool(const CommonOptions& opts, const std::string& method,
             const std::string& divergence, const std::string& direction,
             bool general_normalize) {
  const Profile profile = load_input(opts);
  const int dir = direction == "to" ? 2 : 1;
  const auto gen = [&] { return BregmanGenerator::from_name(divergence); };

  Credence pooled;
  if (method == "gp" && general_normalize) {
    lab::throw_gp_direct_unformulable();
  } else if (method == "lp") {
    pooled = linear_pool(profile);
  } else if (method == "gp") {
    if (!profile.agenda().is_partition()) lab::throw_gp_direct_unformulable();
    pooled = geometric_pool(profile);
  } else if (method == "gp-minus") {
    pooled = geometric_pool_unnormalized(profile);
  } else if (method == "agg") {
    pooled = dir == 1 ? agg_d1(gen(), profile) : agg_d2(gen(), profile);
  } else if (method == "wcap") {
    SolveReport report;
    if (profile.agenda().is_partition()) {
      report = dir == 1 ? wcap_d1(gen(), profile, opts.tol)
                        : wcap_d2(gen(), profile, opts.tol);
    } else {
      report = wcap_general(gen(), profile, dir, opts.tol);
    }
    note_report(opts, report);
    pooled = report.argmin;
  } else {
    throw Error("unknown method '" + method + "'");
  }
  write_output(opts, aggregate_profile(profile, pooled));
  return 0;
}

int run_certify(const std::string& claims, std::uint64_t seed,
                const std::string& report_path) {
  lab::CertifyOptions options;
  options.seed = seed;
  if (!claims.empty()) {
    std::stringstream ss(claims);
    std::string id;
    while (std::getline(ss, id, ',')) options.claims.insert(id);
  }
  const lab::CertificationReport report = lab::certify(options);
  for (const lab::ClaimResult& c : report.claims) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.id
              << " gap=" << io::format_double(c.gap)
              << " tol=" << io::format_double(c.tolerance)
              << " cases=" << c.cases;
    if (c.skipped > 0) std::cout << " skipped=" << c.skipped;
    if (c.negative) std::cout << " (counterexample claim)";
    std::cout << "\n";
  }
  if (!report_path.empty() && report_path != "-") {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw Error("cannot open '" + report_path + "' for writing");
    out << report.to_json();
  } else if (report_path == "-") {
    std::cout << report.to_json();
  }
  return report.all_pass() ? 0 : kExitCertify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence repair and aggregation of credence functions"};
  app.require_subcommand(1);

  CommonOptions fix_opts;
  std::string fix_divergence;
  std::string fix_direction = "from";
  CLI::App* fix_cmd =
      app.add_subcommand("fix", "repair each agent's credences toward coherence");
  add_common(fix_cmd, fix_opts);
  fix_cmd->add_option("--divergence", fix_divergence, "sed | gkl | power:<p>")
      ->required();
  fix_cmd->add_option("--direction", fix_direction,
                      "'from' minimizes divergence from the repaired credence "
                      "to the original; 'to' the reverse")
      ->check(CLI::IsMember({"from", "to"}));

  CommonOptions pool_opts;
  std::string pool_method = "lp";
  std::string pool_divergence = "sed";
  std::string pool_direction = "from";
  bool pool_general_normalize = false;
  CLI::App* pool_cmd = app.add_subcommand("pool", "aggregate the profile");
  add_common(pool_cmd, pool_opts);
  pool_cmd->add_option("--method", pool_method, "lp | gp | gp-minus | agg | wcap")
      ->check(CLI::IsMember({"lp", "gp", "gp-minus", "agg", "wcap"}));
  pool_cmd->add_option("--divergence", pool_divergence,
                       "sed | gkl | power:<p> (for agg and wcap)");
  pool_cmd->add_option("--direction", pool_direction, "from | to")
      ->check(CLI::IsMember({"from", "to"}));
  pool_cmd->add_flag("--general-normalize", pool_general_normalize,
                     "request cell-wise normalization on a general agenda "
                     "(always a structured error)");

  CommonOptions wcap_opts;
  std::string wcap_divergence;
  std::string wcap_direction = "from";
  CLI::App* wcap_cmd = app.add_subcommand(
      "wcap", "one-step coherent aggregation by divergence minimization");
  add_common(wcap_cmd, wcap_opts);
  wcap_cmd->add_option("--divergence", wcap_divergence, "sed | gkl | power:<p>")
      ->required();
  wcap_cmd->add_option("--direction", wcap_direction, "from | to")
      ->check(CLI::IsMember({"from", "to"}));

  std::string certify_claims;
  std::uint64_t certify_seed = 0;
  std::string certify_report = "certification_report.json";
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "run the numeric certification suite");
  certify_cmd->add_option("--claims", certify_claims,
                          "comma-separated claim ids (default: all)");
  certify_cmd->add_option("--seed", certify_seed, "seed offset for all streams");
  certify_cmd->add_option("--report", certify_report,
                          "report file ('-' for stdout, '' to skip)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fix_cmd->parsed()) return run_fix(fix_opts, fix_divergence, fix_direction);
    if (pool_cmd->parsed()) {
      return run_pool(pool_opts, pool_method, pool_divergence, pool_direction,
                      pool_general_normalize);
    }
    if (wcap_cmd->parsed()) {
      return run_pool(wcap_opts, "wcap", wcap_divergence, wcap_direction, false);
    }
    if (certify_cmd->parsed()) {
      return run_certify(certify_claims, certify_seed, certify_report);
    }
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
