#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "credal/agenda.hpp"
#include "credal/divergence.hpp"

namespace credal::lab {

// Numeric certification of the library's structural claims: commutation and
// decomposition identities, accuracy dominance of repairs, dictatorship of
// the geometric rules, and the fixed two-expert benchmark on an overlapping
// agenda. Positive claims are checked over seeded random profiles; negative
// claims replay pinned witnesses so the suite is fully deterministic.

/// Deterministic profile generator over the canonical m-cell partition.
///
/// PRNG contract (part of the replay interface): a std::mt19937_64 engine
/// seeded with `seed`; each uniform draw is (engine() >> 11) * 2^-53. Draw
/// order: agent 0's m values, ..., agent n-1's m values, then n weight
/// values. Incoherent mode uses the uniforms directly; coherent mode maps
/// each agent's uniforms through -log(1-u) and normalizes (a flat Dirichlet).
/// Weights are normalized uniforms.
Profile random_profile(std::uint64_t seed, std::size_t m, std::size_t n,
                       bool coherent);

/// Same PRNG contract on an arbitrary agenda; agents are coherent mixtures
/// of the agenda's worlds (w uniforms per agent), weights normalized
/// uniforms.
Profile random_coherent_profile_on(const Agenda& agenda, std::uint64_t seed,
                                   std::size_t n);

using PoolFn = std::function<Credence(const Profile&)>;
using RepairFn = std::function<Credence(const Agenda&, const Credence&)>;

struct CommutationReport {
  Credence pool_of_repairs;   // pool applied to the repaired agents
  Credence repair_of_pool;    // repair applied to the pooled credence
  double max_gap = 0.0;
  bool pass = false;
};

/// Compares pool-then-repair against repair-then-pool coordinate-wise.
CommutationReport check_commutation(const PoolFn& pool, const RepairFn& repair,
                                    const Profile& profile, double tol);

struct DominanceReport {
  bool pass = false;
  double margin = 0.0;  // smallest gap D(v_i, c) - D(v_i, repaired) over worlds
  std::size_t worlds = 0;
};

/// Verifies that the direction-1 repair of an incoherent credence is
/// strictly closer to every world's omniscient credence than the original.
/// Throws PreconditionError when the credence is already coherent.
DominanceReport check_dominance(const BregmanGenerator& gen,
                                const Agenda& agenda, const Credence& c);

/// The fixed two-expert benchmark on the agenda {X1, X2, X3, X1-or-X2} over
/// three worlds. Five methods produce a row each; the direct geometric
/// extension has no well-defined normalizer on overlapping propositions, so
/// its slot carries a structured error instead of numbers.
struct OverlapStudy {
  Credence lp_fine;       // linear pool on the finest partition, then extend
  Credence lp_direct;     // linear pool proposition-wise
  Credence lp_minimize;   // coherent minimizer of the average squared distance
  Credence gp_fine;       // geometric pool on the finest partition, then extend
  Credence gp_minimize;   // coherent minimizer of the average GKL divergence
  std::string gp_direct_error;
};

OverlapStudy run_overlap_study();

/// Attempting the direct geometric extension always throws this way; exposed
/// so interfaces can surface the same structured error.
[[noreturn]] void throw_gp_direct_unformulable();

struct ClaimResult {
  std::string id;           // stable identifier, e.g. "prop2i", "thm8", "sec9"
  std::string description;  // what was checked, in plain language
  bool negative = false;    // true when the claim pins a counterexample
  double tolerance = 0.0;   // pass bound (positive) or required gap (negative)
  double gap = 0.0;         // worst gap seen (positive) or witness gap (negative)
  std::size_t cases = 0;    // instances exercised
  std::size_t skipped = 0;  // instances excluded by the claim's hypotheses
  bool pass = false;
  std::string detail;       // short note on witnesses or exclusions
};

struct CertifyOptions {
  std::set<std::string> claims;  // empty = all
  std::uint64_t seed = 0;        // offsets every seeded stream
};

struct CertificationReport {
  std::vector<ClaimResult> claims;
  bool all_pass() const;
  /// Deterministic JSON: fixed field order, 17-significant-digit numbers.
  std::string to_json() const;
};

/// All registered claim identifiers, in report order.
std::vector<std::string> claim_ids();

/// Runs the certification suite (optionally filtered) and returns one result
/// per claim. Unknown identifiers in the filter throw Error.
CertificationReport certify(const CertifyOptions& options = {});

}  // namespace credal::lab
