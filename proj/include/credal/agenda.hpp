#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

/// A credence function: one value in [0,1] per proposition of some agenda.
/// No sum constraint is imposed; representing incoherent assignments is the
/// whole point. Immutable after construction.
class Credence {
 public:
  Credence() = default;

  // Entries must lie in [0,1]; excursions up to `snap_tol` are clamped,
  // anything worse throws InvalidCredence. The default tolerance absorbs
  // float noise from solvers without hiding real mistakes.
  explicit Credence(std::vector<double> values, double snap_tol = 1e-9);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  const std::vector<double>& values() const { return values_; }
  double sum() const;

  bool operator==(const Credence& other) const = default;

 private:
  std::vector<double> values_;
};

/// Nonnegative agent weights summing to one (within 1e-12).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  /// Rescales arbitrary nonnegative weights to sum to one.
  static WeightVector normalized(std::vector<double> weights);
  static WeightVector uniform(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  const std::vector<double>& values() const { return weights_; }

 private:
  WeightVector() = default;
  std::vector<double> weights_;
};

/// A finite proposition set over finitely many possible worlds.
///
/// Propositions are rows of a binary truth table; worlds are columns. Worlds
/// are stored in a canonical order (descending lexicographic on columns) so
/// that equal agendas compare equal and all outputs are deterministic. The
/// set of coherent credence functions is the convex hull of the columns.
class Agenda {
 public:
  /// Validates and canonicalizes a truth table. Throws InvalidAgenda for
  /// non-binary entries or ragged rows, DegenerateAgenda for duplicate
  /// worlds. Proposition names default to "X1", "X2", ...
  static Agenda from_truth_table(const std::vector<std::vector<int>>& rows,
                                 std::vector<std::string> names = {});

  /// The canonical m-cell partition: the m-by-m identity table.
  static Agenda partition(std::size_t m);

  std::size_t proposition_count() const { return m_; }
  std::size_t world_count() const { return w_; }
  bool is_partition() const { return is_partition_; }
  const std::vector<std::string>& propositions() const { return names_; }

  /// Truth value (0 or 1) of proposition `prop` at world `world`.
  int truth(std::size_t prop, std::size_t world) const {
    return table_[prop * w_ + world];
  }

  /// Column `world` of the truth table as doubles.
  std::vector<double> world_column(std::size_t world) const;

  /// V * q for a distribution q over worlds: the coherent credence induced
  /// by q.
  std::vector<double> mix_worlds(const std::vector<double>& q) const;

  bool operator==(const Agenda& other) const = default;

 private:
  Agenda() = default;
  std::size_t m_ = 0;
  std::size_t w_ = 0;
  bool is_partition_ = false;
  std::vector<std::uint8_t> table_;  // row-major, m_ x w_
  std::vector<std::string> names_;
};

struct Agent {
  std::string name;
  Credence credence;
};

/// n agents with credences over a shared agenda, plus normalized weights.
class Profile {
 public:
  Profile(Agenda agenda, std::vector<Agent> agents, WeightVector weights);

  const Agenda& agenda() const { return agenda_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const WeightVector& weights() const { return weights_; }
  std::size_t agent_count() const { return agents_.size(); }
  const Credence& credence(std::size_t k) const { return agents_[k].credence; }
  double weight(std::size_t k) const { return weights_[k]; }

 private:
  Agenda agenda_;
  std::vector<Agent> agents_;
  WeightVector weights_;
};

/// Result record for any numeric minimization.
struct SolveReport {
  Credence argmin;
  double objective = 0.0;
  int iterations = 0;
  // Maximum violated first-order or feasibility condition at the argmin.
  double residual = 0.0;
};

/// Same as Agenda::from_truth_table.
Agenda validate_agenda(const std::vector<std::vector<int>>& truth_table,
                       std::vector<std::string> names = {});

/// The omniscient credence function of a world: the world's truth column.
Credence omniscient(const Agenda& agenda, std::size_t world);

/// Coherence test. Partitions use the sum-to-one criterion; general agendas
/// ask whether c is a convex combination of the truth columns, decided by an
/// exact active-set least-squares solve over the world simplex.
bool is_coherent(const Agenda& agenda, const Credence& c, double tol = 1e-9);

}  // namespace credal
