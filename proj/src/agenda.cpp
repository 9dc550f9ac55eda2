#include "credal/agenda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "detail/numeric.hpp"

namespace credal {

Credence::Credence(std::vector<double> values, double snap_tol)
    : values_(std::move(values)) {
  for (std::size_t j = 0; j < values_.size(); ++j) {
    double& x = values_[j];
    if (std::isnan(x) || x < -snap_tol || x > 1.0 + snap_tol) {
      throw InvalidCredence("credence value at index " + std::to_string(j) +
                            " is outside [0,1]: " + std::to_string(x));
    }
    x = std::clamp(x, 0.0, 1.0);
  }
}

double Credence::sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

WeightVector::WeightVector(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw ShapeError("weight vector must be nonempty");
  double total = 0.0;
  for (double w : weights_) {
    if (std::isnan(w) || w < 0.0) throw Error("weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw Error("weights must sum to 1 (got " + std::to_string(total) + ")");
  }
}

WeightVector WeightVector::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (std::isnan(w) || w < 0.0) throw Error("weights must be nonnegative");
    total += w;
  }
  if (total <= 0.0) throw Error("weights must have positive sum");
  for (double& w : weights) w /= total;
  WeightVector out;
  out.weights_ = std::move(weights);
  return out;
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n == 0) throw ShapeError("weight vector must be nonempty");
  return WeightVector::normalized(std::vector<double>(n, 1.0));
}

Agenda Agenda::from_truth_table(const std::vector<std::vector<int>>& rows,
                                std::vector<std::string> names) {
  if (rows.empty() || rows.front().empty()) {
    throw InvalidAgenda("truth table must be nonempty");
  }
  const std::size_t m = rows.size();
  const std::size_t w = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != w) throw InvalidAgenda("truth table rows have unequal lengths");
    for (int v : row) {
      if (v != 0 && v != 1) {
        throw InvalidAgenda("truth table entries must be 0 or 1");
      }
    }
  }
  if (!names.empty() && names.size() != m) {
    throw ShapeError("proposition name count does not match row count");
  }
  if (names.empty()) {
    names.reserve(m);
    for (std::size_t i = 0; i < m; ++i) names.push_back("X" + std::to_string(i + 1));
  }

  // Canonical world order: descending lexicographic on columns. For the
  // identity table this puts world t where proposition t is true.
  std::vector<std::vector<std::uint8_t>> cols(w, std::vector<std::uint8_t>(m));
  for (std::size_t t = 0; t < w; ++t)
    for (std::size_t i = 0; i < m; ++i) cols[t][i] = static_cast<std::uint8_t>(rows[i][t]);
  std::sort(cols.begin(), cols.end(),
            [](const auto& a, const auto& b) { return a > b; });
  for (std::size_t t = 0; t + 1 < w; ++t) {
    if (cols[t] == cols[t + 1]) {
      throw DegenerateAgenda("two worlds have identical truth columns");
    }
  }

  Agenda agenda;
  agenda.m_ = m;
  agenda.w_ = w;
  agenda.names_ = std::move(names);
  agenda.table_.resize(m * w);
  for (std::size_t t = 0; t < w; ++t)
    for (std::size_t i = 0; i < m; ++i) agenda.table_[i * w + t] = cols[t][i];

  bool partition = true;
  for (std::size_t t = 0; t < w && partition; ++t) {
    int ones = 0;
    for (std::size_t i = 0; i < m; ++i) ones += agenda.table_[i * w + t];
    if (ones != 1) partition = false;
  }
  for (std::size_t i = 0; i < m && partition; ++i) {
    int ones = 0;
    for (std::size_t t = 0; t < w; ++t) ones += agenda.table_[i * w + t];
    if (ones == 0) partition = false;
  }
  agenda.is_partition_ = partition && m == w;
  return agenda;
}

Agenda Agenda::partition(std::size_t m) {
  if (m == 0) throw InvalidAgenda("partition needs at least one cell");
  std::vector<std::vector<int>> rows(m, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < m; ++i) rows[i][i] = 1;
  return from_truth_table(rows);
}

std::vector<double> Agenda::world_column(std::size_t world) const {
  if (world >= w_) {
    throw InvalidWorld("world index " + std::to_string(world) + " out of range");
  }
  std::vector<double> col(m_);
  for (std::size_t i = 0; i < m_; ++i) col[i] = table_[i * w_ + world];
  return col;
}

std::vector<double> Agenda::mix_worlds(const std::vector<double>& q) const {
  if (q.size() != w_) throw ShapeError("world distribution length mismatch");
  std::vector<double> out(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    double y = 0.0;
    for (std::size_t t = 0; t < w_; ++t) y += table_[i * w_ + t] * q[t];
    out[i] = y;
  }
  return out;
}

Profile::Profile(Agenda agenda, std::vector<Agent> agents, WeightVector weights)
    : agenda_(std::move(agenda)),
      agents_(std::move(agents)),
      weights_(std::move(weights)) {
  if (agents_.empty()) throw ShapeError("profile needs at least one agent");
  if (weights_.size() != agents_.size()) {
    throw ShapeError("weight count does not match agent count");
  }
  for (const Agent& a : agents_) {
    if (a.credence.size() != agenda_.proposition_count()) {
      throw ShapeError("agent '" + a.name + "' has " +
                       std::to_string(a.credence.size()) +
                       " credences for an agenda of " +
                       std::to_string(agenda_.proposition_count()));
    }
  }
}

Agenda validate_agenda(const std::vector<std::vector<int>>& truth_table,
                       std::vector<std::string> names) {
  return Agenda::from_truth_table(truth_table, std::move(names));
}

Credence omniscient(const Agenda& agenda, std::size_t world) {
  return Credence(agenda.world_column(world));
}

bool is_coherent(const Agenda& agenda, const Credence& c, double tol) {
  if (c.size() != agenda.proposition_count()) {
    throw ShapeError("credence length does not match agenda");
  }
  if (agenda.is_partition()) {
    return std::fabs(c.sum() - 1.0) <= tol;
  }
  const std::size_t m = agenda.proposition_count();
  const std::size_t w = agenda.world_count();
  std::vector<double> v(m * w);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < w; ++t) v[i * w + t] = agenda.truth(i, t);
  const std::vector<double> q =
      detail::simplex_least_squares(v, m, w, c.values());
  const std::vector<double> fit = agenda.mix_worlds(q);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, std::fabs(fit[i] - c[i]));
  return worst <= tol;
}

}  // namespace credal
