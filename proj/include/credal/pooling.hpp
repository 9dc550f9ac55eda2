#pragma once

#include <cstddef>
#include <optional>

#include "credal/agenda.hpp"
#include "credal/divergence.hpp"

namespace credal {

/// Weighted arithmetic average of the agents' credences, proposition-wise.
Credence linear_pool(const Profile& profile);

/// Normalized weighted geometric average on a partition. Always coherent.
/// Zero-weight agents contribute a factor of one (0^0 := 1). Throws
/// DegenerateProfile when every cell's geometric average vanishes.
Credence geometric_pool(const Profile& profile);

/// Weighted geometric average without the normalization step; typically
/// incoherent. Defined on any agenda.
Credence geometric_pool_unnormalized(const Profile& profile);

/// Divergence-based aggregation, direction 1: the unconstrained minimizer of
/// sum_k alpha_k D(c', c_k) over [0,1]^m, computed pointwise as
///   out_j = phi'^{-1}( sum_k alpha_k phi'(c_k_j) ).
/// A -inf average (GKL with a zero credence under positive weight) resolves
/// to 0 by the limit convention.
Credence agg_d1(const BregmanGenerator& gen, const Profile& profile);

/// Divergence-based aggregation, direction 2. The minimizer of
/// sum_k alpha_k D(c_k, c') is the linear pool for every generator; see the
/// certification suite for the numeric confirmation against a grid search.
Credence agg_d2(const BregmanGenerator& gen, const Profile& profile);

/// Outcome of the geometric-average aggregation rules (weighted geometric
/// products of divergences). Minimizing such a product selects an agent
/// whose factor vanishes, so these rules collapse to dictatorships.
struct DictatorReport {
  // Index of the selected agent; empty when no agent attains objective zero.
  std::optional<std::size_t> agent;
  Credence credence;
  double objective = 0.0;
  bool dictatorship = true;
};

/// Selects the minimizer of prod_k D(c', c_k)^{alpha_k} (direction 1) or
/// prod_k D(c_k, c')^{alpha_k} (direction 2). `constrained` restricts c' to
/// coherent credences. Any positively weighted agent zeroes the objective
/// (coherent agents only, in the constrained rule); ties break to the lowest
/// index. When the constrained rule faces only incoherent agents, objective
/// zero is unattainable: the minimization then runs numerically over the
/// coherent set and the report flags non-dictatorship.
DictatorReport dictator_select(const BregmanGenerator& gen,
                               const Profile& profile, bool constrained,
                               int direction);

/// The geometric-product objective itself, for inspecting non-agent points.
double geometric_objective(const BregmanGenerator& gen, const Profile& profile,
                           const Credence& candidate, int direction);

}  // namespace credal
