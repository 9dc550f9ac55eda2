#pragma once

#include "credal/agenda.hpp"
#include "credal/divergence.hpp"

namespace credal {

/// One-step coherent aggregation on a partition, direction 1: the coherent
/// credence minimizing sum_k alpha_k D(c', c_k). Solves
///   phi'(out_j) = sum_k alpha_k phi'(c_k_j) + K,  sum_j out_j = 1
/// by bisection on K with boundary coordinates clamped.
SolveReport wcap_d1(const BregmanGenerator& gen, const Profile& profile,
                    double tol = 1e-9);

/// One-step coherent aggregation on a partition, direction 2: the coherent
/// credence minimizing sum_k alpha_k D(c_k, c'). For every additive Bregman
/// divergence this equals repairing the linear pool in direction 2, which is
/// how it is computed; the reported objective is the weighted-average
/// divergence itself.
SolveReport wcap_d2(const BregmanGenerator& gen, const Profile& profile,
                    double tol = 1e-9);

/// One-step coherent aggregation on an arbitrary agenda: minimizes the
/// weighted average divergence from (direction 1) or to (direction 2) the
/// agents over the polytope spanned by the agenda's worlds, by mirror
/// descent over the world simplex. Direction 1 is convex for every
/// generator, direction 2 for the squared-distance and GKL families; other
/// direction-2 instances restart from vertex-leaning points but remain local
/// searches (on partitions, wcap_d2 enumerates stationary points instead).
SolveReport wcap_general(const BregmanGenerator& gen, const Profile& profile,
                         int direction, double tol = 1e-9,
                         int max_iterations = 100000);

}  // namespace credal
