#pragma once

#include "credal/agenda.hpp"
#include "credal/divergence.hpp"

namespace credal {

/// Repairs an incoherent credence on a partition under squared Euclidean
/// distance. Adds the same quantity to every coordinate; when that shift
/// would leave [0,1]^m, the exact Euclidean projection onto the simplex
/// (sort-based active-set method) is returned instead. Both divergence
/// directions produce the same result.
Credence fix_sed(const Agenda& agenda, const Credence& c);

/// Repairs an incoherent credence on a partition under GKL: rescales every
/// coordinate by 1 / sum(c), preserving zeros. Both divergence directions
/// agree. Throws DegenerateCredence when the credence is identically zero.
Credence fix_gkl(const Agenda& agenda, const Credence& c);

/// Nearest coherent credence measured from the candidate to c (direction 1),
/// for any generator. Solves the stationarity system
///   phi'(out_j) = phi'(c_j) + K,  sum_j out_j = 1
/// by bisection on K; coordinates pinned at 0 or 1 participate through the
/// one-sided-limit clamping of phi'^{-1}, which realizes the complementary
/// slackness conditions of the constrained problem.
SolveReport fix_d1(const BregmanGenerator& gen, const Agenda& agenda,
                   const Credence& c, double tol = 1e-9);

/// Nearest coherent credence measured from c to the candidate (direction 2).
/// Generators inducing SED or GKL dispatch to the closed forms (the two
/// directions coincide there). Other generators solve
///   (out_j - c_j) phi''(out_j) = K,  sum_j out_j = 1
/// by a one-dimensional search over K with per-coordinate root finding,
/// multi-started across root-selection policies because the objective need
/// not be convex in its second argument; candidates are compared by
/// objective value.
SolveReport fix_d2(const BregmanGenerator& gen, const Agenda& agenda,
                   const Credence& c, double tol = 1e-9);

/// Coherence repair on an arbitrary agenda: minimizes D(V q, c)
/// (direction 1) or D(c, V q) (direction 2) over distributions q on the
/// worlds by mirror descent with exponentiated-gradient updates, and returns
/// V q*. Iterates stay strictly inside the world simplex, which generators
/// with log-singular derivatives require. Direction 2 with generators
/// outside the squared-distance and GKL families is a (restarted) local
/// search; on partitions, fix_d2 enumerates stationary points instead.
SolveReport project_coherent_general(const BregmanGenerator& gen,
                                     const Agenda& agenda, const Credence& c,
                                     int direction, double tol = 1e-9,
                                     int max_iterations = 100000);

}  // namespace credal
