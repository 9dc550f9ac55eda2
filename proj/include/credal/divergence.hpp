#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "credal/agenda.hpp"

namespace credal {

/// A strictly convex generator phi on [0,1], twice differentiable on (0,1),
/// together with its first two derivatives. Each generator induces an
/// additive Bregman divergence. One-sided derivative limits at 0 and 1 may
/// be infinite (the GKL generator has phi'(0+) = -inf).
///
/// Built-in families:
///   sed            phi(x) = x^2
///   gkl            phi(x) = x log x - x         (0 log 0 := 0)
///   power(p)       phi(x) = x^p, p > 1
///   affine_shifted phi(x) = base(x) + k x + c   (same divergence as base)
class BregmanGenerator {
 public:
  enum class Kind { sed, gkl, power, affine_shifted };

  static BregmanGenerator sed();
  static BregmanGenerator gkl();
  static BregmanGenerator power(double exponent);
  static BregmanGenerator affine_shifted(const BregmanGenerator& base,
                                         double slope, double offset);

  /// Parses "sed" | "gkl" | "power:<p>".
  static BregmanGenerator from_name(std::string_view name);

  double phi(double x) const;
  double phi_prime(double x) const;
  double phi_double_prime(double x) const;

  // One-sided limits of phi' at the ends of [0,1].
  double phi_prime_limit_zero() const;
  double phi_prime_limit_one() const;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double power_exponent() const { return exponent_; }

  /// True when the induced divergence coincides with SED (the sed kind,
  /// power(2), or an affine shift of either).
  bool induces_sed() const;
  /// True when the induced divergence coincides with GKL.
  bool induces_gkl() const;

 private:
  BregmanGenerator() = default;
  Kind kind_ = Kind::sed;
  double exponent_ = 2.0;
  double slope_ = 0.0;
  double offset_ = 0.0;
  std::shared_ptr<const BregmanGenerator> base_;
  std::string name_;
};

/// Divergence values are nonnegative extended reals; +inf is a legitimate
/// value and propagates through sums without trapping.
using DivergenceValue = double;

/// phi'(x) - y = 0 solved for x in [0,1] by bisection; phi' is strictly
/// increasing so the root is unique. Arguments at or beyond the one-sided
/// limits clamp to 0 or 1. NaN input throws RangeError.
double phi_prime_inverse(const BregmanGenerator& gen, double y);

/// The additive Bregman divergence generated by `gen`:
///   sum_i phi(c_i) - phi(d_i) - phi'(d_i) (c_i - d_i).
/// A coordinate contributes +inf when phi' diverges at d_i and c_i != d_i.
DivergenceValue bregman(const BregmanGenerator& gen, const Credence& c,
                        const Credence& d);

/// Squared Euclidean distance, sum_i (c_i - d_i)^2.
DivergenceValue sed(const Credence& c, const Credence& d);

/// Generalized Kullback-Leibler divergence,
/// sum_i c_i log(c_i / d_i) - c_i + d_i, with 0 log 0 := 0 and the value
/// +inf when d_i = 0 < c_i.
DivergenceValue gkl(const Credence& c, const Credence& d);

}  // namespace credal
