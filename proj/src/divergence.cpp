#include "credal/divergence.hpp"

#include <cmath>
#include <limits>

#include "detail/bsolve.hpp"

namespace credal {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BregmanGenerator BregmanGenerator::sed() {
  BregmanGenerator g;
  g.kind_ = Kind::sed;
  g.name_ = "sed";
  return g;
}

BregmanGenerator BregmanGenerator::gkl() {
  BregmanGenerator g;
  g.kind_ = Kind::gkl;
  g.name_ = "gkl";
  return g;
}

BregmanGenerator BregmanGenerator::power(double exponent) {
  if (!(exponent > 1.0)) {
    throw RangeError("power generator needs exponent > 1");
  }
  BregmanGenerator g;
  g.kind_ = Kind::power;
  g.exponent_ = exponent;
  g.name_ = "power:" + std::to_string(exponent);
  return g;
}

BregmanGenerator BregmanGenerator::affine_shifted(const BregmanGenerator& base,
                                                  double slope, double offset) {
  BregmanGenerator g;
  g.kind_ = Kind::affine_shifted;
  g.slope_ = slope;
  g.offset_ = offset;
  g.base_ = std::make_shared<BregmanGenerator>(base);
  g.name_ = "affine(" + base.name() + ")";
  return g;
}

BregmanGenerator BregmanGenerator::from_name(std::string_view name) {
  if (name == "sed") return sed();
  if (name == "gkl") return gkl();
  constexpr std::string_view prefix = "power:";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string arg(name.substr(prefix.size()));
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw RangeError("cannot parse power exponent in '" + std::string(name) + "'");
    }
    if (used != arg.size()) {
      throw RangeError("cannot parse power exponent in '" + std::string(name) + "'");
    }
    return power(p);
  }
  throw RangeError("unknown generator '" + std::string(name) +
                   "' (expected sed, gkl, or power:<p>)");
}

double BregmanGenerator::phi(double x) const {
  switch (kind_) {
    case Kind::sed:
      return x * x;
    case Kind::gkl:
      return x > 0.0 ? x * std::log(x) - x : 0.0;  // 0 log 0 := 0
    case Kind::power:
      return std::pow(x, exponent_);
    case Kind::affine_shifted:
      return base_->phi(x) + slope_ * x + offset_;
  }
  return 0.0;
}

double BregmanGenerator::phi_prime(double x) const {
  switch (kind_) {
    case Kind::sed:
      return 2.0 * x;
    case Kind::gkl:
      return std::log(x);  // -inf at 0
    case Kind::power:
      return exponent_ * std::pow(x, exponent_ - 1.0);
    case Kind::affine_shifted:
      return base_->phi_prime(x) + slope_;
  }
  return 0.0;
}

double BregmanGenerator::phi_double_prime(double x) const {
  switch (kind_) {
    case Kind::sed:
      return 2.0;
    case Kind::gkl:
      return 1.0 / x;
    case Kind::power:
      return exponent_ * (exponent_ - 1.0) * std::pow(x, exponent_ - 2.0);
    case Kind::affine_shifted:
      return base_->phi_double_prime(x);
  }
  return 0.0;
}

double BregmanGenerator::phi_prime_limit_zero() const {
  switch (kind_) {
    case Kind::sed:
      return 0.0;
    case Kind::gkl:
      return -kInf;
    case Kind::power:
      return 0.0;
    case Kind::affine_shifted:
      return base_->phi_prime_limit_zero() + slope_;
  }
  return 0.0;
}

double BregmanGenerator::phi_prime_limit_one() const {
  switch (kind_) {
    case Kind::sed:
      return 2.0;
    case Kind::gkl:
      return 0.0;
    case Kind::power:
      return exponent_;
    case Kind::affine_shifted:
      return base_->phi_prime_limit_one() + slope_;
  }
  return 0.0;
}

bool BregmanGenerator::induces_sed() const {
  if (kind_ == Kind::sed) return true;
  if (kind_ == Kind::power) return exponent_ == 2.0;
  if (kind_ == Kind::affine_shifted) return base_->induces_sed();
  return false;
}

bool BregmanGenerator::induces_gkl() const {
  if (kind_ == Kind::gkl) return true;
  if (kind_ == Kind::affine_shifted) return base_->induces_gkl();
  return false;
}

double phi_prime_inverse(const BregmanGenerator& gen, double y) {
  if (std::isnan(y)) throw RangeError("phi_prime_inverse of NaN");
  if (y <= gen.phi_prime_limit_zero()) return 0.0;
  if (y >= gen.phi_prime_limit_one()) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 160 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gen.phi_prime(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  // A few Newton steps sharpen the root where phi' is steep and bisection's
  // absolute resolution in x is not enough.
  for (int it = 0; it < 3; ++it) {
    const double err = gen.phi_prime(x) - y;
    if (err == 0.0) break;
    const double curv = gen.phi_double_prime(x);
    if (!(curv > 0.0) || !std::isfinite(curv)) break;
    const double next = x - err / curv;
    if (!(next > 0.0) || !(next < 1.0)) break;
    x = next;
  }
  return x;
}

namespace {

void require_same_length(const Credence& c, const Credence& d) {
  if (c.size() != d.size()) {
    throw ShapeError("credences have different lengths (" +
                     std::to_string(c.size()) + " vs " +
                     std::to_string(d.size()) + ")");
  }
}

}  // namespace

DivergenceValue bregman(const BregmanGenerator& gen, const Credence& c,
                        const Credence& d) {
  require_same_length(c, d);
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    total += detail::bregman_term(gen, c[i], d[i]);
    if (total == kInf) return kInf;
  }
  return total;
}

DivergenceValue sed(const Credence& c, const Credence& d) {
  require_same_length(c, d);
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double diff = c[i] - d[i];
    total += diff * diff;
  }
  return total;
}

DivergenceValue gkl(const Credence& c, const Credence& d) {
  require_same_length(c, d);
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] > 0.0) {
      if (d[i] == 0.0) return kInf;
      total += c[i] * std::log(c[i] / d[i]) - c[i] + d[i];
    } else {
      total += d[i];  // 0 log 0 := 0
    }
  }
  return total < 0.0 && total > -1e-12 ? 0.0 : total;
}

}  // namespace credal
