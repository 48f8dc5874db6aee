#pragma once

#include <variant>

#include "rel/rng.hpp"

namespace rel {

enum class DistKind { Exponential, LogNormal, Rayleigh };

/// Constant failure rate; survival exp(-rate * t).
struct Exponential {
  double rate;
  bool operator==(const Exponential&) const = default;
};

/// Location/scale of the underlying normal of log-time.
struct LogNormal {
  double mu;
  double sigma;
  bool operator==(const LogNormal&) const = default;
};

/// Scale sigma with survival exp(-t^2 / (2 * scale^2)).
struct Rayleigh {
  double scale;
  bool operator==(const Rayleigh&) const = default;
};

struct Moments {
  double mean;
  double variance;
};

/// Parametric life distribution of one fading component. Values are
/// immutable after construction; every parameter is validated to be
/// strictly positive and finite.
class LifeDistribution {
 public:
  LifeDistribution(Exponential p);  // NOLINT(google-explicit-constructor)
  LifeDistribution(LogNormal p);    // NOLINT(google-explicit-constructor)
  LifeDistribution(Rayleigh p);     // NOLINT(google-explicit-constructor)

  DistKind kind() const;
  const std::variant<Exponential, LogNormal, Rayleigh>& params() const { return params_; }

  /// Density f(t). Throws std::domain_error for t < 0.
  double pdf(double t) const;

  /// F(t) = 1 - survival(t); F(0) = 0 exactly.
  double cdf(double t) const;

  /// R(t), evaluated in direct exponential / complementary-normal form so
  /// the deep tail keeps full precision.
  double survival(double t) const;

  /// f(t) / R(t). Exponential and Rayleigh use the simplified ratio (rate,
  /// t/scale^2); log-normal throws NumericError once survival underflows.
  double hazard(double t) const;

  /// Inverse CDF for u in [0, 1); quantile(0) = 0 for all three families.
  double quantile(double u) const;

  /// Inverse-transform draw: quantile of one uniform from rng.
  double sample(CounterRng& rng) const { return quantile(rng.next_unit()); }

  /// Closed-form mean and variance.
  Moments moments() const;

  bool operator==(const LifeDistribution&) const = default;

 private:
  std::variant<Exponential, LogNormal, Rayleigh> params_;
};

/// Inverts a (mean, variance) specification into family parameters such that
/// moments(result) reproduces the input. Throws std::invalid_argument naming
/// the violated consistency constraint when the family admits no solution.
LifeDistribution from_moments(DistKind kind, const Moments& m);

}  // namespace rel
