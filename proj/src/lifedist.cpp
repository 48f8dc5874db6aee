#include "rel/lifedist.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rel/errors.hpp"
#include "rel/normal.hpp"

namespace rel {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310002;
constexpr double kPi = 3.141592653589793;

void require_positive_finite(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be strictly positive and finite");
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

void require_nonnegative_time(double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("time must be nonnegative");
  }
}

}  // namespace

LifeDistribution::LifeDistribution(Exponential p) : params_(p) {
  require_positive_finite(p.rate, "exponential rate");
}

LifeDistribution::LifeDistribution(LogNormal p) : params_(p) {
  require_finite(p.mu, "lognormal mu");
  require_positive_finite(p.sigma, "lognormal sigma");
}

LifeDistribution::LifeDistribution(Rayleigh p) : params_(p) {
  require_positive_finite(p.scale, "rayleigh scale");
}

DistKind LifeDistribution::kind() const {
  switch (params_.index()) {
    case 0: return DistKind::Exponential;
    case 1: return DistKind::LogNormal;
    default: return DistKind::Rayleigh;
  }
}

double LifeDistribution::pdf(double t) const {
  require_nonnegative_time(t);
  return std::visit(
      [t](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Exponential>) {
          return p.rate * std::exp(-p.rate * t);
        } else if constexpr (std::is_same_v<P, LogNormal>) {
          if (t == 0.0) return 0.0;
          const double z = (std::log(t) - p.mu) / p.sigma;
          return std::exp(-0.5 * z * z) / (t * p.sigma * kSqrt2Pi);
        } else {
          const double s2 = p.scale * p.scale;
          return (t / s2) * std::exp(-0.5 * t * t / s2);
        }
      },
      params_);
}

double LifeDistribution::survival(double t) const {
  require_nonnegative_time(t);
  return std::visit(
      [t](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Exponential>) {
          return std::exp(-p.rate * t);
        } else if constexpr (std::is_same_v<P, LogNormal>) {
          if (t == 0.0) return 1.0;
          return normal_ccdf((std::log(t) - p.mu) / p.sigma);
        } else {
          return std::exp(-0.5 * t * t / (p.scale * p.scale));
        }
      },
      params_);
}

double LifeDistribution::cdf(double t) const { return 1.0 - survival(t); }

double LifeDistribution::hazard(double t) const {
  require_nonnegative_time(t);
  return std::visit(
      [this, t](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Exponential>) {
          return p.rate;
        } else if constexpr (std::is_same_v<P, Rayleigh>) {
          return t / (p.scale * p.scale);
        } else {
          const double r = survival(t);
          if (r <= 0.0) {
            throw NumericError("hazard undefined at t = " + std::to_string(t) +
                               ": survival underflowed to 0");
          }
          return pdf(t) / r;
        }
      },
      params_);
}

double LifeDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::domain_error("quantile: u must be in [0, 1)");
  }
  return std::visit(
      [u](const auto& p) -> double {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Exponential>) {
          return -std::log1p(-u) / p.rate;
        } else if constexpr (std::is_same_v<P, LogNormal>) {
          if (u == 0.0) return 0.0;
          return std::exp(p.mu + p.sigma * normal_quantile(u));
        } else {
          return p.scale * std::sqrt(-2.0 * std::log1p(-u));
        }
      },
      params_);
}

Moments LifeDistribution::moments() const {
  return std::visit(
      [](const auto& p) -> Moments {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Exponential>) {
          return {1.0 / p.rate, 1.0 / (p.rate * p.rate)};
        } else if constexpr (std::is_same_v<P, LogNormal>) {
          const double s2 = p.sigma * p.sigma;
          const double mean = std::exp(p.mu + 0.5 * s2);
          return {mean, std::expm1(s2) * std::exp(2.0 * p.mu + s2)};
        } else {
          const double s2 = p.scale * p.scale;
          return {p.scale * std::sqrt(0.5 * kPi), (2.0 - 0.5 * kPi) * s2};
        }
      },
      params_);
}

LifeDistribution from_moments(DistKind kind, const Moments& m) {
  require_positive_finite(m.mean, "mean");
  require_positive_finite(m.variance, "variance");
  const double ratio = m.variance / (m.mean * m.mean);
  switch (kind) {
    case DistKind::Exponential: {
      // Exponential forces variance = mean^2.
      if (std::abs(ratio - 1.0) > 1e-6) {
        throw std::invalid_argument(
            "exponential moments inconsistent: variance/mean^2 = " + std::to_string(ratio) +
            ", must equal 1");
      }
      return Exponential{1.0 / m.mean};
    }
    case DistKind::LogNormal: {
      // mean = exp(mu + sigma^2/2), variance = (exp(sigma^2) - 1) exp(2 mu + sigma^2).
      const double s2 = std::log1p(ratio);
      return LogNormal{std::log(m.mean) - 0.5 * s2, std::sqrt(s2)};
    }
    case DistKind::Rayleigh: {
      // Rayleigh forces variance/mean^2 = (4 - pi)/pi.
      const double target = (4.0 - kPi) / kPi;
      if (std::abs(ratio - target) > 1e-6) {
        throw std::invalid_argument(
            "rayleigh moments inconsistent: variance/mean^2 = " + std::to_string(ratio) +
            ", must equal (4 - pi)/pi = " + std::to_string(target));
      }
      return Rayleigh{m.mean * std::sqrt(2.0 / kPi)};
    }
  }
  throw std::invalid_argument("unknown distribution kind");
}

}  // namespace rel
