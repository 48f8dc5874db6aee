#include "rel/numerics.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include "rel/errors.hpp"

namespace rel {

Grid::Grid(double t_max, int steps) : t_max_(t_max), steps_(steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("grid t_max must be strictly positive and finite");
  }
  if (steps < 2) {
    throw std::invalid_argument("grid steps must be at least 2");
  }
  points_.resize(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    points_[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / steps;
  }
  points_.front() = 0.0;
  points_.back() = t_max;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1])) {
      throw std::invalid_argument("grid points must be strictly increasing; t_max too small for steps");
    }
  }
}

namespace {

// Composite Simpson with n (even) intervals on [0, b].
double simpson(const std::function<double(double)>& f, double b, std::size_t n) {
  const double h = b / static_cast<double>(n);
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) {
    odd += f(static_cast<double>(i) * h);
  }
  for (std::size_t i = 2; i < n; i += 2) {
    even += f(static_cast<double>(i) * h);
  }
  return (h / 3.0) * (f(0.0) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace

QuadratureResult integrate_survival(const std::function<double(double)>& f) {
  constexpr double kTailCutoff = 1e-9;
  constexpr double kConvergence = 1e-8;
  constexpr int kMaxRefinements = 24;

  if (std::abs(f(0.0) - 1.0) > 1e-9) {
    throw std::domain_error("integrate_survival: f(0) must equal 1 within 1e-9");
  }

  double truncation = 1.0;
  while (f(truncation) >= kTailCutoff) {
    truncation *= 2.0;
    if (truncation > 0x1p60) {
      throw QuadratureError("integrate_survival: no truncation point with f(T) < 1e-9 below 2^60",
                            0.0, std::numeric_limits<double>::infinity(), truncation);
    }
  }
  const double tail_bound = f(truncation) * truncation;

  std::size_t n = 2;
  double prev = simpson(f, truncation, n);
  double cur = prev;
  double diff = 0.0;
  for (int level = 1; level <= kMaxRefinements; ++level) {
    n *= 2;
    cur = simpson(f, truncation, n);
    diff = std::abs(cur - prev);
    if (diff <= kConvergence) {
      return {cur, diff + tail_bound, truncation};
    }
    prev = cur;
  }
  throw QuadratureError("integrate_survival: refinement did not converge to 1e-8 after " +
                            std::to_string(kMaxRefinements) + " levels",
                        cur, diff + tail_bound, truncation);
}

double derivative(const std::function<double(double)>& f, double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("derivative: t must be nonnegative");
  }
  const double h = std::max(1e-6, 1e-6 * t);
  if (t < h) {
    return (f(t + h) - f(t)) / h;
  }
  return (f(t + h) - f(t - h)) / (2.0 * h);
}

}  // namespace rel
