#pragma once

#include <functional>
#include <vector>

namespace rel {

/// Uniform evaluation grid on [0, t_max] with steps + 1 points.
class Grid {
 public:
  Grid(double t_max, int steps);

  double t_max() const { return t_max_; }
  int steps() const { return steps_; }
  const std::vector<double>& points() const { return points_; }

  bool operator==(const Grid& other) const {
    return t_max_ == other.t_max_ && steps_ == other.steps_;
  }

 private:
  double t_max_;
  int steps_;
  std::vector<double> points_;
};

/// One sampled curve (R, lambda, or f) over a grid.
struct SurvivalCurve {
  Grid grid;
  std::vector<double> values;
};

struct QuadratureResult {
  double value;
  double est_error;
  double truncation_point;
};

/// Integral of a survival-valued function over [0, inf).
///
/// The tail is truncated at the first point of the doubling sequence
/// T = 1, 2, 4, ... with f(T) < 1e-9; composite Simpson sums on [0, T] are
/// then refined (interval count doubled) until two successive refinements
/// differ by less than 1e-8. est_error is that difference plus the tail
/// bound f(T)*T, which holds because the integrand is non-increasing and
/// integrable.
///
/// Requires f(0) = 1 within 1e-9 (throws std::domain_error) and f
/// non-increasing (caller's obligation). Throws QuadratureError, carrying
/// the partial result, if 24 refinement levels do not converge.
QuadratureResult integrate_survival(const std::function<double(double)>& f);

/// Central difference with step h = max(1e-6, 1e-6 * t); one-sided forward
/// difference when t < h so f is never evaluated at negative times.
double derivative(const std::function<double(double)>& f, double t);

}  // namespace rel
