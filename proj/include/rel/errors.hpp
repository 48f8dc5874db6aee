#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rel {

/// Model or model-file invariant violations. Carries the full list of
/// violations, never just the first one found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& violations) {
    std::string msg = "validation failed:";
    for (const auto& v : violations) {
      msg += "\n  - " + v;
    }
    return msg;
  }

  std::vector<std::string> violations_;
};

/// A numeric routine could not produce a trustworthy result
/// (hazard undefined at a point, quadrature non-convergence, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature failed to converge; the partial result is retained.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double value, double est_error,
                  double truncation_point)
      : NumericError(what),
        value_(value),
        est_error_(est_error),
        truncation_point_(truncation_point) {}

  double value() const { return value_; }
  double est_error() const { return est_error_; }
  double truncation_point() const { return truncation_point_; }

 private:
  double value_;
  double est_error_;
  double truncation_point_;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rel
