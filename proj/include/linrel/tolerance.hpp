#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace linrel {

/// Error raised when operands have incompatible ambient or factor dimensions.
class ShapeError : public std::invalid_argument {
public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// Error raised when a mathematical precondition fails (zero subspace where
/// angles are undefined, violated domain inclusion, bad generator parameters).
class PreconditionError : public std::invalid_argument {
public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical thresholds shared by every operation.
///
/// rank_rel is relative: a singular value is treated as zero when it falls
/// below rank_rel * (largest singular value) * (max matrix dimension).
/// angle_abs is an absolute bound, in radians, on principal-angle residuals
/// used by equality and containment decisions.
struct Tolerance {
  double rank_rel = 0x1p-40;  // 2^-40 ~ 9.09e-13
  double angle_abs = 1e-8;

  Tolerance() = default;
  Tolerance(double rank_rel_, double angle_abs_)
      : rank_rel(rank_rel_), angle_abs(angle_abs_) {
    if (!(rank_rel > 0.0) || !std::isfinite(rank_rel))
      throw PreconditionError("Tolerance: rank_rel must be positive and finite");
    if (!(angle_abs > 0.0) || !std::isfinite(angle_abs))
      throw PreconditionError("Tolerance: angle_abs must be positive and finite");
  }

  /// Truncation threshold for singular values of a matrix with extents
  /// (rows, cols) whose largest singular value is sigma_max.
  double rank_threshold(double sigma_max, int rows, int cols) const {
    return rank_rel * sigma_max * static_cast<double>(rows > cols ? rows : cols);
  }
};

}  // namespace linrel
