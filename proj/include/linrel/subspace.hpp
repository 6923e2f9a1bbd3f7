#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "linrel/tolerance.hpp"

namespace linrel {

/// A linear subspace of R^n, stored as an orthonormal basis.
///
/// The basis is an n x rank matrix with orthonormal columns; rank 0 encodes
/// the zero subspace {0}. Instances are immutable values: every operation
/// returns a fresh subspace.
class Subspace {
public:
  Subspace() : ambient_(0), basis_(0, 0) {}

  /// Wrap a matrix whose columns are already orthonormal. Validates the
  /// Gram matrix so the orthonormality invariant holds by construction.
  static Subspace from_orthonormal(Eigen::MatrixXd basis) {
    const int n = static_cast<int>(basis.rows());
    const int r = static_cast<int>(basis.cols());
    if (r > n)
      throw ShapeError("Subspace: rank " + std::to_string(r) +
                       " exceeds ambient dimension " + std::to_string(n));
    if (r > 0) {
      const double gram_dev =
          (basis.transpose() * basis - Eigen::MatrixXd::Identity(r, r))
              .cwiseAbs()
              .maxCoeff();
      if (gram_dev >= 1e-12)
        throw PreconditionError(
            "Subspace: basis is not orthonormal (Gram deviation " +
            std::to_string(gram_dev) + ")");
    }
    return Subspace(n, std::move(basis));
  }

  static Subspace zero(int ambient_dim) {
    check_ambient(ambient_dim);
    return Subspace(ambient_dim, Eigen::MatrixXd(ambient_dim, 0));
  }

  static Subspace full(int ambient_dim) {
    check_ambient(ambient_dim);
    return Subspace(ambient_dim,
                    Eigen::MatrixXd::Identity(ambient_dim, ambient_dim));
  }

  int ambient_dim() const { return ambient_; }
  int rank() const { return static_cast<int>(basis_.cols()); }
  bool is_zero() const { return rank() == 0; }
  bool is_full() const { return rank() == ambient_; }

  /// Orthonormal basis, one column per basis vector (n x rank).
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// Orthogonal projector onto the subspace (n x n).
  Eigen::MatrixXd projector() const {
    if (rank() == 0) return Eigen::MatrixXd::Zero(ambient_, ambient_);
    return basis_ * basis_.transpose();
  }

private:
  Subspace(int ambient_dim, Eigen::MatrixXd basis)
      : ambient_(ambient_dim), basis_(std::move(basis)) {}

  static void check_ambient(int n) {
    if (n < 0) throw ShapeError("Subspace: negative ambient dimension");
  }

  int ambient_;
  Eigen::MatrixXd basis_;
};

/// Span of the columns of `vectors` inside R^ambient, with SVD-based rank
/// truncation: singular values below
/// rank_rel * sigma_max * max(ambient, count) are discarded.
///
/// `scale_floor` anchors the threshold at an external scale: when the input
/// is a slice or image of an orthonormal frame, the parent columns are unit
/// vectors, and a uniformly tiny input (sigma_max ~ machine noise) must be
/// read as {0} rather than renormalized into phantom directions. Internal
/// callers slicing orthonormal bases pass 1.0; the default 0.0 keeps the
/// purely relative rule.
inline Subspace orthonormalize(const Eigen::MatrixXd& vectors, int ambient_dim,
                               const Tolerance& tol = {},
                               double scale_floor = 0.0) {
  if (ambient_dim < 0)
    throw ShapeError("orthonormalize: negative ambient dimension");
  if (vectors.cols() > 0 && vectors.rows() != ambient_dim)
    throw ShapeError("orthonormalize: vectors have length " +
                     std::to_string(vectors.rows()) + ", ambient is " +
                     std::to_string(ambient_dim));
  const int count = static_cast<int>(vectors.cols());
  if (ambient_dim == 0 || count == 0) return Subspace::zero(ambient_dim);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
  const double sigma_max = svd.singularValues()(0);
  if (!(sigma_max > 0.0)) return Subspace::zero(ambient_dim);
  const double thr = tol.rank_threshold(std::max(sigma_max, scale_floor),
                                        ambient_dim, count);
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > thr)
    ++rank;
  return Subspace::from_orthonormal(svd.matrixU().leftCols(rank));
}

/// Convenience overload taking an explicit vector collection.
inline Subspace orthonormalize(const std::vector<Eigen::VectorXd>& vectors,
                               int ambient_dim, const Tolerance& tol = {}) {
  Eigen::MatrixXd m(ambient_dim, static_cast<int>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != ambient_dim)
      throw ShapeError("orthonormalize: vector " + std::to_string(j) +
                       " has length " + std::to_string(vectors[j].size()) +
                       ", ambient is " + std::to_string(ambient_dim));
    m.col(static_cast<int>(j)) = vectors[j];
  }
  return orthonormalize(m, ambient_dim, tol);
}

/// Orthogonal complement S^perp. perp(perp(S)) reproduces S and the two
/// bases are mutually orthogonal by construction.
inline Subspace complement(const Subspace& s) {
  const int n = s.ambient_dim();
  const int r = s.rank();
  if (r == 0) return Subspace::full(n);
  if (r == n) return Subspace::zero(n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.basis(), Eigen::ComputeFullU);
  return Subspace::from_orthonormal(svd.matrixU().rightCols(n - r));
}

namespace detail {
inline void check_same_ambient(const Subspace& s1, const Subspace& s2,
                               const char* op) {
  if (s1.ambient_dim() != s2.ambient_dim())
    throw ShapeError(std::string(op) + ": ambient dimensions differ (" +
                     std::to_string(s1.ambient_dim()) + " vs " +
                     std::to_string(s2.ambient_dim()) + ")");
}
}  // namespace detail

/// Span of the union, S1 + S2.
inline Subspace sum(const Subspace& s1, const Subspace& s2,
                    const Tolerance& tol = {}) {
  detail::check_same_ambient(s1, s2, "sum");
  Eigen::MatrixXd joined(s1.ambient_dim(), s1.rank() + s2.rank());
  joined << s1.basis(), s2.basis();
  return orthonormalize(joined, s1.ambient_dim(), tol);
}

/// S1 ∩ S2 by the null-space method: null vectors (x; y) of [B1 | -B2]
/// satisfy B1 x = B2 y, and those common points span the intersection.
inline Subspace intersect(const Subspace& s1, const Subspace& s2,
                          const Tolerance& tol = {}) {
  detail::check_same_ambient(s1, s2, "intersect");
  const int n = s1.ambient_dim();
  const int r1 = s1.rank(), r2 = s2.rank();
  if (r1 == 0 || r2 == 0) return Subspace::zero(n);

  Eigen::MatrixXd m(n, r1 + r2);
  m << s1.basis(), -s2.basis();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const double sigma_max = svd.singularValues()(0);
  const double thr = tol.rank_threshold(sigma_max, n, r1 + r2);
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > thr)
    ++rank;
  const int null_dim = r1 + r2 - rank;
  if (null_dim <= 0) return Subspace::zero(n);
  const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(null_dim);
  // Map the x-parts through B1; for unit null vectors the common point
  // B1 x has norm 1/sqrt(2), so the spans are well conditioned.
  return orthonormalize(s1.basis() * null_basis.topRows(r1), n, tol);
}

/// Image of S under the linear map with matrix `m` (rows x ambient).
/// `scale_floor` is forwarded to the rank decision (see orthonormalize); pass
/// 1.0 when `m` is a selector applied to an orthonormal basis, so that a
/// numerically vanishing image collapses to {0}.
inline Subspace map_image(const Eigen::MatrixXd& m, const Subspace& s,
                          const Tolerance& tol = {}, double scale_floor = 0.0) {
  if (m.cols() != s.ambient_dim())
    throw ShapeError("map_image: matrix has " + std::to_string(m.cols()) +
                     " columns, ambient is " + std::to_string(s.ambient_dim()));
  return orthonormalize(m * s.basis(), static_cast<int>(m.rows()), tol,
                        scale_floor);
}

/// Product subspace S1 x S2 inside R^(n1+n2), first factor on top.
inline Subspace product(const Subspace& s1, const Subspace& s2) {
  const int n1 = s1.ambient_dim(), n2 = s2.ambient_dim();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n1 + n2, s1.rank() + s2.rank());
  basis.topLeftCorner(n1, s1.rank()) = s1.basis();
  basis.bottomRightCorner(n2, s2.rank()) = s2.basis();
  return Subspace::from_orthonormal(std::move(basis));
}

/// How far S1 is from being contained in S2, in radians: the arcsine of
/// ||(I - P_{S2}) B1||_2, i.e. the largest angle between a unit vector of S1
/// and the space S2. Sines are used because cosines cannot resolve angles
/// near 1e-8 in double precision.
inline double containment_residual(const Subspace& s1, const Subspace& s2) {
  detail::check_same_ambient(s1, s2, "containment_residual");
  if (s1.rank() == 0) return 0.0;
  if (s2.rank() == 0) return std::asin(1.0);  // pi/2: nothing fits in {0}
  const Eigen::MatrixXd resid =
      s1.basis() - s2.basis() * (s2.basis().transpose() * s1.basis());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(resid);
  const double sine = std::min(1.0, svd.singularValues()(0));
  return std::asin(sine);
}

/// Symmetric equality residual in radians: pi/2 on rank mismatch, otherwise
/// the largest principal angle between the two spans (via sines).
inline double deviation(const Subspace& s1, const Subspace& s2) {
  detail::check_same_ambient(s1, s2, "deviation");
  if (s1.rank() != s2.rank()) return std::asin(1.0);
  if (s1.rank() == 0) return 0.0;
  return std::max(containment_residual(s1, s2), containment_residual(s2, s1));
}

enum class Containment { equal, s1_in_s2, s2_in_s1, incomparable };

inline const char* to_string(Containment c) {
  switch (c) {
    case Containment::equal: return "equal";
    case Containment::s1_in_s2: return "s1_in_s2";
    case Containment::s2_in_s1: return "s2_in_s1";
    default: return "incomparable";
  }
}

/// Mutual-containment comparison with angle_abs as the decision threshold.
inline Containment compare(const Subspace& s1, const Subspace& s2,
                           const Tolerance& tol = {}) {
  detail::check_same_ambient(s1, s2, "compare");
  const bool fwd = s1.rank() <= s2.rank() &&
                   containment_residual(s1, s2) < tol.angle_abs;
  const bool bwd = s2.rank() <= s1.rank() &&
                   containment_residual(s2, s1) < tol.angle_abs;
  if (fwd && bwd) return Containment::equal;
  if (fwd) return Containment::s1_in_s2;
  if (bwd) return Containment::s2_in_s1;
  return Containment::incomparable;
}

/// Whether S, always stored closed, agrees with its double complement —
/// the computed stand-in for topological closedness at this scale.
inline double closedness_residual(const Subspace& s) {
  return deviation(complement(complement(s)), s);
}

/// Principal angles between two nonzero subspaces, plus derived scalars.
///
/// Angles are the arccosines of the singular values of the cross-Gram
/// B1^T B2, listed nondecreasing (min(rank1, rank2) of them). min_gap is the
/// smallest angle. cos_friedrichs discards the dim(S1 ∩ S2) leading zero
/// angles and reports the largest remaining cosine (0 when none remain, the
/// convention for the angle between a space and itself or a superspace).
struct PrincipalAngles {
  Eigen::VectorXd angles;
  double min_gap = 0.0;
  double cos_friedrichs = 0.0;
};

inline PrincipalAngles principal_angles(const Subspace& s1, const Subspace& s2,
                                        const Tolerance& tol = {}) {
  detail::check_same_ambient(s1, s2, "principal_angles");
  if (s1.rank() == 0 || s2.rank() == 0)
    throw PreconditionError(
        "principal_angles: undefined for a zero subspace (ranks " +
        std::to_string(s1.rank()) + ", " + std::to_string(s2.rank()) + ")");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s1.basis().transpose() * s2.basis());
  Eigen::VectorXd cosines = svd.singularValues();  // nonincreasing
  for (int i = 0; i < cosines.size(); ++i)
    cosines(i) = std::clamp(cosines(i), 0.0, 1.0);

  PrincipalAngles result;
  result.angles.resize(cosines.size());
  for (int i = 0; i < cosines.size(); ++i)
    result.angles(i) = std::acos(cosines(i));  // nondecreasing
  result.min_gap = result.angles(0);

  const int meet_dim = intersect(s1, s2, tol).rank();
  result.cos_friedrichs =
      meet_dim < cosines.size() ? cosines(meet_dim) : 0.0;
  return result;
}

}  // namespace linrel
