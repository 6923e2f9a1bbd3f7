#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "linrel/subspace.hpp"
#include "linrel/tolerance.hpp"

namespace linrel {

/// A linear relation from R^dom_dim to R^codom_dim: a subspace of the
/// product R^(dom_dim + codom_dim), domain component stacked on top.
/// Multivalued and partially defined relations are first-class citizens;
/// single-valued everywhere-defined ones are the special case mul = {0},
/// dom = R^dom_dim.
class LinearRelation {
public:
  LinearRelation() : dom_dim_(0), codom_dim_(0), graph_(Subspace::zero(0)) {}

  LinearRelation(int dom_dim, int codom_dim, Subspace graph)
      : dom_dim_(dom_dim), codom_dim_(codom_dim), graph_(std::move(graph)) {
    if (dom_dim < 0 || codom_dim < 0)
      throw ShapeError("LinearRelation: negative space dimension");
    if (graph_.ambient_dim() != dom_dim + codom_dim)
      throw ShapeError("LinearRelation: graph lives in R^" +
                       std::to_string(graph_.ambient_dim()) +
                       ", expected R^" + std::to_string(dom_dim + codom_dim));
  }

  int dom_dim() const { return dom_dim_; }
  int codom_dim() const { return codom_dim_; }
  const Subspace& graph() const { return graph_; }
  int graph_dim() const { return graph_.rank(); }

  bool same_shape(const LinearRelation& other) const {
    return dom_dim_ == other.dom_dim_ && codom_dim_ == other.codom_dim_;
  }

private:
  int dom_dim_;
  int codom_dim_;
  Subspace graph_;
};

/// Graph of the everywhere-defined operator h -> m h (m is codom x dom).
inline LinearRelation from_matrix(const Eigen::MatrixXd& m,
                                  const Tolerance& tol = {}) {
  const int dom = static_cast<int>(m.cols());
  const int codom = static_cast<int>(m.rows());
  Eigen::MatrixXd stacked(dom + codom, dom);
  stacked.topRows(dom) = Eigen::MatrixXd::Identity(dom, dom);
  stacked.bottomRows(codom) = m;
  return LinearRelation(dom, codom, orthonormalize(stacked, dom + codom, tol));
}

/// Span of explicit (h, k) pairs.
inline LinearRelation from_pairs(
    const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs,
    int dom_dim, int codom_dim, const Tolerance& tol = {}) {
  Eigen::MatrixXd stacked(dom_dim + codom_dim, static_cast<int>(pairs.size()));
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    if (pairs[j].first.size() != dom_dim || pairs[j].second.size() != codom_dim)
      throw ShapeError("from_pairs: pair " + std::to_string(j) +
                       " has shape (" + std::to_string(pairs[j].first.size()) +
                       ", " + std::to_string(pairs[j].second.size()) +
                       "), expected (" + std::to_string(dom_dim) + ", " +
                       std::to_string(codom_dim) + ")");
    stacked.col(static_cast<int>(j)).head(dom_dim) = pairs[j].first;
    stacked.col(static_cast<int>(j)).tail(codom_dim) = pairs[j].second;
  }
  return LinearRelation(dom_dim, codom_dim,
                        orthonormalize(stacked, dom_dim + codom_dim, tol));
}

inline LinearRelation identity_relation(int n) {
  return from_matrix(Eigen::MatrixXd::Identity(n, n));
}

/// Everywhere-defined zero operator h -> 0.
inline LinearRelation zero_operator(int dom_dim, int codom_dim) {
  return from_matrix(Eigen::MatrixXd::Zero(codom_dim, dom_dim));
}

/// The trivial relation {0} x {0}.
inline LinearRelation zero_relation(int dom_dim, int codom_dim) {
  return LinearRelation(dom_dim, codom_dim,
                        Subspace::zero(dom_dim + codom_dim));
}

/// The four distinguished subspaces of a relation. They satisfy
/// dim dom + dim mul = dim graph = dim ran + dim ker.
struct RelationParts {
  Subspace dom;  // {h : (h,k) in A}
  Subspace ran;  // {k : (h,k) in A}
  Subspace ker;  // {h : (h,0) in A}
  Subspace mul;  // {k : (0,k) in A}
};

inline RelationParts parts(const LinearRelation& a, const Tolerance& tol = {}) {
  const int dh = a.dom_dim(), dk = a.codom_dim();
  const Eigen::MatrixXd& g = a.graph().basis();
  RelationParts p;
  // Slices of an orthonormal basis: anchor rank decisions at the unit scale
  // of the parent columns (scale_floor = 1).
  p.dom = orthonormalize(Eigen::MatrixXd(g.topRows(dh)), dh, tol, 1.0);
  p.ran = orthonormalize(Eigen::MatrixXd(g.bottomRows(dk)), dk, tol, 1.0);
  const Subspace ker_slice =
      intersect(a.graph(), product(Subspace::full(dh), Subspace::zero(dk)), tol);
  p.ker = orthonormalize(Eigen::MatrixXd(ker_slice.basis().topRows(dh)), dh,
                         tol, 1.0);
  const Subspace mul_slice =
      intersect(a.graph(), product(Subspace::zero(dh), Subspace::full(dk)), tol);
  p.mul = orthonormalize(Eigen::MatrixXd(mul_slice.basis().bottomRows(dk)), dk,
                         tol, 1.0);
  return p;
}

/// A^-1: swap the two graph components. Always exists.
inline LinearRelation inverse(const LinearRelation& a) {
  const int dh = a.dom_dim(), dk = a.codom_dim();
  Eigen::MatrixXd swapped(dk + dh, a.graph_dim());
  swapped.topRows(dk) = a.graph().basis().bottomRows(dk);
  swapped.bottomRows(dh) = a.graph().basis().topRows(dh);
  return LinearRelation(dk, dh, Subspace::from_orthonormal(std::move(swapped)));
}

/// Adjoint A*: the orthogonal complement, inside R^(codom+dom), of the
/// flipped-and-negated graph {(k, -h) : (h, k) in A}. Equivalently the set
/// of pairs (k', h') with <k, k'> = <h, h'> for all (h, k) in A.
inline LinearRelation adjoint(const LinearRelation& a) {
  const int dh = a.dom_dim(), dk = a.codom_dim();
  Eigen::MatrixXd flipped(dk + dh, a.graph_dim());
  flipped.topRows(dk) = a.graph().basis().bottomRows(dk);
  flipped.bottomRows(dh) = -a.graph().basis().topRows(dh);
  // The flip map is orthogonal, so the columns stay orthonormal.
  const Subspace rotated = Subspace::from_orthonormal(std::move(flipped));
  return LinearRelation(dk, dh, complement(rotated));
}

/// Closure = double adjoint, computed rather than assumed; at this scale it
/// reproduces the relation, and tests check exactly that.
inline LinearRelation closure(const LinearRelation& a) {
  return adjoint(adjoint(a));
}

namespace detail {

/// Intersect the product arrangement (u, v) in R^(na+nb), u from A's graph
/// and v from B's graph, with the subspace `constraint`, then push the
/// result through `collapse`. Shared plumbing for op_sum / compose / column.
inline Subspace joint_construction(const Subspace& ga, const Subspace& gb,
                                   const Subspace& constraint,
                                   const Eigen::MatrixXd& collapse,
                                   const Tolerance& tol) {
  const Subspace joint = intersect(product(ga, gb), constraint, tol);
  // The collapse matrix selects coordinates of an orthonormal basis, so a
  // vanishing image means the trivial pair (0, 0): anchor at scale 1.
  return map_image(collapse, joint, tol, 1.0);
}

}  // namespace detail

/// Operatorwise sum A1 + A2 = {(h, k1 + k2) : (h, k1) in A1, (h, k2) in A2};
/// its domain is dom A1 ∩ dom A2.
inline LinearRelation op_sum(const LinearRelation& a1, const LinearRelation& a2,
                             const Tolerance& tol = {}) {
  if (!a1.same_shape(a2))
    throw ShapeError("op_sum: shapes differ (" + std::to_string(a1.dom_dim()) +
                     "->" + std::to_string(a1.codom_dim()) + " vs " +
                     std::to_string(a2.dom_dim()) + "->" +
                     std::to_string(a2.codom_dim()) + ")");
  const int dh = a1.dom_dim(), dk = a1.codom_dim();
  // Coordinates (h1, k1, h2, k2); constrain h1 = h2, emit (h1, k1 + k2).
  const int na = dh + dk;
  Eigen::MatrixXd cb = Eigen::MatrixXd::Zero(2 * na, dh + 2 * dk);
  const double rs = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dh; ++i) {
    cb(i, i) = rs;
    cb(na + i, i) = rs;
  }
  for (int j = 0; j < dk; ++j) cb(dh + j, dh + j) = 1.0;
  for (int j = 0; j < dk; ++j) cb(na + dh + j, dh + dk + j) = 1.0;
  Eigen::MatrixXd collapse = Eigen::MatrixXd::Zero(dh + dk, 2 * na);
  collapse.block(0, 0, dh, dh).setIdentity();
  collapse.block(dh, dh, dk, dk).setIdentity();
  collapse.block(dh, na + dh, dk, dk).setIdentity();
  return LinearRelation(
      dh, dk,
      detail::joint_construction(a1.graph(), a2.graph(),
                                 Subspace::from_orthonormal(std::move(cb)),
                                 collapse, tol));
}

/// Componentwise (graph) sum A1 [+] A2: the span of the two graphs.
inline LinearRelation cw_sum(const LinearRelation& a1, const LinearRelation& a2,
                             const Tolerance& tol = {}) {
  if (!a1.same_shape(a2))
    throw ShapeError("cw_sum: shapes differ");
  return LinearRelation(a1.dom_dim(), a1.codom_dim(),
                        sum(a1.graph(), a2.graph(), tol));
}

/// Composition S X = {(h, k) : exists m with (h, m) in X, (m, k) in S}.
/// Built in the joint space (h, m1, m2, k) with the constraint m1 = m2.
inline LinearRelation compose(const LinearRelation& s, const LinearRelation& x,
                              const Tolerance& tol = {}) {
  if (x.codom_dim() != s.dom_dim())
    throw ShapeError("compose: inner dimensions differ (" +
                     std::to_string(x.codom_dim()) + " vs " +
                     std::to_string(s.dom_dim()) + ")");
  const int d0 = x.dom_dim(), d1 = x.codom_dim(), d2 = s.codom_dim();
  const int na = d0 + d1;
  Eigen::MatrixXd cb = Eigen::MatrixXd::Zero(d0 + 2 * d1 + d2, d0 + d1 + d2);
  const double rs = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d0; ++i) cb(i, i) = 1.0;
  for (int j = 0; j < d1; ++j) {
    cb(d0 + j, d0 + j) = rs;
    cb(na + j, d0 + j) = rs;
  }
  for (int l = 0; l < d2; ++l) cb(na + d1 + l, d0 + d1 + l) = 1.0;
  Eigen::MatrixXd collapse = Eigen::MatrixXd::Zero(d0 + d2, d0 + 2 * d1 + d2);
  collapse.block(0, 0, d0, d0).setIdentity();
  collapse.block(d0, na + d1, d2, d2).setIdentity();
  return LinearRelation(
      d0, d2,
      detail::joint_construction(x.graph(), s.graph(),
                                 Subspace::from_orthonormal(std::move(cb)),
                                 collapse, tol));
}

/// A1 ∩ A2 as sets of pairs: intersection of the graphs.
inline LinearRelation intersect_relations(const LinearRelation& a1,
                                          const LinearRelation& a2,
                                          const Tolerance& tol = {}) {
  if (!a1.same_shape(a2))
    throw ShapeError("intersect_relations: shapes differ");
  return LinearRelation(a1.dom_dim(), a1.codom_dim(),
                        intersect(a1.graph(), a2.graph(), tol));
}

/// Domain restriction: pairs of A whose first component lies in S.
inline LinearRelation restrict(const LinearRelation& a, const Subspace& s,
                               const Tolerance& tol = {}) {
  if (s.ambient_dim() != a.dom_dim())
    throw ShapeError("restrict: subspace lives in R^" +
                     std::to_string(s.ambient_dim()) + ", domain is R^" +
                     std::to_string(a.dom_dim()));
  return LinearRelation(
      a.dom_dim(), a.codom_dim(),
      intersect(a.graph(), product(s, Subspace::full(a.codom_dim())), tol));
}

/// Equality residual in radians (pi/2 on graph-rank mismatch).
inline double deviation(const LinearRelation& a, const LinearRelation& b) {
  if (!a.same_shape(b))
    throw ShapeError("deviation: relation shapes differ");
  return deviation(a.graph(), b.graph());
}

/// How far A is from being contained in B, in radians.
inline double containment_residual(const LinearRelation& a,
                                   const LinearRelation& b) {
  if (!a.same_shape(b))
    throw ShapeError("containment_residual: relation shapes differ");
  return containment_residual(a.graph(), b.graph());
}

inline Containment compare_relations(const LinearRelation& a,
                                     const LinearRelation& b,
                                     const Tolerance& tol = {}) {
  if (!a.same_shape(b))
    throw ShapeError("compare_relations: relation shapes differ");
  return compare(a.graph(), b.graph(), tol);
}

/// Structural predicates, each decided from computed parts at tolerance.
struct RelationPredicates {
  bool is_operator = false;      // mul = {0}
  bool is_closed = false;        // closure(A) = A
  bool is_closable = false;      // mul closure(A) = {0}
  bool is_product_form = false;  // ker = dom and mul = ran (A = M x N)
  bool is_isometric = false;     // A^-1 ⊆ A*
};

inline bool is_operator(const LinearRelation& a, const Tolerance& tol = {}) {
  return parts(a, tol).mul.rank() == 0;
}

inline bool is_closed(const LinearRelation& a, const Tolerance& tol = {}) {
  return deviation(closure(a), a) < tol.angle_abs;
}

inline bool is_closable(const LinearRelation& a, const Tolerance& tol = {}) {
  return parts(closure(a), tol).mul.rank() == 0;
}

inline bool is_product_form(const LinearRelation& a, const Tolerance& tol = {}) {
  const RelationParts p = parts(a, tol);
  return compare(p.ker, p.dom, tol) == Containment::equal &&
         compare(p.mul, p.ran, tol) == Containment::equal;
}

inline bool is_isometric(const LinearRelation& a, const Tolerance& tol = {}) {
  const Containment c = compare_relations(inverse(a), adjoint(a), tol);
  return c == Containment::equal || c == Containment::s1_in_s2;
}

inline RelationPredicates predicates(const LinearRelation& a,
                                     const Tolerance& tol = {}) {
  RelationPredicates p;
  p.is_operator = is_operator(a, tol);
  p.is_closed = is_closed(a, tol);
  p.is_closable = is_closable(a, tol);
  p.is_product_form = is_product_form(a, tol);
  p.is_isometric = is_isometric(a, tol);
  return p;
}

}  // namespace linrel
