#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>

#include "linrel/relation.hpp"
#include "linrel/subspace.hpp"
#include "linrel/tolerance.hpp"

namespace linrel {

/// Dimensions (d1, d2) of an orthogonal product R^d1 x R^d2.
struct ProductShape {
  int d1 = 0;
  int d2 = 0;

  int total() const { return d1 + d2; }
};

enum class Factor { first, second };

/// The coordinate projection P_i : R^(d1+d2) -> R^(d_i) as an
/// everywhere-defined operator relation.
inline LinearRelation projection_relation(ProductShape shape, Factor which) {
  if (shape.d1 < 0 || shape.d2 < 0)
    throw ShapeError("projection_relation: negative factor dimension");
  const int n = shape.total();
  if (which == Factor::first) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(shape.d1, n);
    m.leftCols(shape.d1).setIdentity();
    return from_matrix(m);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(shape.d2, n);
  m.rightCols(shape.d2).setIdentity();
  return from_matrix(m);
}

/// The isometric embedding R^(d_i) -> R^(d1+d2) onto the i-th factor,
/// built directly from its matrix (independently of any adjoint code path).
inline LinearRelation embedding_relation(ProductShape shape, Factor which) {
  if (shape.d1 < 0 || shape.d2 < 0)
    throw ShapeError("embedding_relation: negative factor dimension");
  const int n = shape.total();
  if (which == Factor::first) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, shape.d1);
    m.topRows(shape.d1).setIdentity();
    return from_matrix(m);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, shape.d2);
  m.bottomRows(shape.d2).setIdentity();
  return from_matrix(m);
}

namespace detail {
inline void check_row_shapes(const LinearRelation& r1, const LinearRelation& r2,
                             const char* op) {
  if (r1.codom_dim() != r2.codom_dim())
    throw ShapeError(std::string(op) + ": codomain dimensions differ (" +
                     std::to_string(r1.codom_dim()) + " vs " +
                     std::to_string(r2.codom_dim()) + ")");
}
inline void check_col_shapes(const LinearRelation& c1, const LinearRelation& c2,
                             const char* op) {
  if (c1.dom_dim() != c2.dom_dim())
    throw ShapeError(std::string(op) + ": domain dimensions differ (" +
                     std::to_string(c1.dom_dim()) + " vs " +
                     std::to_string(c2.dom_dim()) + ")");
}
}  // namespace detail

/// Row of two relations R1 ⊆ H1 x K, R2 ⊆ H2 x K:
///   row(R1, R2) = {((h1, h2), k1 + k2) : (h_i, k_i) in R_i} ⊆ (H1 x H2) x K.
/// Since the components vary independently, the graph is the span of the
/// embedded generators ((h1, 0), k1) and ((0, h2), k2).
inline LinearRelation row(const LinearRelation& r1, const LinearRelation& r2,
                          const Tolerance& tol = {}) {
  detail::check_row_shapes(r1, r2, "row");
  const int h1 = r1.dom_dim(), h2 = r2.dom_dim(), dk = r1.codom_dim();
  const int n = h1 + h2 + dk;
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n, r1.graph_dim() + r2.graph_dim());
  gen.block(0, 0, h1, r1.graph_dim()) = r1.graph().basis().topRows(h1);
  gen.block(h1 + h2, 0, dk, r1.graph_dim()) = r1.graph().basis().bottomRows(dk);
  gen.block(h1, r1.graph_dim(), h2, r2.graph_dim()) =
      r2.graph().basis().topRows(h2);
  gen.block(h1 + h2, r1.graph_dim(), dk, r2.graph_dim()) =
      r2.graph().basis().bottomRows(dk);
  return LinearRelation(h1 + h2, dk, orthonormalize(gen, n, tol));
}

/// The two factorization routes for a row (their agreement with `row` is one
/// of the registered laws):
///   componentwise: (R1 ∘ E1^-1) [+] (R2 ∘ E2^-1), E_i the factor embedding,
///   operatorwise:  (R1 ∘ P1)  +  (R2 ∘ P2),      P_i the factor projection.
struct RowFormulas {
  LinearRelation componentwise;
  LinearRelation operatorwise;
};

inline RowFormulas row_via_formulas(const LinearRelation& r1,
                                    const LinearRelation& r2,
                                    const Tolerance& tol = {}) {
  detail::check_row_shapes(r1, r2, "row_via_formulas");
  const ProductShape shape{r1.dom_dim(), r2.dom_dim()};
  RowFormulas out;
  out.componentwise =
      cw_sum(compose(r1, inverse(embedding_relation(shape, Factor::first)), tol),
             compose(r2, inverse(embedding_relation(shape, Factor::second)), tol),
             tol);
  out.operatorwise =
      op_sum(compose(r1, projection_relation(shape, Factor::first), tol),
             compose(r2, projection_relation(shape, Factor::second), tol), tol);
  return out;
}

/// Column of two relations C1 ⊆ H x K1, C2 ⊆ H x K2:
///   col(C1, C2) = {(h, (k1, k2)) : (h, k_i) in C_i} ⊆ H x (K1 x K2).
/// Unlike a row this couples the components through the shared h, so it is
/// built in the joint space (h1, k1, h2, k2) with the constraint h1 = h2.
inline LinearRelation column(const LinearRelation& c1, const LinearRelation& c2,
                             const Tolerance& tol = {}) {
  detail::check_col_shapes(c1, c2, "column");
  const int dh = c1.dom_dim(), k1 = c1.codom_dim(), k2 = c2.codom_dim();
  Eigen::MatrixXd cb =
      Eigen::MatrixXd::Zero(2 * dh + k1 + k2, dh + k1 + k2);
  const double rs = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dh; ++i) {
    cb(i, i) = rs;
    cb(dh + k1 + i, i) = rs;
  }
  for (int j = 0; j < k1; ++j) cb(dh + j, dh + j) = 1.0;
  for (int j = 0; j < k2; ++j) cb(2 * dh + k1 + j, dh + k1 + j) = 1.0;
  Eigen::MatrixXd collapse =
      Eigen::MatrixXd::Zero(dh + k1 + k2, 2 * dh + k1 + k2);
  collapse.block(0, 0, dh, dh).setIdentity();
  collapse.block(dh, dh, k1, k1).setIdentity();
  collapse.block(dh + k1, 2 * dh + k1, k2, k2).setIdentity();
  return LinearRelation(
      dh, k1 + k2,
      detail::joint_construction(c1.graph(), c2.graph(),
                                 Subspace::from_orthonormal(std::move(cb)),
                                 collapse, tol));
}

/// Independent route to the column: col(C1, C2) = (Q1^-1 C1) ∩ (Q2^-1 C2),
/// Q_i the codomain-factor projections.
inline LinearRelation column_via_intersection(const LinearRelation& c1,
                                              const LinearRelation& c2,
                                              const Tolerance& tol = {}) {
  detail::check_col_shapes(c1, c2, "column_via_intersection");
  const ProductShape shape{c1.codom_dim(), c2.codom_dim()};
  const LinearRelation lift1 =
      compose(inverse(projection_relation(shape, Factor::first)), c1, tol);
  const LinearRelation lift2 =
      compose(inverse(projection_relation(shape, Factor::second)), c2, tol);
  return intersect_relations(lift1, lift2, tol);
}

/// A flagged quantity: `holds` is `residual < angle_abs` for the relevant
/// residual (radians).
struct FlagResidual {
  bool holds = false;
  double residual = 0.0;
};

/// col(C1, C2)* versus the row of the adjoints, all three objects computed:
/// the inclusion closure(row(C1*, C2*)) ⊆ col(C1, C2)* always holds; equality
/// is a separate flag.
struct AdjointColumnReport {
  LinearRelation col_star;
  LinearRelation row_of_adjoints;
  LinearRelation closure_of_row;
  FlagResidual inclusion;  // closure_of_row ⊆ col_star
  FlagResidual equality;   // closure_of_row = col_star
};

inline AdjointColumnReport adjoint_of_column_report(const LinearRelation& c1,
                                                    const LinearRelation& c2,
                                                    const Tolerance& tol = {}) {
  detail::check_col_shapes(c1, c2, "adjoint_of_column_report");
  AdjointColumnReport rep;
  rep.col_star = adjoint(column(c1, c2, tol));
  rep.row_of_adjoints = row(adjoint(c1), adjoint(c2), tol);
  rep.closure_of_row = closure(rep.row_of_adjoints);
  rep.inclusion.residual =
      containment_residual(rep.closure_of_row, rep.col_star);
  rep.inclusion.holds = rep.inclusion.residual < tol.angle_abs;
  rep.equality.residual = deviation(rep.closure_of_row, rep.col_star);
  rep.equality.holds = rep.equality.residual < tol.angle_abs;
  return rep;
}

/// Closedness of dom A1* + dom A2* (the pair read as a row): the sharp
/// condition for row(A1*, A2*)-style adjoints to be closed.
inline FlagResidual condition_R(const LinearRelation& r1,
                                const LinearRelation& r2,
                                const Tolerance& tol = {}) {
  detail::check_row_shapes(r1, r2, "condition_R");
  const Subspace d =
      sum(parts(adjoint(r1), tol).dom, parts(adjoint(r2), tol).dom, tol);
  FlagResidual out;
  out.residual = closedness_residual(d);
  out.holds = out.residual < tol.angle_abs;
  return out;
}

/// The named conditions attached to a column pair (C, C', a, b, c), plus the
/// row condition (R) when the pair is also row-compatible. Every flag is
/// computed from constructed objects, never assumed.
struct ConditionReport {
  FlagResidual C;       // closure(col(C1,C2)) = col(closure C1, closure C2)
  FlagResidual Cprime;  // dom closure(C1) + dom closure(C2) closed
  std::optional<FlagResidual> R;  // codomains equal: dom C1* + dom C2* closed
  bool a = false;  // dom C1 ⊆ dom C2
  bool b = false;  // closure(mul C2) = mul(closure C2)
  bool c = false;  // dom closure(C2) closed
};

inline ConditionReport check_conditions(const LinearRelation& c1,
                                        const LinearRelation& c2,
                                        const Tolerance& tol = {}) {
  detail::check_col_shapes(c1, c2, "check_conditions");
  ConditionReport rep;

  const LinearRelation c1bar = closure(c1);
  const LinearRelation c2bar = closure(c2);
  rep.C.residual = deviation(closure(column(c1, c2, tol)),
                             column(c1bar, c2bar, tol));
  rep.C.holds = rep.C.residual < tol.angle_abs;

  const Subspace dom_sum =
      sum(parts(c1bar, tol).dom, parts(c2bar, tol).dom, tol);
  rep.Cprime.residual = closedness_residual(dom_sum);
  rep.Cprime.holds = rep.Cprime.residual < tol.angle_abs;

  if (c1.codom_dim() == c2.codom_dim()) rep.R = condition_R(c1, c2, tol);

  const Containment doms = compare(parts(c1, tol).dom, parts(c2, tol).dom, tol);
  rep.a = doms == Containment::equal || doms == Containment::s1_in_s2;

  const Subspace mul2 = parts(c2, tol).mul;
  rep.b = deviation(complement(complement(mul2)), parts(c2bar, tol).mul) <
          tol.angle_abs;

  rep.c = closedness_residual(parts(c2bar, tol).dom) < tol.angle_abs;
  return rep;
}

/// The purely singular relation M x N (every pair (m, n) with m in M, n in N).
/// Its kernel is all of M and its multivalued part all of N.
inline LinearRelation singular_relation(const Subspace& m, const Subspace& n) {
  return LinearRelation(m.ambient_dim(), n.ambient_dim(), product(m, n));
}

/// Four-way adjoint chain for a column whose second component is the
/// singular relation M x N, valid whenever dom C1 ⊆ M:
///   col(C1, M x N)* = row(C1*, N^perp x M^perp)
///                   = row(C1*, N^perp x {0})
///                   = col(C1, H x N)*.
struct Example1Chain {
  LinearRelation col_mn_star;       // col(C1, M x N)*
  LinearRelation row_full;          // row(C1*, N^perp x M^perp)
  LinearRelation row_reduced;       // row(C1*, N^perp x {0})
  LinearRelation col_hn_star;       // col(C1, H x N)*
  double max_residual = 0.0;        // worst pairwise deviation
  std::array<double, 3> link_residuals{};  // consecutive links of the chain
};

inline Example1Chain example1_chain(const LinearRelation& c1, const Subspace& m,
                                    const Subspace& n,
                                    const Tolerance& tol = {}) {
  if (m.ambient_dim() != c1.dom_dim())
    throw ShapeError("example1_chain: M lives in R^" +
                     std::to_string(m.ambient_dim()) + ", dom space is R^" +
                     std::to_string(c1.dom_dim()));
  const Subspace dom1 = parts(c1, tol).dom;
  const double dom_in_m = containment_residual(dom1, m);
  if (dom_in_m >= tol.angle_abs)
    throw PreconditionError(
        "example1_chain: inclusion dom C1 ⊆ M fails (dim dom C1 = " +
        std::to_string(dom1.rank()) + ", dim M = " + std::to_string(m.rank()) +
        ", containment residual " + std::to_string(dom_in_m) + " rad)");

  const int dh = c1.dom_dim();
  Example1Chain chain;
  chain.col_mn_star = adjoint(column(c1, singular_relation(m, n), tol));
  const LinearRelation c1_star = adjoint(c1);
  chain.row_full =
      row(c1_star, singular_relation(complement(n), complement(m)), tol);
  chain.row_reduced = row(
      c1_star, singular_relation(complement(n), Subspace::zero(dh)), tol);
  chain.col_hn_star =
      adjoint(column(c1, singular_relation(Subspace::full(dh), n), tol));

  chain.link_residuals[0] = deviation(chain.col_mn_star, chain.row_full);
  chain.link_residuals[1] = deviation(chain.row_full, chain.row_reduced);
  chain.link_residuals[2] = deviation(chain.row_reduced, chain.col_hn_star);
  chain.max_residual =
      std::max({chain.link_residuals[0], chain.link_residuals[1],
                chain.link_residuals[2]});
  return chain;
}

/// 2x2 block relation: entries A_ij ⊆ H_j x K_i assemble one relation from
/// H1 x H2 to K1 x K2. It factors two ways — as a column of rows and as a
/// row of columns — and both are computed.
struct BlockReport {
  LinearRelation relation;      // the col-of-rows route (canonical)
  LinearRelation col_of_rows;   // col(row(A11,A12), row(A21,A22))
  LinearRelation row_of_cols;   // row(col(A11,A21), col(A12,A22))
  double factor_residual = 0.0; // deviation between the two routes
};

namespace detail {
inline void check_block_shapes(const LinearRelation& a11,
                               const LinearRelation& a12,
                               const LinearRelation& a21,
                               const LinearRelation& a22) {
  if (a11.dom_dim() != a21.dom_dim())
    throw ShapeError("block_relation: dom mismatch at A21: " +
                     std::to_string(a21.dom_dim()) + " vs " +
                     std::to_string(a11.dom_dim()) + " (column 1)");
  if (a12.dom_dim() != a22.dom_dim())
    throw ShapeError("block_relation: dom mismatch at A22: " +
                     std::to_string(a22.dom_dim()) + " vs " +
                     std::to_string(a12.dom_dim()) + " (column 2)");
  if (a11.codom_dim() != a12.codom_dim())
    throw ShapeError("block_relation: codom mismatch at A12: " +
                     std::to_string(a12.codom_dim()) + " vs " +
                     std::to_string(a11.codom_dim()) + " (row 1)");
  if (a21.codom_dim() != a22.codom_dim())
    throw ShapeError("block_relation: codom mismatch at A22: " +
                     std::to_string(a22.codom_dim()) + " vs " +
                     std::to_string(a21.codom_dim()) + " (row 2)");
}
}  // namespace detail

inline BlockReport block_relation(const LinearRelation& a11,
                                  const LinearRelation& a12,
                                  const LinearRelation& a21,
                                  const LinearRelation& a22,
                                  const Tolerance& tol = {}) {
  detail::check_block_shapes(a11, a12, a21, a22);
  BlockReport rep;
  rep.col_of_rows = column(row(a11, a12, tol), row(a21, a22, tol), tol);
  rep.row_of_cols = row(column(a11, a21, tol), column(a12, a22, tol), tol);
  rep.factor_residual = deviation(rep.col_of_rows, rep.row_of_cols);
  rep.relation = rep.col_of_rows;
  return rep;
}

/// Per-factor conditions controlling the adjoint and closure of a block:
/// for i = 1, 2, (C_i)/(C'_i) evaluated on the column pair (A_1i, A_2i) and
/// (C''_i) the closedness of dom A_i1* + dom A_i2* (the i-th row pair).
struct BlockConditionReport {
  std::array<FlagResidual, 2> C;
  std::array<FlagResidual, 2> Cprime;
  std::array<FlagResidual, 2> Cdprime;
  bool all_hold = false;
};

inline BlockConditionReport block_condition_report(const LinearRelation& a11,
                                                   const LinearRelation& a12,
                                                   const LinearRelation& a21,
                                                   const LinearRelation& a22,
                                                   const Tolerance& tol = {}) {
  detail::check_block_shapes(a11, a12, a21, a22);
  BlockConditionReport rep;
  const std::array<std::pair<const LinearRelation*, const LinearRelation*>, 2>
      col_pairs{{{&a11, &a21}, {&a12, &a22}}};
  const std::array<std::pair<const LinearRelation*, const LinearRelation*>, 2>
      row_pairs{{{&a11, &a12}, {&a21, &a22}}};
  for (int i = 0; i < 2; ++i) {
    const ConditionReport cond =
        check_conditions(*col_pairs[i].first, *col_pairs[i].second, tol);
    rep.C[i] = cond.C;
    rep.Cprime[i] = cond.Cprime;
    rep.Cdprime[i] =
        condition_R(*row_pairs[i].first, *row_pairs[i].second, tol);
  }
  rep.all_hold = rep.C[0].holds && rep.C[1].holds && rep.Cprime[0].holds &&
                 rep.Cprime[1].holds && rep.Cdprime[0].holds &&
                 rep.Cdprime[1].holds;
  return rep;
}

/// Probe whether T : K1 x K2 -> H is a row of its factor restrictions
/// T_i = T ∘ E_i (E_i the codomain-factor embeddings): reconstructs
/// row(T1, T2) and reports the deviation from T.
struct RowProbe {
  LinearRelation t1;
  LinearRelation t2;
  LinearRelation reconstructed;
  bool is_row = false;
  double residual = 0.0;
};

inline RowProbe row_probe(const LinearRelation& t, ProductShape dom_shape,
                          const Tolerance& tol = {}) {
  if (t.dom_dim() != dom_shape.total())
    throw ShapeError("row_probe: domain is R^" + std::to_string(t.dom_dim()) +
                     ", shape totals " + std::to_string(dom_shape.total()));
  RowProbe probe;
  probe.t1 = compose(t, embedding_relation(dom_shape, Factor::first), tol);
  probe.t2 = compose(t, embedding_relation(dom_shape, Factor::second), tol);
  probe.reconstructed = row(probe.t1, probe.t2, tol);
  probe.residual = deviation(probe.reconstructed, t);
  probe.is_row = probe.residual < tol.angle_abs;
  return probe;
}

}  // namespace linrel
