#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "linrel/rowcol.hpp"

namespace linrel {

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

/// Stateless 64-bit mixer used to derive per-instance seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// mt19937_64 with hand-rolled uniform/gaussian transforms. The engine's
/// output sequence is pinned by the standard and the transforms avoid
/// std::*_distribution, whose sequences vary across library implementations;
/// together they make instances reproducible to the bit for a given seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

  double gaussian() {
    double u1 = uniform01();
    if (u1 <= 0.0) u1 = 0x1p-53;
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    if (hi < lo) throw PreconditionError("Rng: empty integer range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(eng_() % span);
  }

  bool coin() { return (eng_() & 1ULL) != 0; }

private:
  std::mt19937_64 eng_;
};

inline Eigen::MatrixXd gaussian_matrix(Rng& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  return m;
}

/// Random subspace of the given rank (uniform 0..ambient when rank < 0).
inline Subspace random_subspace(Rng& rng, int ambient, int rank = -1,
                                const Tolerance& tol = {}) {
  if (rank < 0) rank = rng.uniform_int(0, ambient);
  return orthonormalize(gaussian_matrix(rng, ambient, rank), ambient, tol);
}

/// Random subspace of S (drawn inside S, so containment is structural).
inline Subspace random_subspace_of(Rng& rng, const Subspace& s,
                                   const Tolerance& tol = {}) {
  const int r = rng.uniform_int(0, s.rank());
  return orthonormalize(s.basis() * gaussian_matrix(rng, s.rank(), r),
                        s.ambient_dim(), tol);
}

/// Random relation: span of g standard-normal graph vectors, g uniform in
/// 0..dom+codom. Covers multivalued, partially defined and trivial cases.
inline LinearRelation random_relation(Rng& rng, int dom_dim, int codom_dim,
                                      const Tolerance& tol = {}) {
  const int g = rng.uniform_int(0, dom_dim + codom_dim);
  return LinearRelation(
      dom_dim, codom_dim,
      orthonormalize(gaussian_matrix(rng, dom_dim + codom_dim, g),
                     dom_dim + codom_dim, tol));
}

/// Random single-valued relation: a matrix graph, domain-restricted half of
/// the time (restriction of an operator stays an operator).
inline LinearRelation random_operator(Rng& rng, int dom_dim, int codom_dim,
                                      const Tolerance& tol = {}) {
  LinearRelation op = from_matrix(gaussian_matrix(rng, codom_dim, dom_dim), tol);
  if (rng.coin()) op = restrict(op, random_subspace(rng, dom_dim, -1, tol), tol);
  return op;
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

enum class InstanceKind {
  operator_graph,    // single-valued relations
  general_relation,  // arbitrary graph subspaces
  product_form,      // M x N plus a compatible C1 with dom C1 ⊆ M
  nested_domain,     // operator pair with dom C1 ⊆ dom C2
  block,             // 2x2 family with consistent factor dimensions
};

inline const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::operator_graph: return "operator_graph";
    case InstanceKind::general_relation: return "general_relation";
    case InstanceKind::product_form: return "product_form";
    case InstanceKind::nested_domain: return "nested_domain";
    case InstanceKind::block: return "block";
  }
  return "unknown";
}

/// Recipe for one deterministic instance.
struct InstanceSpec {
  std::uint64_t seed = 0;
  int dim_lo = 1;  // per-space dimension bounds, inclusive
  int dim_hi = 6;
  InstanceKind kind = InstanceKind::general_relation;
};

/// Relations (and subspaces) drawn for one trial. Layout by kind:
///   operator_graph:   relations = {R1: a->c, R2: b->c, C1: h->k1, C2: h->k2}
///   general_relation: relations = {R1, R2, C1, C2, A1, A2}, A-pair same shape
///   product_form:     relations = {P = M x N, C1 with dom C1 ⊆ M},
///                     subspaces = {M, N}
///   nested_domain:    relations = {C1, C2} operators, dom C1 ⊆ dom C2
///   block:            relations = {A11, A12, A21, A22}
struct Instance {
  InstanceSpec spec;
  std::vector<LinearRelation> relations;
  std::vector<Subspace> subspaces;
};

inline Instance generate_instance(const InstanceSpec& spec,
                                  const Tolerance& tol = {}) {
  if (spec.dim_lo < 0 || spec.dim_hi > 12 || spec.dim_lo > spec.dim_hi)
    throw PreconditionError("generate_instance: dims must satisfy 0 <= lo <= hi <= 12, got [" +
                            std::to_string(spec.dim_lo) + ", " +
                            std::to_string(spec.dim_hi) + "]");
  Rng rng(splitmix64(spec.seed));
  auto dim = [&] { return rng.uniform_int(spec.dim_lo, spec.dim_hi); };

  Instance inst;
  inst.spec = spec;
  switch (spec.kind) {
    case InstanceKind::operator_graph: {
      const int a = dim(), b = dim(), c = dim();
      const int h = dim(), k1 = dim(), k2 = dim();
      inst.relations = {random_operator(rng, a, c, tol),
                        random_operator(rng, b, c, tol),
                        random_operator(rng, h, k1, tol),
                        random_operator(rng, h, k2, tol)};
      break;
    }
    case InstanceKind::general_relation: {
      const int a = dim(), b = dim(), c = dim();
      const int h = dim(), k1 = dim(), k2 = dim();
      const int p = dim(), q = dim();
      inst.relations = {random_relation(rng, a, c, tol),
                        random_relation(rng, b, c, tol),
                        random_relation(rng, h, k1, tol),
                        random_relation(rng, h, k2, tol),
                        random_relation(rng, p, q, tol),
                        random_relation(rng, p, q, tol)};
      break;
    }
    case InstanceKind::product_form: {
      const int h = dim(), k1 = dim(), k2 = dim();
      const Subspace m = random_subspace(rng, h, -1, tol);
      const Subspace n = random_subspace(rng, k2, -1, tol);
      const LinearRelation c1 =
          restrict(random_relation(rng, h, k1, tol),
                   random_subspace_of(rng, m, tol), tol);
      inst.relations = {singular_relation(m, n), c1};
      inst.subspaces = {m, n};
      break;
    }
    case InstanceKind::nested_domain: {
      const int h = dim(), k1 = dim(), k2 = dim();
      const Subspace s2 = random_subspace(rng, h, -1, tol);
      const Subspace s1 = random_subspace_of(rng, s2, tol);
      inst.relations = {
          restrict(from_matrix(gaussian_matrix(rng, k1, h), tol), s1, tol),
          restrict(from_matrix(gaussian_matrix(rng, k2, h), tol), s2, tol)};
      break;
    }
    case InstanceKind::block: {
      const int h1 = dim(), h2 = dim(), k1 = dim(), k2 = dim();
      inst.relations = {random_relation(rng, h1, k1, tol),
                        random_relation(rng, h2, k1, tol),
                        random_relation(rng, h1, k2, tol),
                        random_relation(rng, h2, k2, tol)};
      break;
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Law registry
// ---------------------------------------------------------------------------

enum class LawId {
  PI_ADJOINT,
  PI_COISOMETRY,
  ROW_THREE_WAY,
  COL_INTERSECTION,
  ADJ_ROW_EQ_COL,
  ADJ_COL_INCLUSION,
  ADJ_COL_EQUALITY_IFF_C,
  ROW_ADJ_CLOSED_IFF_CPRIME,
  CW_SUM_ADJOINT,
  DERKACH_I,
  DERKACH_II,
  HASSI_CLOSED_EQUIV,
  MUL_ROW,
  MUL_COL,
  KER_RAN_DUALITY,
  CLOSURE_ROW_I,
  CLOSURE_ROW_II,
  ROW_CLOSABLE,
  COL_CLOSABLE,
  BLOCK_FACTOR,
  BLOCK_ADJOINT,
  EXAMPLE1_CHAIN,
  ABC_IMPLIES_CPRIME,
};

inline constexpr int kLawCount = 23;

/// One registered identity: its evaluator returns a residual in radians;
/// boolean identities return 0 on flag agreement and pi/2 on disagreement,
/// so "passed" is uniformly residual < angle_abs.
struct LawDef {
  LawId id;
  const char* name;
  const char* statement;
  InstanceKind kind;
  std::function<double(const Instance&, const Tolerance&)> eval;
};

namespace lawdetail {

inline double flag_match(bool lhs, bool rhs) {
  return lhs == rhs ? 0.0 : std::numbers::pi / 2;
}

inline double implies(bool hyp, bool concl) {
  return (!hyp || concl) ? 0.0 : std::numbers::pi / 2;
}

/// Deterministic auxiliary stream for evaluators that must build shapes
/// depending on the instance (e.g. a factor matched to dim dom S).
inline Rng aux_rng(const Instance& inst) {
  return Rng(splitmix64(inst.spec.seed ^ 0xA5A5A5A5A5A5A5A5ULL));
}

inline double eval_pi_adjoint(const Instance& inst, const Tolerance& tol) {
  const ProductShape shape{inst.relations[0].dom_dim(),
                           inst.relations[1].dom_dim()};
  const double r1 =
      deviation(adjoint(projection_relation(shape, Factor::first)),
                embedding_relation(shape, Factor::first));
  const double r2 =
      deviation(adjoint(projection_relation(shape, Factor::second)),
                embedding_relation(shape, Factor::second));
  (void)tol;
  return std::max(r1, r2);
}

inline double eval_pi_coisometry(const Instance& inst, const Tolerance& tol) {
  const ProductShape shape{inst.relations[0].dom_dim(),
                           inst.relations[1].dom_dim()};
  double worst = 0.0;
  for (Factor which : {Factor::first, Factor::second}) {
    const LinearRelation p = projection_relation(shape, which);
    const LinearRelation p_star = adjoint(p);
    const int d = p.codom_dim();
    worst = std::max(worst,
                     deviation(compose(p, p_star, tol), identity_relation(d)));
    worst = std::max(worst, is_isometric(p_star, tol)
                                ? 0.0
                                : std::numbers::pi / 2);
  }
  // The embedding's inverse is the projection restricted to its factor.
  const LinearRelation emb = adjoint(projection_relation(shape, Factor::first));
  const LinearRelation expected = restrict(
      projection_relation(shape, Factor::first),
      product(Subspace::full(shape.d1), Subspace::zero(shape.d2)), tol);
  worst = std::max(worst, deviation(inverse(emb), expected));
  return worst;
}

inline double eval_row_three_way(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& r1 = inst.relations[0];
  const LinearRelation& r2 = inst.relations[1];
  const LinearRelation direct = row(r1, r2, tol);
  const RowFormulas f = row_via_formulas(r1, r2, tol);
  return std::max(deviation(direct, f.componentwise),
                  deviation(direct, f.operatorwise));
}

inline double eval_col_intersection(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& c1 = inst.relations[2];
  const LinearRelation& c2 = inst.relations[3];
  return deviation(column(c1, c2, tol), column_via_intersection(c1, c2, tol));
}

inline double eval_adj_row_eq_col(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& r1 = inst.relations[0];
  const LinearRelation& r2 = inst.relations[1];
  return deviation(adjoint(row(r1, r2, tol)),
                   column(adjoint(r1), adjoint(r2), tol));
}

inline double eval_adj_col_inclusion(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& c1 = inst.relations[2];
  const LinearRelation& c2 = inst.relations[3];
  return adjoint_of_column_report(c1, c2, tol).inclusion.residual;
}

inline double eval_adj_col_equality_iff_c(const Instance& inst,
                                          const Tolerance& tol) {
  const LinearRelation& c1 = inst.relations[2];
  const LinearRelation& c2 = inst.relations[3];
  const AdjointColumnReport rep = adjoint_of_column_report(c1, c2, tol);
  const ConditionReport cond = check_conditions(c1, c2, tol);
  return std::max(rep.inclusion.residual,
                  flag_match(rep.equality.holds, cond.C.holds));
}

inline double eval_row_adj_closed_iff_cprime(const Instance& inst,
                                             const Tolerance& tol) {
  const LinearRelation& c1 = inst.relations[2];
  const LinearRelation& c2 = inst.relations[3];
  const bool closed = is_closed(row(adjoint(c1), adjoint(c2), tol), tol);
  const ConditionReport cond = check_conditions(c1, c2, tol);
  return flag_match(closed, cond.Cprime.holds);
}

inline double eval_cw_sum_adjoint(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& a1 = inst.relations[4];
  const LinearRelation& a2 = inst.relations[5];
  const double first =
      deviation(adjoint(cw_sum(a1, a2, tol)),
                intersect_relations(adjoint(a1), adjoint(a2), tol));
  const double second =
      deviation(adjoint(intersect_relations(closure(a1), closure(a2), tol)),
                closure(cw_sum(adjoint(a1), adjoint(a2), tol)));
  return std::max(first, second);
}

inline double eval_derkach_i(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& s = inst.relations[4];
  Rng rng = aux_rng(inst);
  const Subspace dom_s = parts(s, tol).dom;
  const LinearRelation embed = from_matrix(dom_s.basis(), tol);
  const int k0 = rng.uniform_int(inst.spec.dim_lo, inst.spec.dim_hi);
  const LinearRelation t = random_relation(rng, k0, dom_s.rank(), tol);
  const LinearRelation x = compose(embed, t, tol);  // ran X ⊆ dom S
  return deviation(adjoint(compose(s, x, tol)),
                   compose(adjoint(x), adjoint(s), tol));
}

inline double eval_derkach_ii(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& s = inst.relations[4];
  Rng rng = aux_rng(inst);
  const int k3 = rng.uniform_int(inst.spec.dim_lo, inst.spec.dim_hi);
  const LinearRelation y =
      restrict(random_relation(rng, s.codom_dim(), k3, tol),
               parts(s, tol).ran, tol);  // dom Y ⊆ ran S
  return deviation(adjoint(compose(y, s, tol)),
                   compose(adjoint(s), adjoint(y), tol));
}

inline double eval_hassi_closed_equiv(const Instance& inst,
                                      const Tolerance& tol) {
  const LinearRelation& a1 = inst.relations[4];
  const LinearRelation& a2 = inst.relations[5];
  const LinearRelation lhs = cw_sum(closure(a1), closure(a2), tol);
  const LinearRelation rhs = cw_sum(adjoint(a1), adjoint(a2), tol);
  const double res_l = deviation(closure(lhs), lhs);
  const double res_r = deviation(closure(rhs), rhs);
  return std::max({flag_match(res_l < tol.angle_abs, res_r < tol.angle_abs),
                   res_l, res_r});
}

inline double eval_mul_row(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& r1 = inst.relations[0];
  const LinearRelation& r2 = inst.relations[1];
  return deviation(parts(row(r1, r2, tol), tol).mul,
                   sum(parts(r1, tol).mul, parts(r2, tol).mul, tol));
}

inline double eval_mul_col(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& c1 = inst.relations[2];
  const LinearRelation& c2 = inst.relations[3];
  return deviation(parts(column(c1, c2, tol), tol).mul,
                   product(parts(c1, tol).mul, parts(c2, tol).mul));
}

inline double eval_ker_ran_duality(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& a = inst.relations[4];
  const RelationParts p = parts(a, tol);
  const RelationParts pstar = parts(adjoint(a), tol);
  return std::max(deviation(pstar.ker, complement(p.ran)),
                  deviation(pstar.mul, complement(p.dom)));
}

inline double eval_closure_row_i(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& r1 = inst.relations[0];
  const LinearRelation& r2 = inst.relations[1];
  return deviation(closure(row(r1, r2, tol)),
                   closure(row(closure(r1), closure(r2), tol)));
}

inline double eval_closure_row_ii(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& r1 = inst.relations[0];
  const LinearRelation& r2 = inst.relations[1];
  const LinearRelation lhs = row(closure(r1), closure(r2), tol);
  const LinearRelation rhs = closure(row(r1, r2, tol));
  const double inclusion = containment_residual(lhs, rhs);
  const bool equal = deviation(lhs, rhs) < tol.angle_abs;
  const FlagResidual r_cond = condition_R(r1, r2, tol);
  return std::max(inclusion, flag_match(equal, r_cond.holds));
}

inline double eval_row_closable(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& r1 = inst.relations[0];
  const LinearRelation& r2 = inst.relations[1];
  const bool row_cl = is_closable(row(r1, r2, tol), tol);
  const bool both = is_closable(r1, tol) && is_closable(r2, tol);
  const FlagResidual r_cond = condition_R(r1, r2, tol);
  return r_cond.holds ? flag_match(row_cl, both) : 0.0;
}

inline double eval_col_closable(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& c1 = inst.relations[0];
  const LinearRelation& c2 = inst.relations[1];
  const ConditionReport cond = check_conditions(c1, c2, tol);
  const bool hyp = cond.a && cond.c && is_closable(c2, tol);
  const bool concl =
      is_closable(column(c1, c2, tol), tol) == is_closable(c1, tol);
  return implies(hyp, concl);
}

inline double eval_block_factor(const Instance& inst, const Tolerance& tol) {
  return block_relation(inst.relations[0], inst.relations[1],
                        inst.relations[2], inst.relations[3], tol)
      .factor_residual;
}

inline double eval_block_adjoint(const Instance& inst, const Tolerance& tol) {
  const LinearRelation& a11 = inst.relations[0];
  const LinearRelation& a12 = inst.relations[1];
  const LinearRelation& a21 = inst.relations[2];
  const LinearRelation& a22 = inst.relations[3];
  const BlockReport blk = block_relation(a11, a12, a21, a22, tol);
  const LinearRelation bstar = adjoint(blk.relation);
  // Entry (i, j) of the adjoint block is A_ji*.
  const LinearRelation adj_blk =
      block_relation(adjoint(a11), adjoint(a21), adjoint(a12), adjoint(a22),
                     tol)
          .relation;
  const double inclusion = containment_residual(adj_blk, bstar);
  const BlockConditionReport cond =
      block_condition_report(a11, a12, a21, a22, tol);
  const bool adjamount_cond = cond.C[0].holds && cond.C[1].holds &&
                              cond.Cprime[0].holds && cond.Cprime[1].holds;
  const bool adj_equal = deviation(adj_blk, bstar) < tol.angle_abs;
  const LinearRelation closures_blk =
      block_relation(closure(a11), closure(a12), closure(a21), closure(a22),
                     tol)
          .relation;
  const bool closure_equal =
      deviation(closure(blk.relation), closures_blk) < tol.angle_abs;
  return std::max({inclusion, flag_match(adj_equal, adjamount_cond),
                   flag_match(closure_equal, adjamount_cond && cond.all_hold)});
}

inline double eval_example1_chain(const Instance& inst, const Tolerance& tol) {
  return example1_chain(inst.relations[1], inst.subspaces[0],
                        inst.subspaces[1], tol)
      .max_residual;
}

inline double eval_abc_implies_cprime(const Instance& inst,
                                      const Tolerance& tol) {
  const ConditionReport cond =
      check_conditions(inst.relations[0], inst.relations[1], tol);
  return implies(cond.a && cond.c, cond.Cprime.holds);
}

}  // namespace lawdetail

inline const std::vector<LawDef>& law_registry() {
  using K = InstanceKind;
  namespace d = lawdetail;
  static const std::vector<LawDef> registry = {
      {LawId::PI_ADJOINT, "PI_ADJOINT",
       "P1* = I (+) 0 and P2* = 0 (+) I: projection adjoints are the factor embeddings",
       K::operator_graph, d::eval_pi_adjoint},
      {LawId::PI_COISOMETRY, "PI_COISOMETRY",
       "Pi Pi* = I on factor i; Pi* isometric; (P1*)^-1 = P1 restricted to H1 x {0}",
       K::operator_graph, d::eval_pi_coisometry},
      {LawId::ROW_THREE_WAY, "ROW_THREE_WAY",
       "row(R1,R2) = (R1 E1^-1) [+] (R2 E2^-1) = R1 P1 + R2 P2",
       K::general_relation, d::eval_row_three_way},
      {LawId::COL_INTERSECTION, "COL_INTERSECTION",
       "col(C1,C2) = (Q1^-1 C1) meet (Q2^-1 C2)",
       K::general_relation, d::eval_col_intersection},
      {LawId::ADJ_ROW_EQ_COL, "ADJ_ROW_EQ_COL",
       "row(R1,R2)* = col(R1*,R2*)",
       K::general_relation, d::eval_adj_row_eq_col},
      {LawId::ADJ_COL_INCLUSION, "ADJ_COL_INCLUSION",
       "col(C1,C2)* contains closure(row(C1*,C2*))",
       K::general_relation, d::eval_adj_col_inclusion},
      {LawId::ADJ_COL_EQUALITY_IFF_C, "ADJ_COL_EQUALITY_IFF_C",
       "col(C1,C2)* = closure(row(C1*,C2*)) iff (C)",
       K::general_relation, d::eval_adj_col_equality_iff_c},
      {LawId::ROW_ADJ_CLOSED_IFF_CPRIME, "ROW_ADJ_CLOSED_IFF_CPRIME",
       "row(C1*,C2*) closed iff (C'): dom closure(C1) + dom closure(C2) closed",
       K::general_relation, d::eval_row_adj_closed_iff_cprime},
      {LawId::CW_SUM_ADJOINT, "CW_SUM_ADJOINT",
       "(A1 [+] A2)* = A1* meet A2*; (closure A1 meet closure A2)* = closure(A1* [+] A2*)",
       K::general_relation, d::eval_cw_sum_adjoint},
      {LawId::DERKACH_I, "DERKACH_I",
       "(S X)* = X* S* when dom S is closed and ran X ⊆ dom S",
       K::general_relation, d::eval_derkach_i},
      {LawId::DERKACH_II, "DERKACH_II",
       "(Y S)* = S* Y* when ran S is closed and dom Y ⊆ ran S",
       K::general_relation, d::eval_derkach_ii},
      {LawId::HASSI_CLOSED_EQUIV, "HASSI_CLOSED_EQUIV",
       "closure(A1) [+] closure(A2) closed iff A1* [+] A2* closed",
       K::general_relation, d::eval_hassi_closed_equiv},
      {LawId::MUL_ROW, "MUL_ROW",
       "mul row(R1,R2) = mul R1 + mul R2",
       K::general_relation, d::eval_mul_row},
      {LawId::MUL_COL, "MUL_COL",
       "mul col(C1,C2) = mul C1 x mul C2",
       K::general_relation, d::eval_mul_col},
      {LawId::KER_RAN_DUALITY, "KER_RAN_DUALITY",
       "ker A* = (ran A)^perp and mul A* = (dom A)^perp",
       K::general_relation, d::eval_ker_ran_duality},
      {LawId::CLOSURE_ROW_I, "CLOSURE_ROW_I",
       "closure(row(R1,R2)) = closure(row(closure R1, closure R2))",
       K::general_relation, d::eval_closure_row_i},
      {LawId::CLOSURE_ROW_II, "CLOSURE_ROW_II",
       "row(closure R1, closure R2) ⊆ closure(row(R1,R2)), equality iff (R)",
       K::general_relation, d::eval_closure_row_ii},
      {LawId::ROW_CLOSABLE, "ROW_CLOSABLE",
       "for operators under (R): row(R1,R2) closable iff R1 and R2 closable",
       K::operator_graph, d::eval_row_closable},
      {LawId::COL_CLOSABLE, "COL_CLOSABLE",
       "for operators with (a), (c), C2 closable: col(C1,C2) closable iff C1 closable",
       K::nested_domain, d::eval_col_closable},
      {LawId::BLOCK_FACTOR, "BLOCK_FACTOR",
       "2x2 block = col(row(A11,A12), row(A21,A22)) = row(col(A11,A21), col(A12,A22))",
       K::block, d::eval_block_factor},
      {LawId::BLOCK_ADJOINT, "BLOCK_ADJOINT",
       "block* contains the adjoint-transposed block; equality iff (C_i), (C'_i); closure iff also (C''_i)",
       K::block, d::eval_block_adjoint},
      {LawId::EXAMPLE1_CHAIN, "EXAMPLE1_CHAIN",
       "col(C1, MxN)* = row(C1*, N^perp x M^perp) = row(C1*, N^perp x {0}) = col(C1, HxN)* when dom C1 ⊆ M",
       K::product_form, d::eval_example1_chain},
      {LawId::ABC_IMPLIES_CPRIME, "ABC_IMPLIES_CPRIME",
       "(a) dom C1 ⊆ dom C2 and (c) dom closure(C2) closed imply (C')",
       K::nested_domain, d::eval_abc_implies_cprime},
  };
  return registry;
}

inline const LawDef& law_def(LawId id) {
  for (const LawDef& def : law_registry())
    if (def.id == id) return def;
  throw PreconditionError("law_def: unregistered law");
}

inline std::string law_name(LawId id) { return law_def(id).name; }

// ---------------------------------------------------------------------------
// Running laws
// ---------------------------------------------------------------------------

struct LawReport {
  LawId law = LawId::PI_ADJOINT;
  std::string name;
  std::uint64_t seed = 0;
  bool passed = false;
  double residual = 0.0;
  double elapsed = 0.0;  // seconds; not serialized (reports are byte-stable)
};

/// Evaluate one law on the instance drawn from `spec` (the registered kind
/// for the law overrides spec.kind, so instances always fit).
inline LawReport run_law(LawId id, InstanceSpec spec, const Tolerance& tol = {}) {
  const LawDef& def = law_def(id);
  spec.kind = def.kind;
  const auto start = std::chrono::steady_clock::now();
  const Instance inst = generate_instance(spec, tol);
  LawReport rep;
  rep.law = id;
  rep.name = def.name;
  rep.seed = spec.seed;
  rep.residual = def.eval(inst, tol);
  rep.passed = rep.residual < tol.angle_abs;
  rep.elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

struct SuiteConfig {
  std::uint64_t seed = 42;
  int trials = 200;
  int dim_lo = 1;
  int dim_hi = 6;
  Tolerance tol;
};

struct LawSummary {
  LawId law = LawId::PI_ADJOINT;
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;
};

struct SuiteResult {
  std::vector<LawReport> reports;      // registry order, trials in order
  std::vector<LawSummary> summaries;   // one per law
  bool all_passed = false;
  double total_elapsed = 0.0;
};

/// Run every registered law on `trials` seeded instances each. For one seed
/// the result is reproducible to the bit: instance seeds are derived with
/// splitmix64 from (suite seed, law index, trial index), and evaluation is
/// sequential in registry order.
inline SuiteResult run_suite(const SuiteConfig& cfg = {}) {
  if (cfg.trials < 1)
    throw PreconditionError("run_suite: trials must be >= 1");
  SuiteResult result;
  const auto start = std::chrono::steady_clock::now();
  int law_index = 0;
  for (const LawDef& def : law_registry()) {
    LawSummary summary;
    summary.law = def.id;
    summary.name = def.name;
    summary.trials = cfg.trials;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      InstanceSpec spec;
      spec.seed = splitmix64(
          cfg.seed ^ splitmix64((static_cast<std::uint64_t>(law_index) << 32) ^
                                static_cast<std::uint64_t>(trial)));
      spec.dim_lo = cfg.dim_lo;
      spec.dim_hi = cfg.dim_hi;
      const LawReport rep = run_law(def.id, spec, cfg.tol);
      summary.worst_residual = std::max(summary.worst_residual, rep.residual);
      if (!rep.passed) ++summary.failures;
      result.reports.push_back(rep);
    }
    result.summaries.push_back(std::move(summary));
    ++law_index;
  }
  result.all_passed = true;
  for (const LawSummary& s : result.summaries)
    if (s.failures > 0) result.all_passed = false;
  result.total_elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace linrel
