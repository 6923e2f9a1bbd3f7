#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "linrel/laws.hpp"
#include "linrel/truncation.hpp"

namespace linrel {

// Structural problems with a JSON document (missing keys, wrong value types,
// non-numeric entries) surface as nlohmann::json exceptions; dimensional
// inconsistencies in an otherwise well-formed document throw ShapeError.

// ---------------------------------------------------------------------------
// Subspace: {"ambient_dim": n, "basis": [[...], ...]} — basis vectors as
// rows; an empty list encodes the zero subspace. On input the rows are a
// spanning set (orthonormalized on load); on output they are orthonormal.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const Subspace& s) {
  nlohmann::json j;
  j["ambient_dim"] = s.ambient_dim();
  nlohmann::json rows = nlohmann::json::array();
  for (int c = 0; c < s.rank(); ++c) {
    nlohmann::json row = nlohmann::json::array();
    for (int r = 0; r < s.ambient_dim(); ++r) row.push_back(s.basis()(r, c));
    rows.push_back(std::move(row));
  }
  j["basis"] = std::move(rows);
  return j;
}

inline Subspace subspace_from_json(const nlohmann::json& j,
                                   const Tolerance& tol = {}) {
  const int ambient = j.at("ambient_dim").get<int>();
  if (ambient < 0)
    throw ShapeError("subspace: ambient_dim must be >= 0, got " +
                     std::to_string(ambient));
  const nlohmann::json& rows = j.at("basis");
  if (!rows.is_array())
    throw nlohmann::json::type_error::create(
        302, "basis must be an array of vectors", &rows);
  Eigen::MatrixXd span(ambient, static_cast<int>(rows.size()));
  int c = 0;
  for (const nlohmann::json& row : rows) {
    if (static_cast<int>(row.size()) != ambient)
      throw ShapeError("subspace: basis vector " + std::to_string(c) +
                       " has length " + std::to_string(row.size()) +
                       ", ambient_dim is " + std::to_string(ambient));
    for (int r = 0; r < ambient; ++r) span(r, c) = row.at(r).get<double>();
    ++c;
  }
  return orthonormalize(span, ambient, tol);
}

// ---------------------------------------------------------------------------
// Relation: {"dom_dim": n, "codom_dim": m, "graph": <subspace>} with the
// graph living in R^(n+m), or {"matrix": [[...], ...]} (rows = codomain)
// converted through from_matrix.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const LinearRelation& a) {
  nlohmann::json j;
  j["dom_dim"] = a.dom_dim();
  j["codom_dim"] = a.codom_dim();
  j["graph"] = to_json(a.graph());
  return j;
}

inline LinearRelation relation_from_json(const nlohmann::json& j,
                                         const Tolerance& tol = {}) {
  if (j.contains("matrix")) {
    const nlohmann::json& rows = j.at("matrix");
    if (!rows.is_array())
      throw nlohmann::json::type_error::create(
          302, "matrix must be an array of rows", &rows);
    const int m = static_cast<int>(rows.size());
    const int n = m == 0 ? 0 : static_cast<int>(rows.at(0).size());
    Eigen::MatrixXd mat(m, n);
    for (int r = 0; r < m; ++r) {
      const nlohmann::json& row = rows.at(r);
      if (static_cast<int>(row.size()) != n)
        throw ShapeError("relation: matrix row " + std::to_string(r) +
                         " has length " + std::to_string(row.size()) +
                         ", expected " + std::to_string(n));
      for (int c = 0; c < n; ++c) mat(r, c) = row.at(c).get<double>();
    }
    return from_matrix(mat, tol);
  }
  const int dom = j.at("dom_dim").get<int>();
  const int codom = j.at("codom_dim").get<int>();
  if (dom < 0 || codom < 0)
    throw ShapeError("relation: dims must be >= 0, got dom_dim = " +
                     std::to_string(dom) + ", codom_dim = " +
                     std::to_string(codom));
  const Subspace graph = subspace_from_json(j.at("graph"), tol);
  return LinearRelation(dom, codom, graph);
}

// ---------------------------------------------------------------------------
// Block input file: {"A11": <relation>, "A12": ..., "A21": ..., "A22": ...}
// ---------------------------------------------------------------------------

struct BlockEntries {
  LinearRelation a11, a12, a21, a22;
};

inline BlockEntries block_from_json(const nlohmann::json& j,
                                    const Tolerance& tol = {}) {
  BlockEntries b;
  b.a11 = relation_from_json(j.at("A11"), tol);
  b.a12 = relation_from_json(j.at("A12"), tol);
  b.a21 = relation_from_json(j.at("A21"), tol);
  b.a22 = relation_from_json(j.at("A22"), tol);
  return b;
}

// ---------------------------------------------------------------------------
// Law suite reports. Timing is deliberately absent: serialized reports are
// byte-stable for a given seed.
// ---------------------------------------------------------------------------

inline nlohmann::json suite_to_json(const SuiteResult& result,
                                    const SuiteConfig& cfg) {
  nlohmann::json j;
  j["config"] = {{"seed", cfg.seed},
                 {"trials", cfg.trials},
                 {"dim_lo", cfg.dim_lo},
                 {"dim_hi", cfg.dim_hi}};
  j["all_passed"] = result.all_passed;
  nlohmann::json summaries = nlohmann::json::array();
  for (const LawSummary& s : result.summaries)
    summaries.push_back({{"law", s.name},
                         {"trials", s.trials},
                         {"failures", s.failures},
                         {"worst_residual", s.worst_residual}});
  j["summary"] = std::move(summaries);
  nlohmann::json reports = nlohmann::json::array();
  for (const LawReport& r : result.reports)
    reports.push_back({{"law", r.name},
                       {"seed", r.seed},
                       {"passed", r.passed},
                       {"residual", r.residual}});
  j["reports"] = std::move(reports);
  return j;
}

namespace detail {
inline std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace detail

inline std::string suite_to_csv(const SuiteResult& result) {
  std::string out = "law,trials,failures,worst_residual\n";
  for (const LawSummary& s : result.summaries) {
    out += s.name;
    out += ',' + std::to_string(s.trials);
    out += ',' + std::to_string(s.failures);
    out += ',' + detail::fmt_double(s.worst_residual);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncation experiment table: CSV with the fixed header and a JSON mirror.
// The explanatory note rides above the header as a '#' comment line.
// ---------------------------------------------------------------------------

inline std::string example2_to_csv(const Example2Report& report) {
  std::string out;
  out += "# " + report.header_note + "\n";
  out += "n,gamma,cos_friedrichs,flag_C,flag_Cprime\n";
  for (const Example2Row& r : report.rows) {
    out += std::to_string(r.n);
    out += ',' + detail::fmt_double(r.gamma);
    out += ',' + detail::fmt_double(r.cos_friedrichs);
    out += r.flag_C ? ",true" : ",false";
    out += r.flag_Cprime ? ",true" : ",false";
    out += '\n';
  }
  return out;
}

inline nlohmann::json example2_to_json(const Example2Report& report) {
  nlohmann::json j;
  j["note"] = report.header_note;
  nlohmann::json rows = nlohmann::json::array();
  for (const Example2Row& r : report.rows)
    rows.push_back({{"n", r.n},
                    {"gamma", r.gamma},
                    {"cos_friedrichs", r.cos_friedrichs},
                    {"flag_C", r.flag_C},
                    {"flag_Cprime", r.flag_Cprime}});
  j["rows"] = std::move(rows);
  j["gamma_trend"] = to_string(report.gamma_trend);
  j["angle_trend"] = to_string(report.angle_trend);
  return j;
}

}  // namespace linrel
