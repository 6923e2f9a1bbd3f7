// Command-line front end: law suite runs, the two worked demos, and ad-hoc
// relation arithmetic on JSON files.
//
// Exit codes: 0 success, 1 mathematical/shape error, 2 usage/parse error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linrel/linrel.hpp"

namespace {

using nlohmann::json;

std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

// Writes to the path when given, stdout otherwise.
void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (!out_path) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream file(*out_path, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open output file " + *out_path);
  file << text;
}

json load_json(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw json::parse_error::create(
        101, 0, "cannot open input file " + path, nullptr);
  return json::parse(file);
}

struct CommonOpts {
  std::uint64_t seed = 42;
  int trials = 200;
  int max_dim = 6;
  int max_n = 64;
  std::string format = "text";
  std::optional<std::string> out_path;
  double rank_tol = linrel::Tolerance{}.rank_rel;
  double angle_tol = linrel::Tolerance{}.angle_abs;

  linrel::Tolerance tol() const { return {rank_tol, angle_tol}; }
};

void add_common_flags(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  cmd->add_option("--trials", opt.trials, "instances per law")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-dim", opt.max_dim, "largest factor dimension")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  cmd->add_option("--max-n", opt.max_n,
                  "largest truncation size (sections double up from 4)")
      ->check(CLI::Range(4, 4096))
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", opt.out_path, "write the report to this path");
  cmd->add_option("--rank-tol", opt.rank_tol,
                  "relative singular value cutoff for rank decisions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--angle-tol", opt.angle_tol,
                  "angular residual (radians) below which spaces are equal")
      ->check(CLI::PositiveNumber);
}

std::string suite_text(const linrel::SuiteResult& result,
                       const linrel::SuiteConfig& cfg) {
  std::string out;
  int total_failures = 0;
  double worst = 0.0;
  for (const linrel::LawSummary& s : result.summaries) {
    char line[160];
    std::snprintf(line, sizeof line,
                  "%s %-28s trials=%d failures=%d worst_residual=%s\n",
                  s.failures == 0 ? "PASS" : "FAIL", s.name.c_str(), s.trials,
                  s.failures, fmt_residual(s.worst_residual).c_str());
    out += line;
    total_failures += s.failures;
    worst = std::max(worst, s.worst_residual);
  }
  char line[160];
  std::snprintf(line, sizeof line,
                "suite seed=%llu laws=%zu trials=%d failures=%d "
                "worst_residual=%s\n",
                static_cast<unsigned long long>(cfg.seed),
                result.summaries.size(), cfg.trials, total_failures,
                fmt_residual(worst).c_str());
  out += line;
  return out;
}

int cmd_laws(const CommonOpts& opt) {
  linrel::SuiteConfig cfg;
  cfg.seed = opt.seed;
  cfg.trials = opt.trials;
  cfg.dim_hi = opt.max_dim;
  cfg.tol = opt.tol();
  const linrel::SuiteResult result = linrel::run_suite(cfg);

  std::string report;
  if (opt.format == "json")
    report = linrel::suite_to_json(result, cfg).dump(2) + "\n";
  else if (opt.format == "csv")
    report = linrel::suite_to_csv(result);
  else
    report = suite_text(result, cfg);

  if (opt.out_path) {
    // the serialized report goes to the file; stdout keeps the line report
    emit(opt.out_path, report);
    std::fputs(suite_text(result, cfg).c_str(), stdout);
  } else {
    std::fputs(report.c_str(), stdout);
  }
  std::fprintf(stderr, "total elapsed %.3fs\n", result.total_elapsed);
  return result.all_passed ? 0 : 1;
}

int cmd_demo_example1(const CommonOpts& opt) {
  linrel::InstanceSpec spec;
  spec.seed = opt.seed;
  spec.dim_hi = opt.max_dim;
  spec.kind = linrel::InstanceKind::product_form;
  const linrel::Instance inst = linrel::generate_instance(spec, opt.tol());
  const linrel::LinearRelation& c1 = inst.relations[1];
  const linrel::Subspace& m = inst.subspaces[0];
  const linrel::Subspace& n = inst.subspaces[1];
  const linrel::Example1Chain chain =
      linrel::example1_chain(c1, m, n, opt.tol());
  const bool equal = chain.max_residual < opt.tol().angle_abs;

  if (opt.format == "json") {
    json j;
    j["seed"] = opt.seed;
    j["link_residuals"] = {chain.link_residuals[0], chain.link_residuals[1],
                           chain.link_residuals[2]};
    j["max_residual"] = chain.max_residual;
    j["equal"] = equal;
    emit(opt.out_path, j.dump(2) + "\n");
  } else {
    std::string out;
    out += "link col(C1, MxN)* = row(C1*, Np x Mp)     residual=" +
           fmt_residual(chain.link_residuals[0]) + "\n";
    out += "link row(C1*, Np x Mp) = row(C1*, Np x 0)  residual=" +
           fmt_residual(chain.link_residuals[1]) + "\n";
    out += "link row(C1*, Np x 0) = col(C1, HxN)*      residual=" +
           fmt_residual(chain.link_residuals[2]) + "\n";
    out += std::string("CHAIN ") + (equal ? "EQUAL" : "UNEQUAL") +
           " residual=" + fmt_residual(chain.max_residual) + "\n";
    emit(opt.out_path, out);
  }
  return equal ? 0 : 1;
}

int cmd_demo_example2(const CommonOpts& opt) {
  const linrel::Example2Report report = linrel::example2_experiment(
      linrel::default_section_sizes(opt.max_n),
      linrel::SequenceOperatorSpec::harmonic(), {}, opt.tol());
  if (opt.format == "json")
    emit(opt.out_path, linrel::example2_to_json(report).dump(2) + "\n");
  else
    emit(opt.out_path, linrel::example2_to_csv(report));
  return 0;
}

int cmd_rel(const std::string& op, const std::vector<std::string>& inputs,
            const CommonOpts& opt) {
  const linrel::Tolerance tol = opt.tol();
  const std::size_t need = (op == "row" || op == "column") ? 2 : 1;
  if (inputs.size() != need) {
    std::fprintf(stderr, "error: rel %s needs %zu --in file%s, got %zu\n",
                 op.c_str(), need, need == 1 ? "" : "s", inputs.size());
    return 2;
  }

  linrel::LinearRelation result;
  if (op == "block") {
    const linrel::BlockEntries b =
        linrel::block_from_json(load_json(inputs[0]), tol);
    result = linrel::block_relation(b.a11, b.a12, b.a21, b.a22, tol).relation;
  } else if (op == "row" || op == "column") {
    const linrel::LinearRelation r1 =
        linrel::relation_from_json(load_json(inputs[0]), tol);
    const linrel::LinearRelation r2 =
        linrel::relation_from_json(load_json(inputs[1]), tol);
    result = op == "row" ? linrel::row(r1, r2, tol)
                         : linrel::column(r1, r2, tol);
  } else {
    const linrel::LinearRelation a =
        linrel::relation_from_json(load_json(inputs[0]), tol);
    if (op == "adjoint")
      result = linrel::adjoint(a);
    else if (op == "closure")
      result = linrel::closure(a);
    else
      result = linrel::inverse(a);
  }

  const linrel::RelationParts p = linrel::parts(result, tol);
  std::printf("relation R^%d -> R^%d  dom=%d ran=%d ker=%d mul=%d\n",
              result.dom_dim(), result.codom_dim(), p.dom.rank(), p.ran.rank(),
              p.ker.rank(), p.mul.rank());
  const std::string payload = linrel::to_json(result).dump(2) + "\n";
  if (opt.out_path)
    emit(opt.out_path, payload);
  else
    std::fputs(payload.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus of linear relations: subspaces, adjoints, rows, "
               "columns, blocks, law suite, truncation experiments"};
  app.require_subcommand(1);

  CommonOpts opt;

  CLI::App* laws = app.add_subcommand("laws", "run the registered law suite");
  add_common_flags(laws, opt);

  CLI::App* demo = app.add_subcommand("demo", "run a worked demo");
  std::string which;
  demo->add_option("which", which, "demo name")
      ->required()
      ->check(CLI::IsMember({"example1", "example2"}));
  add_common_flags(demo, opt);

  CLI::App* rel = app.add_subcommand("rel", "relation arithmetic on files");
  std::string rel_op;
  rel->add_option("op", rel_op, "operation")
      ->required()
      ->check(CLI::IsMember(
          {"adjoint", "closure", "inverse", "row", "column", "block"}));
  std::vector<std::string> inputs;
  rel->add_option("--in", inputs, "input relation/block JSON file");
  add_common_flags(rel, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (laws->parsed()) return cmd_laws(opt);
    if (demo->parsed())
      return which == "example1" ? cmd_demo_example1(opt)
                                 : cmd_demo_example2(opt);
    return cmd_rel(rel_op, inputs, opt);
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const linrel::ShapeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const linrel::PreconditionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
