// End-to-end tests of the command-line binary. argv[1] is the binary path;
// commands run through the shell with stdout captured to files.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "linrel/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_checks = 0;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    std::printf("FAIL %s\n", what.c_str());
  }
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

class CliRunner {
public:
  explicit CliRunner(std::string cli) : cli_(std::move(cli)) {
    dir_ = fs::temp_directory_path() /
           ("linrel_cli_tests_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~CliRunner() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  const fs::path& dir() const { return dir_; }

  fs::path write(const std::string& name, const std::string& content) const {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

  RunResult run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt";
    const std::string cmd = "\"" + cli_ + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" +
                            (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
  }

private:
  std::string cli_;
  fs::path dir_;
};

double chain_residual(const std::string& out) {
  const std::string key = "CHAIN EQUAL residual=";
  const std::size_t pos = out.find(key);
  if (pos == std::string::npos) return -1.0;
  return std::strtod(out.c_str() + pos + key.size(), nullptr);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-cli>\n");
    return 2;
  }
  CliRunner cli(argv[1]);

  {  // law suite, text format
    const RunResult r = cli.run("laws --trials 1 --seed 0");
    expect(r.exit_code == 0, "laws exit code");
    int pass_lines = 0;
    for (const std::string& line : lines_of(r.out))
      if (line.rfind("PASS ", 0) == 0) ++pass_lines;
    expect(pass_lines == 23, "laws prints 23 PASS lines");
    expect(r.out.find("suite seed=0 laws=23 trials=1 failures=0") !=
               std::string::npos,
           "laws summary line");
  }

  {  // usage errors
    expect(cli.run("laws --trials 0").exit_code == 2, "laws --trials 0");
    expect(cli.run("laws --max-dim 0").exit_code == 2, "laws --max-dim 0");
    expect(cli.run("laws --format yaml").exit_code == 2, "unknown format");
    expect(cli.run("demo nosuch").exit_code == 2, "unknown demo");
    expect(cli.run("").exit_code == 2, "missing subcommand");
    expect(cli.run("--help").exit_code == 0, "--help");
  }

  {  // JSON report file
    const fs::path report = cli.dir() / "report.json";
    const RunResult r = cli.run("laws --trials 2 --seed 1 --format json --out \"" +
                                report.string() + "\"");
    expect(r.exit_code == 0, "laws json exit code");
    expect(r.out.find("PASS") != std::string::npos,
           "line report still on stdout when --out is a file");
    const json j = json::parse(slurp(report));
    expect(j.at("all_passed").get<bool>(), "report all_passed");
    expect(j.at("summary").size() == 23, "report summary size");
    expect(j.at("reports").size() == 46, "report entries size");
    expect(j.dump().find("elapsed") == std::string::npos,
           "report carries no timing");
  }

  {  // byte-identical reruns
    const RunResult a = cli.run("laws --trials 5 --seed 42 --format json");
    const RunResult b = cli.run("laws --trials 5 --seed 42 --format json");
    expect(a.exit_code == 0 && b.exit_code == 0, "determinism runs succeed");
    expect(!a.out.empty() && a.out == b.out, "identical JSON bytes");
  }

  {  // csv summary format
    const RunResult r = cli.run("laws --trials 1 --format csv");
    expect(r.exit_code == 0, "laws csv exit code");
    expect(lines_of(r.out).at(0) == "law,trials,failures,worst_residual",
           "laws csv header");
  }

  {  // demo example1
    const RunResult r = cli.run("demo example1 --seed 7");
    expect(r.exit_code == 0, "demo example1 exit code");
    const double resid = chain_residual(r.out);
    expect(resid >= 0.0 && resid < 1e-8, "CHAIN EQUAL residual below 1e-8");
    expect(lines_of(r.out).size() == 4, "three links plus verdict");
  }

  {  // demo example2: default table
    const RunResult r = cli.run("demo example2");
    expect(r.exit_code == 0, "demo example2 exit code");
    const std::vector<std::string> lines = lines_of(r.out);
    expect(lines.size() == 7, "note + header + 5 rows");
    expect(lines.at(1) == "n,gamma,cos_friedrichs,flag_C,flag_Cprime",
           "example2 csv header");
    double prev = 10.0;
    int rows = 0;
    for (std::size_t i = 2; i < lines.size(); ++i) {
      const std::size_t c1 = lines[i].find(',');
      const double gamma = std::strtod(lines[i].c_str() + c1 + 1, nullptr);
      expect(gamma < prev, "gamma strictly decreasing");
      prev = gamma;
      expect(lines[i].find("true,true") != std::string::npos,
             "per-n flags true");
      ++rows;
    }
    expect(rows == 5, "five data rows");
  }

  {  // demo example2: extended sections and json mirror
    const RunResult r = cli.run("demo example2 --max-n 128");
    expect(lines_of(r.out).size() == 8, "--max-n 128 adds a row");
    const RunResult rj = cli.run("demo example2 --format json");
    const json j = json::parse(rj.out);
    expect(j.at("rows").size() == 5, "json mirror rows");
    expect(j.at("gamma_trend").get<std::string>() == "decaying_to_zero",
           "json mirror trend");
  }

  {  // rel adjoint on the identity is the identity
    const fs::path in = cli.write("id2.json", R"({"matrix": [[1,0],[0,1]]})");
    const fs::path out = cli.dir() / "adj.json";
    const RunResult r = cli.run("rel adjoint --in \"" + in.string() +
                                "\" --out \"" + out.string() + "\"");
    expect(r.exit_code == 0, "rel adjoint exit code");
    expect(r.out.find("dom=2 ran=2 ker=0 mul=0") != std::string::npos,
           "rel prints parts dims");
    const linrel::LinearRelation back =
        linrel::relation_from_json(json::parse(slurp(out)));
    expect(linrel::deviation(back, linrel::identity_relation(2)) < 1e-12,
           "adjoint of identity equals identity");
  }

  {  // rel row shape mismatch is a math error, not a usage error
    const fs::path r1 = cli.write("r1.json", R"({"matrix": [[1,2],[3,4]]})");
    const fs::path r2 = cli.write("r2.json", R"({"matrix": [[1],[2],[3]]})");
    expect(cli.run("rel row --in \"" + r1.string() + "\" --in \"" +
                   r2.string() + "\"").exit_code == 1,
           "rel row codomain mismatch");
    expect(cli.run("rel row --in \"" + r1.string() + "\"").exit_code == 2,
           "rel row with one input");
  }

  {  // rel column against the stacked matrix
    const fs::path c1 = cli.write("c1.json", R"({"matrix": [[1,2]]})");
    const fs::path c2 = cli.write("c2.json", R"({"matrix": [[3,4],[5,6]]})");
    const fs::path out = cli.dir() / "col.json";
    const RunResult r = cli.run("rel column --in \"" + c1.string() +
                                "\" --in \"" + c2.string() + "\" --out \"" +
                                out.string() + "\"");
    expect(r.exit_code == 0, "rel column exit code");
    Eigen::MatrixXd stacked(3, 2);
    stacked << 1, 2, 3, 4, 5, 6;
    const linrel::LinearRelation back =
        linrel::relation_from_json(json::parse(slurp(out)));
    expect(linrel::deviation(back, linrel::from_matrix(stacked)) < 1e-10,
           "column equals stacked matrix");
  }

  {  // rel block with matrix entries equals the block-matrix graph
    const fs::path blocks = cli.write("blocks.json", R"({
      "A11": {"matrix": [[1,2],[0,1]]},
      "A12": {"matrix": [[5],[6]]},
      "A21": {"matrix": [[0,3]]},
      "A22": {"matrix": [[7]]}})");
    const fs::path out = cli.dir() / "block.json";
    const RunResult r = cli.run("rel block --in \"" + blocks.string() +
                                "\" --out \"" + out.string() + "\"");
    expect(r.exit_code == 0, "rel block exit code");
    Eigen::MatrixXd m(3, 3);
    m << 1, 2, 5, 0, 1, 6, 0, 3, 7;
    const linrel::LinearRelation back =
        linrel::relation_from_json(json::parse(slurp(out)));
    expect(linrel::deviation(back, linrel::from_matrix(m)) < 1e-10,
           "block equals block-matrix graph");
  }

  {  // rel inverse twice reproduces the input graph
    const fs::path in = cli.write("wide.json", R"({"matrix": [[1,2,3]]})");
    const fs::path inv = cli.dir() / "inv.json";
    const fs::path twice = cli.dir() / "twice.json";
    expect(cli.run("rel inverse --in \"" + in.string() + "\" --out \"" +
                   inv.string() + "\"").exit_code == 0,
           "rel inverse exit code");
    expect(cli.run("rel inverse --in \"" + inv.string() + "\" --out \"" +
                   twice.string() + "\"").exit_code == 0,
           "rel inverse twice exit code");
    Eigen::MatrixXd m(1, 3);
    m << 1, 2, 3;
    const linrel::LinearRelation back =
        linrel::relation_from_json(json::parse(slurp(twice)));
    expect(linrel::deviation(back, linrel::from_matrix(m)) < 1e-12,
           "double inverse is the identity operation");
  }

  {  // rel closure is the identity here (everything is closed)
    const fs::path in = cli.write("cl.json", R"({"matrix": [[2,0],[0,3]]})");
    const fs::path out = cli.dir() / "cl_out.json";
    expect(cli.run("rel closure --in \"" + in.string() + "\" --out \"" +
                   out.string() + "\"").exit_code == 0,
           "rel closure exit code");
    Eigen::MatrixXd m(2, 2);
    m << 2, 0, 0, 3;
    const linrel::LinearRelation back =
        linrel::relation_from_json(json::parse(slurp(out)));
    expect(linrel::deviation(back, linrel::from_matrix(m)) < 1e-12,
           "closure of a closed graph");
  }

  {  // parse-level failures
    expect(cli.run("rel adjoint --in /nonexistent/x.json").exit_code == 2,
           "missing input file");
    const fs::path bad = cli.write("bad.json", "not json at all");
    expect(cli.run("rel adjoint --in \"" + bad.string() + "\"").exit_code == 2,
           "unparseable input file");
    const fs::path badshape = cli.write("badshape.json",
                                        R"({"dom_dim": 2, "codom_dim": 2,
      "graph": {"ambient_dim": 3, "basis": []}})");
    expect(cli.run("rel adjoint --in \"" + badshape.string() +
                   "\"").exit_code == 1,
           "graph ambient mismatch is a shape error");
  }

  std::printf("cli_tests: %d checks, %d failures\n", g_checks, g_failures);
  return g_failures == 0 ? 0 : 1;
}
