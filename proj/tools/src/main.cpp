#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "rrdq/cli/tasks.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rrdq::cli::InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
void set_opt(CLI::Option* o, const T& v, std::optional<T>& dst) {
  if (o->count() > 0) dst = v;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rrdq::cli;

  CLI::App app{"rrdq: exact deformation-quantization and Riemann-Roch computations"};
  app.set_version_flag("--version", "rrdq 0.1.0");

  std::string command;
  app.add_option("command", command, "star | hb | hB | verify-cycle | hkr | charclass | fedosov | rees | suite")
      ->required()
      ->check(CLI::IsMember({"star", "hb", "hB", "verify-cycle", "hkr", "charclass", "fedosov", "rees", "suite"}));

  Settings s;
  int trunc_t = 0, trunc_u = 0, dim = 0, max_deg = 0, fiber_trunc = 0;
  std::string json_path;
  app.add_option("--seed", s.seed, "random seed")->capture_default_str();
  auto* o_tt = app.add_option("--trunc-t,--t-trunc", trunc_t, "t-adic truncation order");
  auto* o_tu = app.add_option("--trunc-u", trunc_u, "u-adic truncation for cyclic complexes");
  auto* o_dim = app.add_option("--dim", dim, "Weyl or manifold dimension d");
  auto* o_md = app.add_option("--max-deg", max_deg, "maximal algebraic degree");
  auto* o_ft = app.add_option("--fiber-trunc", fiber_trunc, "fiber-degree truncation K");
  app.add_option("--json", json_path, "JSON input file, or - for stdin");
  app.add_option("--scale", s.scale, "suite corpus size")->check(CLI::IsMember({"small", "full"}))->capture_default_str();
  app.add_option("--class", s.cls, "a-hat | todd | exp | rr-check")
      ->check(CLI::IsMember({"a-hat", "todd", "exp", "rr-check"}))
      ->capture_default_str();
  app.add_option("--basis", s.basis, "roots | chern")->check(CLI::IsMember({"roots", "chern"}))->capture_default_str();
  app.add_option("--check", s.checks, "restrict to the named checks")->delimiter(',');
  app.add_option("--criteria", s.criteria, "suite criteria to run, e.g. 1,2,7")->delimiter(',');
  app.add_flag("--mutate-moyal-sign", s.mutate_moyal_sign, "flip the first-order Moyal sign (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  set_opt(o_tt, trunc_t, s.trunc_t);
  set_opt(o_tu, trunc_u, s.trunc_u);
  set_opt(o_dim, dim, s.dim);
  set_opt(o_md, max_deg, s.max_deg);
  set_opt(o_ft, fiber_trunc, s.fiber_trunc);

  Report report;
  try {
    if (!json_path.empty()) {
      const std::string source = json_path == "-" ? "<stdin>" : json_path;
      s.input = parse_json(read_input(json_path), source);
    }
    report = run_task(command, s);
  } catch (const InputError& e) {
    report = Report{};
    report.command = command;
    report.seed = s.seed;
    report.error = e.what();
  }

  std::cout << to_json(report).dump(2) << '\n';
  std::cerr << summary(report);
  return report.exit_code();
}
