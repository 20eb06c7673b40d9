#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sdpp/ab.hpp"
#include "sdpp/checks.hpp"
#include "sdpp/extract.hpp"
#include "sdpp/io.hpp"
#include "sdpp/oracle.hpp"
#include "sdpp/report.hpp"
#include "sdpp/solver.hpp"

using namespace sdpp;

namespace {

int exit_code(Err e) {
  switch (e) {
    case Err::InternalInvariant:
    case Err::ContextMismatch:
      return 4;
    case Err::ProbabilisticFailure:
      return 3;
    default:
      return 2;
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::SchemaViolation, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& ex) {
    fail(Err::SchemaViolation, std::string("bad JSON in ") + path + ": " + ex.what());
  }
}

void emit(const json& report, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail(Err::SchemaViolation, "cannot write " + path);
  out << report.dump(2) << "\n";
}

struct Args {
  std::string input, output;
  u64 seed = 1;
  int trials = 16;
  unsigned mod_bits = 0;
  unsigned jobs = 0;
  int k1 = 0, k2 = 0;
  bool dump = false;
};

void add_common(CLI::App* s, Args& a, bool with_input) {
  if (with_input)
    s->add_option("input", a.input, "instance file (JSON)")->required();
  s->add_option("--seed", a.seed, "base seed for the trial sequence");
  s->add_option("--trials", a.trials, "trial cap before giving up")
      ->check(CLI::PositiveNumber);
  s->add_option("--modulus-bits", a.mod_bits,
                "override the working modulus width");
  s->add_option("--jobs", a.jobs,
                "worker threads (default: SDPP_JOBS, then hardware)");
  s->add_option("--output", a.output, "write the full JSON report here");
  s->add_flag("--dump-matrices", a.dump, "embed the M, L, F matrices");
}

json dump_matrices(ConfigSystem& sys) {
  SystemChecks chk = check_system(sys);
  json m;
  m["M"] = intmat_json(sys.M);
  m["L"] = intmat_json(sys.L);
  m["F"] = intmat_json(chk.F);
  return m;
}

int run_solve(const Args& a) {
  Instance inst = load_instance(load_json_file(a.input));
  SolveOptions opts;
  opts.seed = a.seed;
  opts.trials = a.trials;
  opts.jobs = a.jobs;
  opts.modulus_bits = a.mod_bits;
  SolveReport rep = solve_two_face(inst, opts);

  json j;
  j["command"] = "solve";
  j["input"] = a.input;
  j["seed"] = a.seed;
  j["trials"] = a.trials;
  j.update(solve_report_json(rep));
  if (a.dump) {
    AxisDescriptor ax = dual_axis(inst);
    ConfigSystem sys = build_system(static_cast<int>(inst.t.K1.size()),
                                    static_cast<int>(inst.t.K2.size()), ax);
    j["matrices"] = dump_matrices(sys);
  }
  emit(j, a.output);
  std::cout << human_summary(rep.outcome, rep.certain, rep.weight,
                             rep.paths.size(), rep.trials_used)
            << "\n";
  return rep.outcome == Outcome::Failed ? 3 : 0;
}

int run_solve_ab(const Args& a) {
  ABInstance ab = load_ab_instance(load_json_file(a.input));
  SolveOptions opts;
  opts.seed = a.seed;
  opts.trials = a.trials;
  opts.jobs = a.jobs;
  opts.modulus_bits = a.mod_bits;
  ABReport rep = solve_ab(ab, opts);

  json j;
  j["command"] = "solve-ab";
  j["input"] = a.input;
  j["seed"] = a.seed;
  j["trials"] = a.trials;
  j["crossPaths"] = ab.q;
  j.update(ab_report_json(rep));
  emit(j, a.output);
  std::cout << human_summary(rep.outcome, rep.certain, rep.weight,
                             rep.paths.size(), rep.trials_used)
            << "\n";
  return rep.outcome == Outcome::Failed ? 3 : 0;
}

int run_oracle(const Args& a) {
  json in = load_json_file(a.input);
  json j;
  j["command"] = "oracle";
  j["input"] = a.input;
  i64 best = 0;
  u64 total = 0, at_best = 0;
  if (in.contains("rotation")) {
    Instance inst = load_instance(in);
    auto all = enumerate_instances_undirected(inst);
    j["kind"] = "two-face";
    total = all.size();
    for (auto& s : all)
      if (at_best == 0 || s.w < best) best = s.w;
    for (auto& s : all)
      if (s.w == best) ++at_best;
  } else {
    ABInstance ab = load_ab_instance(in);
    auto all = ab_systems(ab, nullptr, ab.q);
    j["kind"] = "two-sets";
    total = all.size();
    for (auto& s : all)
      if (at_best == 0 || s.sys.w < best) best = s.sys.w;
    for (auto& s : all)
      if (s.sys.w == best) ++at_best;
  }
  j["systems"] = total;
  if (total == 0) {
    j["optimum"] = nullptr;
    std::cout << "no routing exists\n";
  } else {
    j["optimum"] = best;
    j["optimalCount"] = at_best;
    std::cout << "optimum " << best << " attained by " << at_best << " of "
              << total << " systems\n";
  }
  emit(j, a.output);
  return 0;
}

int run_verify(const Args& a) {
  Instance inst;
  json j;
  j["command"] = "verify-matrices";
  if (!a.input.empty()) {
    inst = load_instance(load_json_file(a.input));
    j["input"] = a.input;
  } else {
    int k1 = a.k1 ? a.k1 : 3, k2 = a.k2 ? a.k2 : 1;
    inst = template_annulus(k1, k2, 2, std::max({3, k1, k2}));
    j["k1"] = k1;
    j["k2"] = k2;
  }
  validate_instance(inst);
  AxisDescriptor ax = dual_axis(inst);
  ConfigSystem sys = build_system(static_cast<int>(inst.t.K1.size()),
                                  static_cast<int>(inst.t.K2.size()), ax);
  SystemChecks chk = check_system(sys);
  j["det"] = sys.det.str();
  j["modulusBits"] = sys.c;
  j.update(checks_json(chk));
  if (a.dump) {
    j["matrices"]["M"] = intmat_json(sys.M);
    j["matrices"]["L"] = intmat_json(sys.L);
    j["matrices"]["F"] = intmat_json(chk.F);
  }
  emit(j, a.output);
  std::cout << "dimension " << sys.configs.size() << ", det " << sys.det.str()
            << ", " << (chk.ok() ? "all checks passed" : "CHECKS FAILED")
            << "\n";
  return chk.ok() ? 0 : 4;
}

int run_extract_demo(const Args& a) {
  unsigned c = a.mod_bits ? a.mod_bits : 3;
  require(c >= 1 && c <= 32, Err::SchemaViolation,
          "demo modulus must have 1..32 bits");
  const unsigned m = 5, dx = 10, dy = 10;
  GaloisRing R(m, c);
  int matched = 0;
  for (int i = 0; i < a.trials; ++i) {
    Rng rng(splitmix64(a.seed + static_cast<u64>(i)));
    CoeffTable truth(dx + 1, std::vector<u64>(dy + 1, 0));
    for (auto& row : truth)
      for (auto& v : row) v = rng.below(1ull << c);
    CoeffTable got = extract_coeffs(
        R,
        [&](const GaloisRing::Elem& x, const GaloisRing::Elem& y) {
          return eval_table(R, truth, x, y);
        },
        dx, dy);
    if (got == truth) ++matched;
  }
  json j;
  j["command"] = "extract-demo";
  j["seed"] = a.seed;
  j["trials"] = a.trials;
  j["modulusBits"] = c;
  j["matched"] = matched;
  emit(j, a.output);
  std::cout << matched << "/" << a.trials << " extractions matched\n";
  return matched == a.trials ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact shortest disjoint path toolkit"};
  app.require_subcommand(1);
  Args a;

  CLI::App* s_solve =
      app.add_subcommand("solve", "route demand pairs between two faces");
  add_common(s_solve, a, true);
  CLI::App* s_ab = app.add_subcommand(
      "solve-ab", "route two terminal sets with a fixed cross count");
  add_common(s_ab, a, true);
  CLI::App* s_oracle =
      app.add_subcommand("oracle", "exhaustive reference enumeration");
  add_common(s_oracle, a, true);
  CLI::App* s_verify = app.add_subcommand(
      "verify-matrices", "build the pattern system and run its checks");
  add_common(s_verify, a, false);
  s_verify->add_option("input", a.input, "instance file (JSON), optional");
  s_verify->add_option("--k1", a.k1, "terminal count on the outer face");
  s_verify->add_option("--k2", a.k2, "terminal count on the inner face");
  CLI::App* s_extract = app.add_subcommand(
      "extract-demo", "round-trip coefficient recovery on random tables");
  add_common(s_extract, a, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int prc = app.exit(e);
    return prc == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (app.got_subcommand(s_solve)) rc = run_solve(a);
    else if (app.got_subcommand(s_ab)) rc = run_solve_ab(a);
    else if (app.got_subcommand(s_oracle)) rc = run_oracle(a);
    else if (app.got_subcommand(s_verify)) rc = run_verify(a);
    else rc = run_extract_demo(a);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = exit_code(e.code);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 4;
  }
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  std::fprintf(stderr, "elapsed %.3fs\n", dt.count());
  return rc;
}
