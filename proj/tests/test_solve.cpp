#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "confdfa/solve.hpp"

using namespace confdfa;
namespace fs = std::filesystem;

namespace {

ExampleSet mod_examples(int n, int k) {
  GeometricOracle oracle(mod_language(n), rational_from_decimal("0.9"));
  return build_example_set(oracle, k);
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal search recovers mod sizes with the builtin backend") {
  TempDir dir("confdfa_test_search");
  BuiltinSatBackend backend;
  for (int n = 1; n <= 3; ++n) {
    SearchReport report =
        minimal_search(mod_examples(n, 5), 0.0, Direction::Backward, Flavor::ExactSat, backend, 5, 60.0, dir.path);
    CHECK(report.minimal_n == n);
    REQUIRE(report.witness.has_value());
    CHECK(is_equivalent(minimize(*report.witness), mod_language(n)));
    REQUIRE(static_cast<int>(report.records.size()) == n);
    for (int i = 0; i < n - 1; ++i) CHECK(report.records[static_cast<size_t>(i)].verdict == Verdict::Unsat);
    CHECK(report.records.back().verdict == Verdict::Sat);
    CHECK(report.csv().rfind("n,verdict,seconds,vars,constraints\n", 0) == 0);
  }
}

TEST_CASE("full eta budget wins at size one") {
  TempDir dir("confdfa_test_budget");
  BuiltinSatBackend backend;
  ExampleSet set = mod_examples(3, 4);
  SearchReport report = minimal_search(set, set.total_weight() + 0.01, Direction::Backward,
                                       Flavor::EtaSmt, backend, 4, 60.0, dir.path);
  CHECK(report.minimal_n == 1);
}

TEST_CASE("eta boundary tracks the brute-force best distance") {
  ExampleSet set = mod_examples(4, 5);
  BruteForceResult brute = brute_force_minimal(set, Rat(0), 2);
  Rat best2 = brute.best_loss[1].second;
  REQUIRE(best2 > 0);

  TempDir dir("confdfa_test_boundary");
  BuiltinSatBackend backend;
  SearchReport above = minimal_search(set, to_double(best2) + 1e-9, Direction::Backward, Flavor::EtaSmt,
                                      backend, 4, 120.0, dir.path);
  CHECK(above.minimal_n == 2);
  SearchReport below = minimal_search(set, to_double(best2) - 1e-9, Direction::Backward, Flavor::EtaSmt,
                                      backend, 2, 120.0, dir.path);
  CHECK(below.minimal_n == -1);  // two states no longer suffice
}

TEST_CASE("brute force minimal") {
  SUBCASE("mod2 needs two states") {
    BruteForceResult r = brute_force_minimal(mod_examples(2, 4), Rat(0), 3);
    CHECK(r.minimal_n == 2);
    REQUIRE(r.witness.has_value());
    CHECK(is_equivalent(minimize(*r.witness), mod_language(2)));
    // per-n best loss never increases
    for (size_t i = 1; i < r.best_loss.size(); ++i)
      CHECK(r.best_loss[i].second <= r.best_loss[i - 1].second);
  }

  SUBCASE("all-positive examples fit in one state") {
    BruteForceResult r = brute_force_minimal(mod_examples(1, 4), Rat(0), 2);
    CHECK(r.minimal_n == 1);
    CHECK(r.best_loss[0].second == 0);
  }

  SUBCASE("guard") {
    ExampleSet set = mod_examples(2, 3);
    CHECK_THROWS_AS(brute_force_minimal(set, Rat(0), 4), size_error);
    CHECK(brute_force_minimal(set, Rat(0), 4, true).minimal_n == 2);
  }
}

TEST_CASE("builtin backend on DIMACS files") {
  TempDir dir("confdfa_test_dimacs");
  BuiltinSatBackend backend;

  fs::path satisfiable = dir.path / "sat.cnf";
  std::ofstream(satisfiable) << "p cnf 2 2\n1 0\n-1 2 0\n";
  SolveOutcome sat = backend.invoke(satisfiable, 10.0);
  CHECK(sat.verdict == Verdict::Sat);
  CHECK(sat.output.find("s SATISFIABLE") != std::string::npos);
  CHECK(sat.output.find("v 1 2 0") != std::string::npos);

  fs::path unsatisfiable = dir.path / "unsat.cnf";
  std::ofstream(unsatisfiable) << "p cnf 1 2\n1 0\n-1 0\n";
  CHECK(backend.invoke(unsatisfiable, 10.0).verdict == Verdict::Unsat);

  CHECK(backend.invoke(dir.path / "missing.cnf", 10.0).verdict == Verdict::Error);
}

TEST_CASE("replay backend") {
  TempDir dir("confdfa_test_replay");
  ReplayBackend backend("mip");
  fs::path problem = dir.path / "p.lp";
  std::ofstream(problem) << "Minimize\n obj: 0\nEnd\n";

  std::ofstream(problem.string() + ".result") << "sat\naF_0 1\nt_0_0_0 1\n";
  SolveOutcome outcome = backend.invoke(problem, 10.0);
  CHECK(outcome.verdict == Verdict::Sat);
  auto model = parse_model("mip", outcome.output, problem);
  CHECK(model.at("aF_0"));

  std::ofstream(problem.string() + ".result") << "unsat\n";
  CHECK(backend.invoke(problem, 10.0).verdict == Verdict::Unsat);
  std::ofstream(problem.string() + ".result") << "timeout\n";
  CHECK(backend.invoke(problem, 10.0).verdict == Verdict::Timeout);
  fs::remove(problem.string() + ".result");
  CHECK(backend.invoke(problem, 10.0).verdict == Verdict::Error);
}

TEST_CASE("subprocess backend") {
  TempDir dir("confdfa_test_subproc");
  fs::path problem = dir.path / "p.txt";

  std::ofstream(problem) << "unsat\n";
  SubprocessBackend cat("smt", "cat");
  CHECK(cat.invoke(problem, 10.0).verdict == Verdict::Unsat);

  std::ofstream(problem) << "sat\n";
  CHECK(cat.invoke(problem, 10.0).verdict == Verdict::Sat);

  SubprocessBackend slow("smt", "sleep 3 #");
  CHECK(slow.invoke(problem, 1.0).verdict == Verdict::Timeout);

  SubprocessBackend silent("smt", "true");
  CHECK(silent.invoke(problem, 10.0).verdict == Verdict::Error);
}

TEST_CASE("model parsing") {
  SUBCASE("smt define-fun form") {
    auto model = parse_model("smt", "sat\n(model\n(define-fun aF_0 () Bool true)\n"
                                    "(define-fun t_0_0_0 () Bool false)\n)",
                             {});
    CHECK(model.at("aF_0"));
    CHECK_FALSE(model.at("t_0_0_0"));
  }

  SUBCASE("smt pair form") {
    auto model = parse_model("smt", "sat\n((aF_0 true) (b_3_1 false))", {});
    CHECK(model.at("aF_0"));
    CHECK_FALSE(model.at("b_3_1"));
  }

  SUBCASE("dimacs v-lines through the mapping file") {
    TempDir dir("confdfa_test_map");
    fs::path problem = dir.path / "p.cnf";
    std::ofstream(problem.string() + ".map") << "aF_0 1\nt_0_0_0 2\n";
    auto model = parse_model("sat", "s SATISFIABLE\nv 1 -2 0\n", problem);
    CHECK(model.at("aF_0"));
    CHECK_FALSE(model.at("t_0_0_0"));
  }

  SUBCASE("mip values with integrality band") {
    auto model = parse_model("mip", "aF_0 1.0000001\nt_0_0_0 0\n", {});
    CHECK(model.at("aF_0"));
    CHECK_THROWS_AS(parse_model("mip", "aF_0 0.49\n", {}), decode_error);
  }

  SUBCASE("unknown kind") { CHECK_THROWS_AS(parse_model("lp", "", {}), input_error); }
}

TEST_CASE("minimal search through emitted files and the replay backend") {
  // Pin the expected eta-MIP behavior with canned results produced from the
  // brute-force witness: unsat at n=1, sat at n=2 with its assignment.
  ExampleSet set = mod_examples(2, 3);
  BruteForceResult brute = brute_force_minimal(set, Rat(0), 2);
  REQUIRE(brute.minimal_n == 2);

  TempDir dir("confdfa_test_replay_search");
  // First, emit the problems once to learn their paths.
  EncodingInstance inst1 = to_mip(relax_eta(encode_backward(set, 1), 0.0));
  EncodingInstance inst2 = to_mip(relax_eta(encode_backward(set, 2), 0.0));
  fs::path p1 = dir.path / "search_backward_eta-mip_n1.lp";
  fs::path p2 = dir.path / "search_backward_eta-mip_n2.lp";
  std::ofstream(p1.string() + ".result") << "unsat\n";
  std::ostringstream model;
  model << "sat\n";
  const Dfa& w = *brute.witness;
  for (int i = 0; i < w.n; ++i)
    model << "aF_" << i << " " << (w.accepting[static_cast<size_t>(i)] ? 1 : 0) << "\n";
  for (int s = 0; s < w.alphabet_size; ++s)
    for (int i = 0; i < w.n; ++i)
      for (int j = 0; j < w.n; ++j)
        model << "t_" << s << "_" << i << "_" << j << " "
              << (w.delta[static_cast<size_t>(i) * w.alphabet_size + s] == j ? 1 : 0) << "\n";
  for (size_t item = 0; item < set.items.size(); ++item) model << "e_" << item << " 0\n";
  for (const auto& var : inst2.vars)
    if (var.role == VariableInfo::Vec || var.role == VariableInfo::Aux) model << var.name << " 0\n";
  std::ofstream(p2.string() + ".result") << model.str();
  (void)inst1;

  ReplayBackend backend("mip");
  SearchReport report =
      minimal_search(set, 0.0, Direction::Backward, Flavor::EtaMip, backend, 3, 10.0, dir.path);
  CHECK(report.minimal_n == 2);
  REQUIRE(report.witness.has_value());
  CHECK(is_equivalent(minimize(*report.witness), mod_language(2)));
}
