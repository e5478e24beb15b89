#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "confdfa/encodings.hpp"
#include "confdfa/solve.hpp"

using namespace confdfa;

namespace {

ExampleSet mod_examples(int n, int k) {
  GeometricOracle oracle(mod_language(n), rational_from_decimal("0.9"));
  return build_example_set(oracle, k);
}

Verdict builtin_verdict(const EncodingInstance& inst, Dfa* model = nullptr) {
  BuiltinSatBackend backend;
  auto outcome = backend.solve_instance(inst, 60.0);
  REQUIRE(outcome.has_value());
  if (model && outcome->verdict == Verdict::Sat)
    *model = decode_model(inst, parse_model("mip", outcome->output, {}));
  return outcome->verdict;
}

bool consistent(const Dfa& dfa, const ExampleSet& examples) {
  for (const auto& item : examples.items)
    if (run(dfa, item.x) != (item.sign > 0)) return false;
  return true;
}

Rat misclassified_mass(const Dfa& dfa, const ExampleSet& examples) {
  Rat total = 0;
  for (const auto& item : examples.items)
    if (run(dfa, item.x) != (item.sign > 0)) total += item.weight_exact;
  return total;
}

}  // namespace

TEST_CASE("example sets from the geometric oracle") {
  ExampleSet set = mod_examples(2, 2);
  CHECK(set.items.size() == 7);  // all of Sigma^{<=2} carries mass
  Rat lambda = Rat(9) / 10;
  CHECK(set.total_weight_exact() == 1 - rat_pow(lambda, 3));
  CHECK(set.total_weight() == doctest::Approx(0.271).epsilon(1e-12));
  for (const auto& item : set.items) {
    CHECK(item.weight > 0.0);
    CHECK(item.sign == (run(mod_language(2), item.x) ? 1 : -1));
  }
}

TEST_CASE("variable counts: backward is strictly smaller") {
  ExampleSet set = mod_examples(2, 4);
  const int trie_nodes = 31;  // Sigma^{<=4} is suffix-closed: all 31 strings
  for (int n = 1; n <= 3; ++n) {
    EncodingInstance fwd = encode_forward(set, n);
    EncodingInstance bwd = encode_backward(set, n);
    CHECK(static_cast<int>(fwd.var_count()) == n + 2 * n * n + n * trie_nodes);
    CHECK(static_cast<int>(bwd.var_count()) == n + 2 * n * n + n * (trie_nodes - 1));
    CHECK(bwd.var_count() < fwd.var_count());
  }
  // spot value from the closed form at n=2
  CHECK(encode_backward(set, 2).var_count() == 70);
}

TEST_CASE("forward, backward, and naive agree with each other and decode correctly") {
  ExampleSet set = mod_examples(2, 3);
  for (int n = 1; n <= 3; ++n) {
    Dfa fwd_model, bwd_model, naive_model;
    Verdict f = builtin_verdict(encode_forward(set, n), &fwd_model);
    Verdict b = builtin_verdict(encode_backward(set, n), &bwd_model);
    Verdict nv = builtin_verdict(encode_naive(set, n), &naive_model);
    CHECK(f == b);
    CHECK(f == nv);
    CHECK(f == (n >= 2 ? Verdict::Sat : Verdict::Unsat));
    if (f == Verdict::Sat) {
      CHECK(consistent(fwd_model, set));
      CHECK(consistent(bwd_model, set));
      CHECK(consistent(naive_model, set));
    }
  }
}

TEST_CASE("round trip: examples from a target of size n are satisfiable at n") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Dfa target = minimize(random_dfa(3, 2, seed));
    GeometricOracle oracle(target, 0.9);
    ExampleSet set = build_example_set(oracle, 4);
    Dfa model;
    CHECK(builtin_verdict(encode_backward(set, target.n), &model) == Verdict::Sat);
    CHECK(consistent(model, set));
  }
}

TEST_CASE("naive size guard") {
  ExampleSet set;
  set.alphabet_size = 2;
  set.k = 30;
  ExampleItem item;
  item.x = Word(30, 0);
  item.weight = 0.5;
  item.weight_exact = Rat(1) / 2;
  set.items.push_back(item);
  CHECK_THROWS_AS(encode_naive(set, 2), size_error);
}

TEST_CASE("eta relaxation boundaries") {
  ExampleSet set = mod_examples(2, 3);

  SUBCASE("eta = 0 matches the exact verdicts") {
    for (int n = 1; n <= 3; ++n) {
      EncodingInstance exact = encode_backward(set, n);
      EncodingInstance relaxed = relax_eta(exact, 0.0);
      Dfa model;
      Verdict v = builtin_verdict(relaxed, &model);
      CHECK(v == builtin_verdict(exact));
      if (v == Verdict::Sat) CHECK(consistent(model, set));
    }
  }

  SUBCASE("full budget is satisfiable at n = 1") {
    EncodingInstance relaxed = relax_eta(encode_backward(set, 1), set.total_weight() + 0.01);
    CHECK(builtin_verdict(relaxed) == Verdict::Sat);
  }

  SUBCASE("decoded eta model respects the budget") {
    double eta = 0.2;
    EncodingInstance relaxed = relax_eta(encode_backward(set, 1), eta);
    Dfa model;
    REQUIRE(builtin_verdict(relaxed, &model) == Verdict::Sat);
    CHECK(misclassified_mass(model, set) <= rational_from_double(eta));
  }

  SUBCASE("negative eta rejected") {
    CHECK_THROWS_AS(relax_eta(encode_backward(set, 1), -0.1), input_error);
  }
}

TEST_CASE("mip translation") {
  ExampleSet set = mod_examples(2, 3);
  EncodingInstance relaxed = relax_eta(encode_backward(set, 2), 1e-6);
  EncodingInstance mip = to_mip(relaxed);
  CHECK(mip.flavor == Flavor::EtaMip);
  CHECK_FALSE(mip.rows.empty());

  // every transition row becomes a unit-sum equality
  int unit_rows = 0;
  for (const auto& row : mip.rows)
    if (row.sense == '=' && row.rhs == 1.0 && row.terms.size() == 2) ++unit_rows;
  CHECK(unit_rows >= 2 * 2);  // |Sigma| * n one-hot rows at n = 2

  std::string lp = emit_lp(mip);
  CHECK(lp.find("Minimize") != std::string::npos);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Binary") != std::string::npos);
  CHECK(lp.find("<= 0.000001") != std::string::npos);  // the budget row

  CHECK_THROWS_AS(to_mip(encode_backward(set, 2)), input_error);  // exact flavor not accepted

  EncodingInstance with_obj = to_mip(relaxed, true);
  CHECK(emit_lp(with_obj).find("obj: 0.1 e_0") != std::string::npos);
}

TEST_CASE("mip model decodes through the LP variable values") {
  // hand-built assignment for mod2 at n = 2
  ExampleSet set = mod_examples(2, 3);
  EncodingInstance inst = encode_backward(set, 2);
  std::map<std::string, bool> assignment;
  assignment["aF_0"] = true;
  assignment["aF_1"] = false;
  assignment["t_0_0_0"] = true;
  assignment["t_0_0_1"] = false;
  assignment["t_0_1_0"] = false;
  assignment["t_0_1_1"] = true;
  assignment["t_1_0_0"] = false;
  assignment["t_1_0_1"] = true;
  assignment["t_1_1_0"] = true;
  assignment["t_1_1_1"] = false;
  Dfa decoded = decode_model(inst, assignment);
  CHECK(is_equivalent(decoded, mod_language(2)));

  assignment["t_1_1_0"] = false;  // row no longer one-hot
  CHECK_THROWS_AS(decode_model(inst, assignment), decode_error);
  assignment.erase("aF_0");
  CHECK_THROWS_AS(decode_model(inst, assignment), decode_error);
}

TEST_CASE("smt2 emission") {
  ExampleSet set = mod_examples(2, 2);
  std::string exact = emit_smtlib(encode_backward(set, 2));
  CHECK(exact.find("(set-logic") == std::string::npos);  // pure Boolean core
  CHECK(exact.find("(declare-const aF_0 Bool)") != std::string::npos);
  CHECK(exact.find("(check-sat)") != std::string::npos);
  CHECK(exact.find("(get-model)") != std::string::npos);

  std::string eta = emit_smtlib(relax_eta(encode_backward(set, 2), 0.001));
  CHECK(eta.rfind("(set-logic QF_LRA)", 0) == 0);
  CHECK(eta.find("(ite e_0") != std::string::npos);
  CHECK(eta.find("(declare-const e_0 Bool)") != std::string::npos);
}

TEST_CASE("dimacs emission and builtin file solving") {
  ExampleSet set = mod_examples(2, 3);
  DimacsResult d = emit_dimacs(encode_backward(set, 2));
  CHECK(d.dimacs.rfind("p cnf ", 0) == 0);
  CHECK(d.mapping.find("aF_0 ") != std::string::npos);

  CHECK_THROWS_AS(emit_dimacs(relax_eta(encode_backward(set, 2), 0.1)), input_error);
}

TEST_CASE("closure trie directions") {
  ExampleSet set;
  set.alphabet_size = 2;
  set.k = 2;
  for (const char* s : {"01", "1"}) {
    ExampleItem item;
    item.x = parse_word(s);
    item.weight = 0.1;
    item.weight_exact = Rat(1) / 10;
    item.sign = 1;
    set.items.push_back(item);
  }
  // forward trie: prefixes of {01, 1} = {eps, 0, 01, 1} -> 4 nodes
  CHECK(encode_forward(set, 1).trie.node_count() == 4);
  // backward trie: suffixes = {eps, 1, 01} -> 3 nodes
  CHECK(encode_backward(set, 1).trie.node_count() == 3);
}
