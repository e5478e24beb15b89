#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confdfa/learner.hpp"

using namespace confdfa;

namespace {

LearnerConfig fast_config(uint64_t seed) {
  LearnerConfig config;
  config.schedule = EpsilonSchedule::geometric(1e-4);
  config.samples_per_test = 20000;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("tie break") {
  CHECK(tie_break({{0, 0.5}}) == 0);
  CHECK(tie_break({{0, 0.3}, {1, 0.3}}) == 0);   // equal estimates: earliest insertion
  CHECK(tie_break({{1, 0.3}, {0, 0.3}}) == 1);   // index order, not list order
  CHECK(tie_break({{0, 0.9}, {1, 0.2}, {2, 0.4}}) == 1);
  CHECK_THROWS_AS(tie_break({}), input_error);
}

TEST_CASE("learns mod3 exactly") {
  GeometricOracle oracle(mod_language(3), 0.9);
  LearnResult result = learn(oracle, fast_config(7));
  CHECK(result.status == LearnStatus::Ok);
  CHECK(result.dfa.n == 3);
  CHECK(is_equivalent(result.dfa, mod_language(3)));
}

TEST_CASE("single-state all-accepting oracle") {
  GeometricOracle oracle(all_accepting(2), 0.9);
  LearnResult result = learn(oracle, fast_config(1));
  CHECK(result.dfa.n == 1);
  CHECK(result.dfa.accepting[0] == 1);
  CHECK(is_equivalent(result.dfa, all_accepting(2)));
}

TEST_CASE("determinism: same seed, same transcript and DFA") {
  GeometricOracle oracle(mod_language(2), 0.9);
  LearnResult r1 = learn(oracle, fast_config(42));
  LearnResult r2 = learn(oracle, fast_config(42));
  CHECK(r1.transcript.serialize() == r2.transcript.serialize());
  CHECK(r1.dfa.delta == r2.dfa.delta);
  CHECK(r1.dfa.accepting == r2.dfa.accepting);
}

TEST_CASE("state cap produces a partial result") {
  GeometricOracle oracle(mod_language(3), 0.9);
  LearnerConfig config = fast_config(3);
  config.max_states = 1;
  LearnResult result = learn(oracle, config);
  CHECK(result.status == LearnStatus::StateCapExceeded);
  CHECK(result.dfa.n == 1);
  CHECK_FALSE(result.transcript.entries.empty());
}

TEST_CASE("no extraneous states, BFS shortest access") {
  Dfa target = mod_language(4);
  GeometricOracle oracle(target, 0.9);
  LearnResult result = learn(oracle, fast_config(11));
  REQUIRE(result.dfa.n == 4);

  // every access string hits a distinct ground-truth state...
  std::vector<int> seen;
  std::vector<int> depth = bfs_depths(target);
  for (const Word& u : result.access_strings) {
    int s = derivative_state(target, u);
    for (int other : seen) CHECK(other != s);
    seen.push_back(s);
    // ...by a shortest possible access string
    CHECK(static_cast<int>(u.size()) == depth[static_cast<size_t>(s)]);
  }
}

TEST_CASE("transcript format") {
  GeometricOracle oracle(mod_language(2), 0.9);
  LearnResult result = learn(oracle, fast_config(5));
  std::string text = result.transcript.serialize();
  CHECK(text.find("merge") != std::string::npos);
  CHECK(text.find("new-state") != std::string::npos);
  // first explored pair is (epsilon, 0)
  CHECK(text.rfind("- 0 ", 0) == 0);
}

TEST_CASE("config validation") {
  GeometricOracle oracle(mod_language(2), 0.9);
  LearnerConfig bad;
  bad.schedule = EpsilonSchedule::constant(0.0);
  CHECK_THROWS_AS(learn(oracle, bad), input_error);
  bad = fast_config(1);
  bad.max_states = 0;
  CHECK_THROWS_AS(learn(oracle, bad), input_error);
}

TEST_CASE("constant schedule also recovers small targets") {
  GeometricOracle oracle(mod_language(2), 0.9);
  LearnerConfig config = fast_config(9);
  config.schedule = EpsilonSchedule::constant(0.05);
  LearnResult result = learn(oracle, config);
  CHECK(result.dfa.n == 2);
  CHECK(is_equivalent(result.dfa, mod_language(2)));
}
