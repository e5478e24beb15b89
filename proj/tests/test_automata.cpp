#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "confdfa/automata.hpp"
#include "confdfa/types.hpp"

using namespace confdfa;

TEST_CASE("run on mod languages") {
  Dfa mod2 = mod_language(2);
  CHECK(run(mod2, parse_word("11")));
  CHECK_FALSE(run(mod2, parse_word("1")));
  CHECK(run(mod2, parse_word("-")));  // epsilon: initial state accepts

  // "1101" has three 1s, 3 mod 3 == 0
  Dfa mod3 = mod_language(3);
  CHECK(run(mod3, parse_word("1101")));
  CHECK_FALSE(run(mod3, parse_word("110")));

  Dfa any = mod_language(1);
  for (const char* s : {"-", "0", "1", "0110"}) CHECK(run(any, parse_word(s)));
}

TEST_CASE("run rejects out-of-range symbols") {
  Dfa mod2 = mod_language(2);
  Word bad{0, 7};
  CHECK_THROWS_AS(run(mod2, bad), input_error);
}

TEST_CASE("derivative_state traces") {
  Dfa mod2 = mod_language(2);
  CHECK(derivative_state(mod2, Word{}) == mod2.initial);
  CHECK(derivative_state(mod2, parse_word("1")) == 1);

  Dfa mod4 = mod_language(4);
  CHECK(derivative_state(mod4, parse_word("11")) == 2);
  CHECK(derivative_state(mod4, parse_word("1111")) == mod4.initial);

  // composition: delta*(s0, uv) = delta*(delta*(s0,u), v)
  Dfa r = random_dfa(6, 2, 11);
  Word u = parse_word("0110"), v = parse_word("101");
  Word uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  int su = derivative_state(r, u);
  int step = su;
  for (Symbol s : v) step = r.step(step, s);
  CHECK(derivative_state(r, uv) == step);
}

TEST_CASE("minimize") {
  for (int n = 1; n <= 8; ++n) CHECK(minimize(mod_language(n)).n == n);

  // duplicate a state: same language, one more state
  Dfa mod2 = mod_language(2);
  Dfa dup = mod2;
  dup.n = 3;
  dup.delta = {0, 2, 1, 0, 2, 0};  // state 2 mirrors state 1
  dup.accepting = {1, 0, 0};
  Dfa m = minimize(dup);
  CHECK(m.n == 2);
  CHECK(is_equivalent(m, mod2));

  Dfa r = random_dfa(8, 2, 3);
  Dfa m1 = minimize(r);
  Dfa m2 = minimize(m1);
  CHECK(m1.n == m2.n);
  CHECK(is_equivalent(m1, m2));
  CHECK(is_equivalent(m1, r));
}

TEST_CASE("symmetric difference") {
  Dfa mod2 = mod_language(2);
  CHECK(accepts_nothing(symmetric_difference(mod2, mod2)));

  // against all-accepting: exactly the odd-parity strings
  Dfa diff = symmetric_difference(mod2, all_accepting(2));
  for_each_word(2, 8, [&](std::span<const Symbol> x) {
    int ones = 0;
    for (Symbol s : x) ones += s == 1;
    CHECK(run(diff, x) == (ones % 2 == 1));
  });

  Dfa a = random_dfa(4, 2, 5), b = random_dfa(5, 2, 6);
  Dfa d = symmetric_difference(a, b);
  for_each_word(2, 8, [&](std::span<const Symbol> x) { CHECK(run(d, x) == (run(a, x) != run(b, x))); });
  CHECK(is_equivalent(a, b) == accepts_nothing(d));
}

TEST_CASE("mod_language edge cases") {
  CHECK_THROWS_AS(mod_language(0), input_error);
  Dfa mod1 = mod_language(1);
  CHECK(mod1.n == 1);
  CHECK(run(mod1, parse_word("0101")));
}

TEST_CASE("wfa round trip and evaluation") {
  Dfa mod3 = mod_language(3);
  BooleanWfa wfa = to_wfa(mod3);
  CHECK(is_equivalent(from_wfa(wfa), mod3));
  CHECK(wfa_eval(wfa, Word{}) == run(mod3, Word{}));

  Dfa r = random_dfa(5, 2, 99);
  BooleanWfa rw = to_wfa(r);
  for_each_word(2, 6, [&](std::span<const Symbol> x) { CHECK(wfa_eval(rw, x) == run(r, x)); });

  BooleanWfa bad = wfa;
  bad.matrices[0][1] = 1;  // second true entry in row 0
  CHECK_THROWS_AS(from_wfa(bad), input_error);
}

TEST_CASE("random_dfa determinism and reachability") {
  Dfa a = random_dfa(6, 2, 42);
  Dfa b = random_dfa(6, 2, 42);
  CHECK(a.delta == b.delta);
  CHECK(a.accepting == b.accepting);
  CHECK(minimize(a).n <= 6);
  for (int s = 0; s < a.n; ++s) CHECK(bfs_depths(a)[static_cast<size_t>(s)] >= 0);

  Dfa one = random_dfa(1, 2, 7);
  CHECK(one.n == 1);
}

TEST_CASE("shortest access strings") {
  Dfa mod4 = mod_language(4);
  for (int s = 0; s < 4; ++s) {
    Word w = shortest_access_string(mod4, s);
    CHECK(static_cast<int>(w.size()) == s);
    CHECK(derivative_state(mod4, w) == s);
  }
}

TEST_CASE("dfa text format round trip") {
  Dfa mod3 = mod_language(3);
  Dfa back = parse_dfa_string(serialize_dfa(mod3));
  CHECK(back.n == mod3.n);
  CHECK(back.delta == mod3.delta);
  CHECK(back.accepting == mod3.accepting);

  CHECK_THROWS_AS(parse_dfa_string("dfa 2 2 0\naccepting 0\n0 1\n"), input_error);  // missing row
  CHECK_THROWS_AS(parse_dfa_string("dfa 2 2 5\naccepting 0\n0 1\n1 0\n"), input_error);  // bad initial
}

TEST_CASE("word parsing") {
  CHECK(parse_word("-").empty());
  CHECK(parse_word("010") == Word{0, 1, 0});
  CHECK(format_word(Word{}) == "-");
  CHECK(format_word(Word{1, 0, 1}) == "101");
}
