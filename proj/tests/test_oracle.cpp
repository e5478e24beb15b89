#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <memory>

#include "confdfa/oracle.hpp"

using namespace confdfa;

TEST_CASE("geometric oracle basics") {
  GeometricOracle q(mod_language(2), 0.9);
  CHECK(q.alphabet_size() == 2);
  CHECK(q.length_cdf(0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(q.query(Word{}) == doctest::Approx(0.1));          // epsilon accepted by mod2
  GeometricOracle qr(mod_language(2), rational_from_decimal("0.9"));
  CHECK(*qr.query_rational(Word{}) == Rat(1) / 10);
  Word one{1};
  CHECK(qr.query(one) < 0.0);  // "1" rejected: sign negative
  CHECK(*qr.query_rational(one) == -Rat(9) / 200);  // -(1/10)(9/10)(1/2)

  CHECK(q.length_cdf(131) >= 1.0 - 1e-6);
  CHECK(q.length_cdf(130) < 1.0 - 1e-6);

  CHECK_THROWS_AS(GeometricOracle(mod_language(2), 1.0), input_error);
  CHECK_THROWS_AS(GeometricOracle(mod_language(2), 0.0), input_error);
}

TEST_CASE("geometric normalization: truncated mass equals the length cdf") {
  GeometricOracle q(mod_language(3), 0.9);
  for (int k = 0; k <= 10; ++k) {
    double total = 0.0;
    for_each_word(2, k, [&](std::span<const Symbol> x) { total += std::abs(q.query(x)); });
    CHECK(std::abs(total - q.length_cdf(k)) < 1e-12);
  }
}

TEST_CASE("geometric signs follow the base language") {
  Dfa base = random_dfa(4, 2, 17);
  GeometricOracle q(base, 0.9);
  for_each_word(2, 8, [&](std::span<const Symbol> x) {
    CHECK((q.query(x) >= 0.0) == run(base, x));
    CHECK(q.member(x) == run(base, x));
  });
}

TEST_CASE("geometric sampling law (chi-square, binned lengths)") {
  GeometricOracle q(mod_language(2), 0.9);
  Rng rng(123);
  const long m = 100000;
  const int bins = 6;  // lengths 0..4 and >=5
  std::vector<long> observed(bins, 0);
  Word w;
  for (long i = 0; i < m; ++i) {
    q.sample(rng, w);
    observed[std::min<size_t>(w.size(), bins - 1)]++;
  }
  double chi2 = 0.0;
  for (int b = 0; b < bins; ++b) {
    double p = b < bins - 1 ? 0.1 * std::pow(0.9, b) : std::pow(0.9, bins - 1);
    double expected = p * static_cast<double>(m);
    chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
  }
  CHECK(chi2 < 15.086);  // chi-square critical value, df=5, significance 0.01
}

TEST_CASE("truncation length") {
  GeometricOracle q(mod_language(2), 0.9);
  CHECK(truncation_length(q, 1e-6) == 131);
  CHECK(truncation_length(q, 1.0 - q.length_cdf(0)) == 0);
  CHECK_THROWS_AS(truncation_length(q, 0.0), input_error);
}

TEST_CASE("perturbed oracle") {
  auto inner = std::make_shared<GeometricOracle>(mod_language(2), 0.9);

  SUBCASE("eta = 0 is the identity") {
    PerturbedOracle p = perturb(inner, 0.0, PerturbStrategy::RandomSampled, 1);
    CHECK(p.flipped().empty());
    for_each_word(2, 8, [&](std::span<const Symbol> x) { CHECK(p.query(x) == inner->query(x)); });
  }

  SUBCASE("budget respected and distance equals spent budget") {
    for (auto strategy : {PerturbStrategy::RandomSampled, PerturbStrategy::ShortestFirst}) {
      PerturbedOracle p = perturb(inner, 0.01, strategy, 7);
      CHECK(p.spent_budget() <= 0.01);
      // the flipped set is the exact symmetric difference of the two sign
      // languages, and its mass is the exact oracle distance
      double mass = 0.0;
      for (const Word& x : p.flipped()) {
        CHECK(p.member(x) != inner->member(x));
        mass += std::abs(inner->query(x));
      }
      CHECK(mass == doctest::Approx(p.spent_budget()).epsilon(1e-9));
      for_each_word(2, 10, [&](std::span<const Symbol> x) {
        bool flipped = p.flipped().count(Word(x.begin(), x.end())) > 0;
        CHECK((p.member(x) != inner->member(x)) == flipped);
      });
    }
  }

  SUBCASE("eta >= 1 rejected") {
    CHECK_THROWS_AS(perturb(inner, 1.0, PerturbStrategy::RandomSampled, 1), input_error);
  }
}

TEST_CASE("empirical oracle") {
  SUBCASE("single positive sample") {
    EmpiricalOracle q({{parse_word("01"), 1}}, 2);
    CHECK(q.query(parse_word("01")) == doctest::Approx(1.0));
    CHECK(q.query(parse_word("0")) == 0.0);
    CHECK(q.max_support_length() == 2);
  }

  SUBCASE("cancelling labels give zero confidence") {
    EmpiricalOracle q({{parse_word("0"), 1}, {parse_word("0"), -1}, {parse_word("1"), 1}}, 2);
    CHECK(q.query(parse_word("0")) == 0.0);
    CHECK(q.query(parse_word("1")) == doctest::Approx(1.0));  // all surviving mass
  }

  SUBCASE("frequency ratio") {
    std::vector<std::pair<Word, int>> samples(3, {parse_word("0"), 1});
    samples.push_back({parse_word("1"), -1});
    EmpiricalOracle q(samples, 2);
    CHECK(q.query(parse_word("0")) / -q.query(parse_word("1")) == doctest::Approx(3.0));
    CHECK(q.query(parse_word("0")) > 0);
    CHECK(q.query(parse_word("1")) < 0);
  }

  SUBCASE("empty and degenerate inputs throw") {
    std::vector<std::pair<Word, int>> empty;
    CHECK_THROWS_AS(EmpiricalOracle(empty, 2), input_error);
    std::vector<std::pair<Word, int>> cancelled{{parse_word("0"), 1}, {parse_word("0"), -1}};
    CHECK_THROWS_AS(EmpiricalOracle(cancelled, 2), input_error);
  }

  SUBCASE("samples stay on the support and truncation respects it") {
    EmpiricalOracle q({{parse_word("00000"), 1}, {parse_word("1"), -1}}, 2);
    Rng rng(5);
    Word w;
    for (int i = 0; i < 200; ++i) {
      q.sample(rng, w);
      CHECK(std::abs(q.query(w)) > 0.0);
    }
    CHECK(truncation_length(q, 1e-9) <= 5);
  }
}

TEST_CASE("labeled csv loading") {
  std::string path = "oracle_test_samples.csv";
  std::ofstream(path) << "01,+1\n1,-1\n01,+1\n";
  auto samples = load_labeled_csv(path);
  REQUIRE(samples.size() == 3);
  CHECK(samples[0].first == parse_word("01"));
  CHECK(samples[0].second == 1);
  CHECK(samples[1].second == -1);
  EmpiricalOracle q(samples, 2);
  CHECK(q.query(parse_word("01")) > 0.0);
  std::remove(path.c_str());
}
