#include "confdfa/metric.hpp"

#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace confdfa {

namespace {
constexpr long kBlock = 4096;  // sample-index blocks, one RNG stream each
}

LanguageView dfa_view(Dfa dfa) {
  dfa.validate();
  return [d = std::move(dfa)](std::span<const Symbol> x) { return run(d, x); };
}

LanguageView oracle_view(const ConfidenceOracle& oracle) {
  return [o = &oracle](std::span<const Symbol> x) { return o->member(x); };
}

LanguageView derivative_view(LanguageView base, Word prefix) {
  return [base = std::move(base), prefix = std::move(prefix), buf = Word{}](std::span<const Symbol> y) mutable {
    buf.assign(prefix.begin(), prefix.end());
    buf.insert(buf.end(), y.begin(), y.end());
    return base(buf);
  };
}

double hoeffding_radius(long m, double delta) {
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(m)));
}

namespace {

long count_block_disagreements(const ConfidenceOracle& oracle, const LanguageView& a,
                               const LanguageView& b, long count, uint64_t stream_seed) {
  Rng rng(stream_seed);
  Word x;
  long disagree = 0;
  for (long i = 0; i < count; ++i) {
    oracle.sample(rng, x);
    if (a(x) != b(x)) ++disagree;
  }
  return disagree;
}

DistanceEstimate finish_estimate(long disagree, long m, double delta) {
  DistanceEstimate e;
  e.value = static_cast<double>(disagree) / static_cast<double>(m);
  e.radius = hoeffding_radius(m, delta);
  e.samples = m;
  e.confidence = 1.0 - delta;
  return e;
}

}  // namespace

DistanceEstimate estimate_distance_serial(const ConfidenceOracle& oracle, const LanguageView& a,
                                          const LanguageView& b, long m, double delta, uint64_t seed) {
  if (m < 1) throw input_error("estimate_distance: m must be >= 1");
  if (delta <= 0.0 || delta >= 1.0) throw input_error("estimate_distance: delta must be in (0,1)");
  long blocks = (m + kBlock - 1) / kBlock;
  long disagree = 0;
  for (long blk = 0; blk < blocks; ++blk) {
    long count = std::min(kBlock, m - blk * kBlock);
    LanguageView av = a, bv = b;
    disagree += count_block_disagreements(oracle, av, bv, count, mix_seed(seed, static_cast<uint64_t>(blk)));
  }
  return finish_estimate(disagree, m, delta);
}

DistanceEstimate estimate_distance(const ConfidenceOracle& oracle, const LanguageView& a,
                                   const LanguageView& b, long m, double delta, uint64_t seed) {
  if (m < 1) throw input_error("estimate_distance: m must be >= 1");
  if (delta <= 0.0 || delta >= 1.0) throw input_error("estimate_distance: delta must be in (0,1)");
  long blocks = (m + kBlock - 1) / kBlock;
  std::vector<long> partial(static_cast<size_t>(blocks), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long blk = 0; blk < blocks; ++blk) {
    long count = std::min(kBlock, m - blk * kBlock);
    LanguageView av = a, bv = b;  // private copies: views may carry scratch buffers
    partial[static_cast<size_t>(blk)] =
        count_block_disagreements(oracle, av, bv, count, mix_seed(seed, static_cast<uint64_t>(blk)));
  }
  long disagree = std::accumulate(partial.begin(), partial.end(), 0l);
  return finish_estimate(disagree, m, delta);
}

double exact_distance_truncated(const ConfidenceOracle& oracle, const LanguageView& a,
                                const LanguageView& b, int k, uint64_t limit) {
  if (k < 0) throw input_error("exact_distance_truncated: k must be >= 0");
  double total = 0.0;
  for_each_word(
      oracle.alphabet_size(), k,
      [&](std::span<const Symbol> x) {
        if (a(x) != b(x)) total += std::abs(oracle.query(x));
      },
      limit);
  return total;
}

double exact_distance_truncated_parallel(const ConfidenceOracle& oracle, const LanguageView& a,
                                         const LanguageView& b, int k, uint64_t limit) {
  if (k < 0) throw input_error("exact_distance_truncated: k must be >= 0");
  int alpha = oracle.alphabet_size();
  uint64_t total_strings = 0, count = 1;
  for (int j = 0; j <= k; ++j) {
    total_strings += count;
    if (total_strings > limit) throw size_error("exact_distance_truncated: enumeration limit exceeded");
    count *= static_cast<uint64_t>(alpha);
  }
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    uint64_t n = 1;
    for (int i = 0; i < j; ++i) n *= static_cast<uint64_t>(alpha);
    uint64_t blocks = (n + kBlock - 1) / static_cast<uint64_t>(kBlock);
    std::vector<double> partial(blocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int64_t blk = 0; blk < static_cast<int64_t>(blocks); ++blk) {
      LanguageView av = a, bv = b;
      Word x(static_cast<size_t>(j), 0);
      double sum = 0.0;
      uint64_t lo = static_cast<uint64_t>(blk) * kBlock;
      uint64_t hi = std::min(n, lo + kBlock);
      for (uint64_t idx = lo; idx < hi; ++idx) {
        uint64_t v = idx;
        for (int i = j - 1; i >= 0; --i) {
          x[static_cast<size_t>(i)] = static_cast<Symbol>(v % static_cast<uint64_t>(alpha));
          v /= static_cast<uint64_t>(alpha);
        }
        if (av(x) != bv(x)) sum += std::abs(oracle.query(x));
      }
      partial[static_cast<size_t>(blk)] = sum;
    }
    // Fixed-order reduction keeps the result independent of thread count.
    for (double p : partial) total += p;
  }
  return total;
}

Rat exact_distance_dfa_geometric(const Dfa& a, const Dfa& b, const Rat& lambda, int k,
                                 int start_a, int start_b) {
  if (a.alphabet_size != b.alphabet_size)
    throw input_error("exact_distance_dfa_geometric: alphabet mismatch");
  Dfa prod = symmetric_difference(a, b);
  int sa = start_a >= 0 ? start_a : a.initial;
  int sb = start_b >= 0 ? start_b : b.initial;
  prod.initial = sa * b.n + sb;
  using Int = boost::multiprecision::cpp_int;
  std::vector<Int> cur(static_cast<size_t>(prod.n), 0), next(static_cast<size_t>(prod.n));
  cur[static_cast<size_t>(prod.initial)] = 1;
  Rat weight = Rat(1) - lambda;  // weight of any length-0 string
  Rat per_symbol = lambda / prod.alphabet_size;
  Rat total = 0;
  for (int j = 0;; ++j) {
    Int accepted = 0;
    for (int s = 0; s < prod.n; ++s)
      if (prod.accepting[static_cast<size_t>(s)]) accepted += cur[static_cast<size_t>(s)];
    if (accepted != 0) total += weight * Rat(accepted);
    if (j == k) break;
    std::fill(next.begin(), next.end(), Int(0));
    for (int s = 0; s < prod.n; ++s) {
      if (cur[static_cast<size_t>(s)] == 0) continue;
      for (int sym = 0; sym < prod.alphabet_size; ++sym)
        next[static_cast<size_t>(prod.step(s, static_cast<Symbol>(sym)))] += cur[static_cast<size_t>(s)];
    }
    cur.swap(next);
    weight *= per_symbol;
  }
  return total;
}

DistanceEstimate derivative_distance(const ConfidenceOracle& oracle, const Word& u, const Word& v,
                                     long m, double delta, uint64_t seed) {
  LanguageView a = derivative_view(oracle_view(oracle), u);
  LanguageView b = derivative_view(oracle_view(oracle), v);
  return estimate_distance(oracle, a, b, m, delta, seed);
}

Dfa truncated_language_dfa(const ConfidenceOracle& oracle, int k, uint64_t limit) {
  int alpha = oracle.alphabet_size();
  uint64_t nodes = 0, count = 1;
  for (int j = 0; j <= k; ++j) {
    nodes += count;
    if (nodes > limit) throw size_error("truncated_language_dfa: enumeration limit exceeded");
    count *= static_cast<uint64_t>(alpha);
  }
  Dfa d;
  d.n = static_cast<int>(nodes) + 1;  // trie nodes plus one dead state
  d.alphabet_size = alpha;
  d.initial = 0;
  int dead = d.n - 1;
  d.delta.assign(static_cast<size_t>(d.n) * alpha, dead);
  d.accepting.assign(static_cast<size_t>(d.n), 0);
  std::vector<Word> words(static_cast<size_t>(d.n));
  int next_node = 1;
  // Iterative preorder: assign children node ids in symbol order.
  std::vector<int> pending{0};
  words[0] = {};
  for (size_t qi = 0; qi < pending.size(); ++qi) {
    int node = pending[qi];
    const Word& w = words[static_cast<size_t>(node)];
    d.accepting[static_cast<size_t>(node)] = oracle.member(w) ? 1 : 0;
    if (static_cast<int>(w.size()) < k) {
      for (int a = 0; a < alpha; ++a) {
        int child = next_node++;
        d.delta[static_cast<size_t>(node) * alpha + a] = child;
        words[static_cast<size_t>(child)] = w;
        words[static_cast<size_t>(child)].push_back(static_cast<Symbol>(a));
        pending.push_back(child);
      }
    }
  }
  return d;
}

}  // namespace confdfa
