#pragma once

#include <functional>
#include <span>

#include "confdfa/automata.hpp"
#include "confdfa/oracle.hpp"
#include "confdfa/types.hpp"

namespace confdfa {

/// Monte-Carlo distance estimate with a Hoeffding confidence radius.
struct DistanceEstimate {
  double value = 0.0;
  double radius = 0.0;
  long samples = 0;
  double confidence = 0.0;  // 1 - delta
};

/// Total language view: x -> membership. Views are plain callables so they
/// can wrap DFAs, oracle signs, and prefix-composed derivatives alike.
using LanguageView = std::function<bool(std::span<const Symbol>)>;

LanguageView dfa_view(Dfa dfa);
LanguageView oracle_view(const ConfidenceOracle& oracle);  // caller keeps the oracle alive
LanguageView derivative_view(LanguageView base, Word prefix);

double hoeffding_radius(long m, double delta);

/// Exact truncated distance d_Q^{<=k}(a, b) by enumeration of Sigma^{<=k}.
/// Serial reference implementation.
double exact_distance_truncated(const ConfidenceOracle& oracle, const LanguageView& a,
                                const LanguageView& b, int k, uint64_t limit = (1ull << 24));

/// OpenMP kernel; block sums are reduced in a fixed order, so the result is
/// independent of thread count and matches the serial reference up to
/// floating-point regrouping of the weighted sum.
double exact_distance_truncated_parallel(const ConfidenceOracle& oracle, const LanguageView& a,
                                         const LanguageView& b, int k, uint64_t limit = (1ull << 24));

/// Exact rational truncated distance between residual languages of two DFAs
/// under the geometric measure with the given rational lambda, via the
/// symmetric-difference product and a per-length acceptance-count
/// recurrence. start_a / start_b select the derivative (initial states by
/// default).
Rat exact_distance_dfa_geometric(const Dfa& a, const Dfa& b, const Rat& lambda, int k,
                                 int start_a = -1, int start_b = -1);

DistanceEstimate estimate_distance(const ConfidenceOracle& oracle, const LanguageView& a,
                                   const LanguageView& b, long m, double delta, uint64_t seed);

/// Serial reference for estimate_distance; bit-identical results.
DistanceEstimate estimate_distance_serial(const ConfidenceOracle& oracle, const LanguageView& a,
                                          const LanguageView& b, long m, double delta, uint64_t seed);

/// Estimate of d_Q(u^{-1} L_Q, v^{-1} L_Q): suffixes drawn from pi_Q,
/// membership read off oracle signs after prefix composition.
DistanceEstimate derivative_distance(const ConfidenceOracle& oracle, const Word& u, const Word& v,
                                     long m, double delta, uint64_t seed);

/// Trie-determinized DFA accepting exactly L_Q intersected with
/// Sigma^{<=k}; the density witness for DFAs in the metric space.
Dfa truncated_language_dfa(const ConfidenceOracle& oracle, int k, uint64_t limit = (1ull << 24));

}  // namespace confdfa
