#pragma once

#include <string>
#include <vector>

#include "confdfa/automata.hpp"
#include "confdfa/metric.hpp"

namespace confdfa {

struct LemmaReport {
  int trials = 0;
  int violations = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return violations == 0; }
};

/// Derivative stability: for random L1, L2 and words u, v,
///   d<=k(u^-1 L2, v^-1 L2)
///     <= (c(|u|) + c(|v|)) (d<=k(L1, L2) + tail) + d<=k(u^-1 L1, v^-1 L1) + tail
/// with c(l) = (|Sigma|/lambda)^l and tail = lambda^(k+1), the mass above
/// the truncation. All distances are exact rationals; any strict violation
/// is recorded.
LemmaReport check_lemma1(int trials, int k, const Rat& lambda, int max_states, int alphabet_size,
                         int max_word_len, uint64_t seed);

/// Single-edit sensitivity: A' is A with one transition (t, sigma)
/// redirected from s to s'; v is a shortest access string of t. Then
///   d<=k(A, A') <= C (d<=k(L_s, L'_s') + tail) + 0,  C = lambda^(|v|+1) / ((1-lambda) |Sigma|)
/// where L_s is A's language from s and L'_s' is A''s language from s'.
LemmaReport check_lemma2(int trials, int k, const Rat& lambda, int max_states, int alphabet_size,
                         uint64_t seed);

}  // namespace confdfa
