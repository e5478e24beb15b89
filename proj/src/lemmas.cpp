#include "confdfa/lemmas.hpp"

#include <sstream>

namespace confdfa {

namespace {

Word random_word(Rng& rng, int alphabet_size, int max_len) {
  Word w(rng.below(static_cast<uint64_t>(max_len) + 1));
  for (auto& s : w) s = static_cast<Symbol>(rng.below(static_cast<uint64_t>(alphabet_size)));
  return w;
}

Rat scale_c(int len, const Rat& lambda, int alphabet_size) {
  return rat_pow(Rat(alphabet_size) / lambda, len);
}

}  // namespace

LemmaReport check_lemma1(int trials, int k, const Rat& lambda, int max_states, int alphabet_size,
                         int max_word_len, uint64_t seed) {
  LemmaReport report;
  report.trials = trials;
  const Rat tail = rat_pow(lambda, k + 1);
  for (int t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<uint64_t>(t)));
    int n1 = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_states)));
    int n2 = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_states)));
    Dfa l1 = random_dfa(n1, alphabet_size, rng.eng());
    Dfa l2 = random_dfa(n2, alphabet_size, rng.eng());
    Word u = random_word(rng, alphabet_size, max_word_len);
    Word v = random_word(rng, alphabet_size, max_word_len);
    int su1 = derivative_state(l1, u), sv1 = derivative_state(l1, v);
    int su2 = derivative_state(l2, u), sv2 = derivative_state(l2, v);

    Rat lhs = exact_distance_dfa_geometric(l2, l2, lambda, k, su2, sv2);
    Rat d12 = exact_distance_dfa_geometric(l1, l2, lambda, k);
    Rat duv1 = exact_distance_dfa_geometric(l1, l1, lambda, k, su1, sv1);
    Rat rhs = (scale_c(static_cast<int>(u.size()), lambda, alphabet_size) +
               scale_c(static_cast<int>(v.size()), lambda, alphabet_size)) *
                  (d12 + tail) +
              duv1 + tail;
    if (lhs > rhs) {
      ++report.violations;
      std::ostringstream ce;
      ce << "lemma1 trial " << t << ": u=" << format_word(u) << " v=" << format_word(v)
         << " lhs=" << lhs << " rhs=" << rhs << "\nL1:\n"
         << serialize_dfa(l1) << "L2:\n" << serialize_dfa(l2);
      report.counterexamples.push_back(ce.str());
    }
  }
  return report;
}

LemmaReport check_lemma2(int trials, int k, const Rat& lambda, int max_states, int alphabet_size,
                         uint64_t seed) {
  LemmaReport report;
  report.trials = trials;
  const Rat tail = rat_pow(lambda, k + 1);
  for (int t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<uint64_t>(t)));
    int n = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(max_states - 1)));
    Dfa a = random_dfa(n, alphabet_size, rng.eng());
    n = a.n;  // trimming may shrink the table
    if (n < 2) continue;  // no alternative target exists: the edit is a no-op
    int tstate = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    Symbol sym = static_cast<Symbol>(rng.below(static_cast<uint64_t>(alphabet_size)));
    int s = a.step(tstate, sym);
    int sprime = static_cast<int>(rng.below(static_cast<uint64_t>(n - 1)));
    if (sprime >= s) ++sprime;  // uniform over states other than s
    Dfa aprime = a;
    aprime.delta[static_cast<size_t>(tstate) * alphabet_size + sym] = sprime;

    Word v = shortest_access_string(a, tstate);
    Rat c = rat_pow(lambda, static_cast<int>(v.size()) + 1) / ((Rat(1) - lambda) * alphabet_size);
    Rat lhs = exact_distance_dfa_geometric(a, aprime, lambda, k);
    Rat deriv = exact_distance_dfa_geometric(a, aprime, lambda, k, s, sprime);
    Rat rhs = c * (deriv + tail);
    if (lhs > rhs) {
      ++report.violations;
      std::ostringstream ce;
      ce << "lemma2 trial " << t << ": t=" << tstate << " sigma=" << sym << " s=" << s
         << " s'=" << sprime << " v=" << format_word(v) << " lhs=" << lhs << " rhs=" << rhs << "\nA:\n"
         << serialize_dfa(a);
      report.counterexamples.push_back(ce.str());
    }
  }
  return report;
}

}  // namespace confdfa
