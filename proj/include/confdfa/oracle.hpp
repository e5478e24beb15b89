#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "confdfa/automata.hpp"
#include "confdfa/types.hpp"

namespace confdfa {

/// Confidence oracle Q: Sigma* -> [-1,1]. The sign claims membership, the
/// magnitude is confidence. All concrete oracles here are normalized so the
/// magnitudes form a probability distribution over Sigma*.
class ConfidenceOracle {
 public:
  virtual ~ConfidenceOracle() = default;

  virtual int alphabet_size() const = 0;
  virtual double query(std::span<const Symbol> x) const = 0;
  virtual void sample(Rng& rng, Word& out) const = 0;

  /// Pr[|x| <= k] under the |Q| distribution.
  virtual double length_cdf(int k) const = 0;

  /// Largest string length carrying positive mass, or -1 if unbounded.
  virtual int max_support_length() const { return -1; }

  /// Exact rational Q(x), when the oracle's definition permits one.
  virtual std::optional<Rat> query_rational(std::span<const Symbol> x) const { return std::nullopt; }

  /// Tight bound c with pi_Q({x : x extends any fixed prefix of length
  /// len}) <= c, when the measure factors over prefixes. Used to derive
  /// derivative-distance scaling constants.
  virtual std::optional<double> prefix_mass_scale(int len) const { return std::nullopt; }

  /// Membership in L_Q = {x : Q(x) >= 0}.
  bool member(std::span<const Symbol> x) const { return query(x) >= 0.0; }

  Word sample(Rng& rng) const {
    Word w;
    sample(rng, w);
    return w;
  }
};

/// |Q(x)| = (1-lambda) * lambda^{|x|} * |Sigma|^{-|x|}, sign taken from a
/// ground-truth DFA. Total mass is exactly 1 for any lambda in (0,1).
class GeometricOracle : public ConfidenceOracle {
 public:
  GeometricOracle(Dfa base, const Rat& lambda);
  GeometricOracle(Dfa base, double lambda) : GeometricOracle(std::move(base), rational_from_double(lambda)) {}

  int alphabet_size() const override { return base_.alphabet_size; }
  double query(std::span<const Symbol> x) const override;
  void sample(Rng& rng, Word& out) const override;
  double length_cdf(int k) const override;
  std::optional<Rat> query_rational(std::span<const Symbol> x) const override;
  std::optional<double> prefix_mass_scale(int len) const override;

  const Dfa& base() const { return base_; }
  const Rat& lambda() const { return lambda_; }
  double lambda_double() const { return lambda_d_; }

  /// |Q(x)| for any string of the given length.
  double weight_of_length(int len) const;
  Rat weight_of_length_exact(int len) const;

 private:
  Dfa base_;
  Rat lambda_;
  double lambda_d_;
  double log_lambda_;
};

enum class PerturbStrategy { RandomSampled, ShortestFirst };

/// Wraps an oracle and negates the sign of Q on a finite flipped set; the
/// magnitude distribution is untouched, so the total sign-flip mass is the
/// exact oracle distance between inner and perturbed languages.
class PerturbedOracle : public ConfidenceOracle {
 public:
  PerturbedOracle(std::shared_ptr<const ConfidenceOracle> inner, std::set<Word> flipped);

  int alphabet_size() const override { return inner_->alphabet_size(); }
  double query(std::span<const Symbol> x) const override;
  void sample(Rng& rng, Word& out) const override { inner_->sample(rng, out); }
  double length_cdf(int k) const override { return inner_->length_cdf(k); }
  int max_support_length() const override { return inner_->max_support_length(); }
  std::optional<Rat> query_rational(std::span<const Symbol> x) const override;
  std::optional<double> prefix_mass_scale(int len) const override { return inner_->prefix_mass_scale(len); }

  const std::set<Word>& flipped() const { return flipped_; }
  double spent_budget() const { return spent_; }
  const ConfidenceOracle& inner() const { return *inner_; }

 private:
  std::shared_ptr<const ConfidenceOracle> inner_;
  std::set<Word> flipped_;
  double spent_;
};

PerturbedOracle perturb(std::shared_ptr<const ConfidenceOracle> inner, double eta,
                        PerturbStrategy strategy, uint64_t seed);

/// Finite-support oracle built from labeled samples: Q(x) is the sample
/// frequency of x times (2 * phat[label=+1 | x] - 1), globally normalized.
class EmpiricalOracle : public ConfidenceOracle {
 public:
  /// samples: (string, label) with label in {-1, +1}.
  EmpiricalOracle(const std::vector<std::pair<Word, int>>& samples, int alphabet_size);

  int alphabet_size() const override { return alphabet_; }
  double query(std::span<const Symbol> x) const override;
  void sample(Rng& rng, Word& out) const override;
  double length_cdf(int k) const override;
  int max_support_length() const override { return max_len_; }
  std::optional<Rat> query_rational(std::span<const Symbol> x) const override;

  const std::map<Word, Rat>& table() const { return table_; }  // signed exact scores

 private:
  int alphabet_;
  int max_len_;
  std::map<Word, Rat> table_;          // x -> Q(x), exact, sum |.| = 1
  std::vector<const Word*> support_;   // nonzero entries, map order
  std::vector<double> cumulative_;     // sampling CDF over support_
};

/// Load "string,label" CSV lines (label +1/-1) for EmpiricalOracle.
std::vector<std::pair<Word, int>> load_labeled_csv(const std::string& path);

/// Smallest k with 1 - length_cdf(k) <= eta; clamps to the support length
/// for finite oracles.
int truncation_length(const ConfidenceOracle& oracle, double eta);

}  // namespace confdfa
