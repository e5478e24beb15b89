#include "confdfa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace confdfa {

GeometricOracle::GeometricOracle(Dfa base, const Rat& lambda)
    : base_(std::move(base)), lambda_(lambda) {
  if (lambda_ <= 0 || lambda_ >= 1) throw input_error("geometric_oracle: lambda must be in (0,1)");
  base_.validate();
  lambda_d_ = to_double(lambda_);
  log_lambda_ = std::log(lambda_d_);
}

double GeometricOracle::weight_of_length(int len) const {
  return (1.0 - lambda_d_) * std::pow(lambda_d_ / base_.alphabet_size, len);
}

Rat GeometricOracle::weight_of_length_exact(int len) const {
  return (Rat(1) - lambda_) * rat_pow(lambda_ / base_.alphabet_size, static_cast<unsigned>(len));
}

double GeometricOracle::query(std::span<const Symbol> x) const {
  double w = weight_of_length(static_cast<int>(x.size()));
  return run(base_, x) ? w : -w;
}

std::optional<Rat> GeometricOracle::query_rational(std::span<const Symbol> x) const {
  Rat w = weight_of_length_exact(static_cast<int>(x.size()));
  return run(base_, x) ? w : -w;
}

void GeometricOracle::sample(Rng& rng, Word& out) const {
  // Length ~ Geometric(1 - lambda) by inversion, then uniform symbols.
  double u = rng.uniform01();
  if (u <= 0.0) u = 0x1.0p-53;
  int len = static_cast<int>(std::floor(std::log(u) / log_lambda_));
  out.clear();
  out.reserve(static_cast<size_t>(len));
  for (int i = 0; i < len; ++i)
    out.push_back(static_cast<Symbol>(rng.below(static_cast<uint64_t>(base_.alphabet_size))));
}

double GeometricOracle::length_cdf(int k) const {
  if (k < 0) return 0.0;
  return 1.0 - std::pow(lambda_d_, k + 1);
}

std::optional<double> GeometricOracle::prefix_mass_scale(int len) const {
  // Mass of all continuations of a fixed prefix of length len:
  // sum_y (1-l) l^{len+|y|} S^{-(len+|y|)} = (l/S)^len.
  return std::pow(lambda_d_ / base_.alphabet_size, len);
}

PerturbedOracle::PerturbedOracle(std::shared_ptr<const ConfidenceOracle> inner, std::set<Word> flipped)
    : inner_(std::move(inner)), flipped_(std::move(flipped)) {
  spent_ = 0.0;
  for (const Word& w : flipped_) spent_ += std::abs(inner_->query(w));
}

double PerturbedOracle::query(std::span<const Symbol> x) const {
  double q = inner_->query(x);
  if (flipped_.count(Word(x.begin(), x.end()))) return -q;
  return q;
}

std::optional<Rat> PerturbedOracle::query_rational(std::span<const Symbol> x) const {
  auto q = inner_->query_rational(x);
  if (q && flipped_.count(Word(x.begin(), x.end()))) return -*q;
  return q;
}

PerturbedOracle perturb(std::shared_ptr<const ConfidenceOracle> inner, double eta,
                        PerturbStrategy strategy, uint64_t seed) {
  if (eta < 0.0 || eta >= 1.0) throw input_error("perturb: eta must be in [0,1)");
  std::set<Word> flipped;
  double spent = 0.0;
  if (eta > 0.0) {
    if (strategy == PerturbStrategy::RandomSampled) {
      Rng rng(mix_seed(seed, 0xf11bull));
      Word w;
      const int attempts = 4096;
      for (int i = 0; i < attempts; ++i) {
        inner->sample(rng, w);
        if (flipped.count(w)) continue;
        double mass = std::abs(inner->query(w));
        if (mass <= 0.0) continue;
        if (spent + mass <= eta) {
          flipped.insert(w);
          spent += mass;
        }
      }
    } else {
      // Greedy shortlex scan; caps bound the scan, not the budget.
      const int max_len = 64;
      const uint64_t max_per_len = 1u << 16;
      int alpha = inner->alphabet_size();
      bool full = false;
      for (int len = 0; len <= max_len && !full; ++len) {
        uint64_t count = 1;
        for (int i = 0; i < len && count <= max_per_len; ++i) count *= static_cast<uint64_t>(alpha);
        if (count > max_per_len) break;
        Word w(static_cast<size_t>(len), 0);
        for (uint64_t idx = 0; idx < count; ++idx) {
          uint64_t v = idx;
          for (int i = len - 1; i >= 0; --i) {
            w[static_cast<size_t>(i)] = static_cast<Symbol>(v % alpha);
            v /= static_cast<uint64_t>(alpha);
          }
          double mass = std::abs(inner->query(w));
          if (mass > 0.0 && spent + mass <= eta) {
            flipped.insert(w);
            spent += mass;
          }
        }
      }
      (void)full;
    }
  }
  return PerturbedOracle(std::move(inner), std::move(flipped));
}

EmpiricalOracle::EmpiricalOracle(const std::vector<std::pair<Word, int>>& samples, int alphabet_size)
    : alphabet_(alphabet_size), max_len_(0) {
  if (samples.empty()) throw input_error("empirical_oracle: empty sample list");
  std::map<Word, std::pair<long, long>> counts;  // x -> (positives, total)
  for (const auto& [w, label] : samples) {
    if (label != 1 && label != -1) throw input_error("empirical_oracle: label must be +1 or -1");
    for (Symbol a : w)
      if (a >= static_cast<Symbol>(alphabet_)) throw input_error("empirical_oracle: symbol out of range");
    auto& c = counts[w];
    if (label == 1) ++c.first;
    ++c.second;
  }
  long total = static_cast<long>(samples.size());
  // Q(x) proportional to freq(x) * (2 phat - 1) = (pos - neg) / N.
  Rat mass = 0;
  for (const auto& [w, c] : counts) {
    Rat score = Rat(2 * c.first - c.second, total);
    table_[w] = score;
    mass += abs(score);
  }
  if (mass == 0) throw input_error("empirical_oracle: all confidences cancel");
  double acc = 0.0;
  for (auto& [w, score] : table_) {
    score /= mass;
    if (score != 0) {
      support_.push_back(&w);
      acc += to_double(abs(score));
      cumulative_.push_back(acc);
      max_len_ = std::max(max_len_, static_cast<int>(w.size()));
    }
  }
  if (!cumulative_.empty()) cumulative_.back() = 1.0;
}

double EmpiricalOracle::query(std::span<const Symbol> x) const {
  auto it = table_.find(Word(x.begin(), x.end()));
  return it == table_.end() ? 0.0 : to_double(it->second);
}

std::optional<Rat> EmpiricalOracle::query_rational(std::span<const Symbol> x) const {
  auto it = table_.find(Word(x.begin(), x.end()));
  return it == table_.end() ? Rat(0) : it->second;
}

void EmpiricalOracle::sample(Rng& rng, Word& out) const {
  double u = rng.uniform01();
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  size_t idx = std::min(static_cast<size_t>(it - cumulative_.begin()), support_.size() - 1);
  out = *support_[idx];
}

double EmpiricalOracle::length_cdf(int k) const {
  if (k < 0) return 0.0;
  Rat mass = 0;
  for (const Word* w : support_)
    if (static_cast<int>(w->size()) <= k) mass += abs(table_.at(*w));
  return to_double(mass);
}

std::vector<std::pair<Word, int>> load_labeled_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open sample CSV: " + path);
  std::vector<std::pair<Word, int>> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    size_t comma = line.rfind(',');
    if (comma == std::string::npos) throw input_error("sample CSV: missing label in line '" + line + "'");
    std::string ws = line.substr(0, comma);
    std::string ls = line.substr(comma + 1);
    int label;
    if (ls == "+1" || ls == "1")
      label = 1;
    else if (ls == "-1")
      label = -1;
    else
      throw input_error("sample CSV: label must be +1 or -1, got '" + ls + "'");
    samples.emplace_back(parse_word(ws), label);
  }
  return samples;
}

int truncation_length(const ConfidenceOracle& oracle, double eta) {
  if (eta <= 0.0 || eta >= 1.0) throw input_error("truncation_length: eta must be in (0,1)");
  int support = oracle.max_support_length();
  for (int k = 0;; ++k) {
    if (1.0 - oracle.length_cdf(k) <= eta) return k;
    if (support >= 0 && k >= support) return support;
    if (k > 1'000'000) throw input_error("truncation_length: did not converge");
  }
}

}  // namespace confdfa
