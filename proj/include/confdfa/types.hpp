#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace confdfa {

using Symbol = uint32_t;
using Word = std::vector<Symbol>;

/// Exact rational arithmetic backing all zero-tolerance distance checks.
using Rat = boost::multiprecision::cpp_rational;

/// Parses a word written as a digit string; "-" (or "") is the empty word.
Word parse_word(const std::string& text);

/// Inverse of parse_word; the empty word prints as "-".
std::string format_word(std::span<const Symbol> w);

/// Exact rational value of a decimal literal such as "0.9" or "1e-4".
Rat rational_from_decimal(const std::string& text);

/// Exact rational value of the binary floating-point number x.
Rat rational_from_double(double x);

double to_double(const Rat& r);

Rat rat_pow(const Rat& base, unsigned exp);

/// Decimal rendering with the given number of significant digits.
std::string decimal_string(double x, int significant_digits = 12);

/// splitmix64 mix; used to derive independent per-stream seeds.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

/// Thin RNG wrapper; all randomized operations take one of these explicitly
/// so determinism is caller-controlled.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}

  /// Uniform in [0,1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  uint64_t below(uint64_t n) {
    uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t v;
    do {
      v = eng();
    } while (v >= limit);
    return v % n;
  }
};

class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class size_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calls fn(word) for every word over {0..alphabet-1} of length <= k,
/// in shortlex order. Throws size_error if the count would exceed limit.
template <class F>
void for_each_word(int alphabet_size, int k, F&& fn, uint64_t limit = (1ull << 24)) {
  uint64_t total = 0;
  uint64_t count = 1;
  for (int j = 0; j <= k; ++j) {
    total += count;
    if (total > limit) throw size_error("for_each_word: enumeration limit exceeded");
    count *= static_cast<uint64_t>(alphabet_size);
  }
  Word w;
  for (int j = 0; j <= k; ++j) {
    w.assign(static_cast<size_t>(j), 0);
    while (true) {
      fn(std::span<const Symbol>(w));
      int pos = j - 1;
      while (pos >= 0 && w[static_cast<size_t>(pos)] + 1 == static_cast<Symbol>(alphabet_size)) {
        w[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++w[static_cast<size_t>(pos)];
    }
  }
}

}  // namespace confdfa
