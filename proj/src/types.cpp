#include "confdfa/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace confdfa {

Word parse_word(const std::string& text) {
  if (text.empty() || text == "-") return {};
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') throw input_error("parse_word: expected digit symbols, got '" + text + "'");
    w.push_back(static_cast<Symbol>(c - '0'));
  }
  return w;
}

std::string format_word(std::span<const Symbol> w) {
  if (w.empty()) return "-";
  std::string s;
  s.reserve(w.size());
  for (Symbol a : w) {
    if (a > 9) throw input_error("format_word: symbol out of printable range");
    s.push_back(static_cast<char>('0' + a));
  }
  return s;
}

Rat rational_from_decimal(const std::string& text) {
  std::string t = text;
  bool negative = false;
  size_t pos = 0;
  if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
    negative = t[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  long exponent = 0;
  for (; pos < t.size(); ++pos) {
    char c = t[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      exponent = std::stol(t.substr(pos + 1));
      break;
    } else {
      throw input_error("rational_from_decimal: malformed number '" + text + "'");
    }
  }
  if (!seen_digit) throw input_error("rational_from_decimal: malformed number '" + text + "'");
  // strip leading zeros: cpp_int would read "09" as malformed octal
  size_t first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  boost::multiprecision::cpp_int num(digits);
  boost::multiprecision::cpp_int den = 1;
  long scale = exponent - frac_digits;
  for (long i = 0; i < std::abs(scale); ++i) {
    if (scale > 0)
      num *= 10;
    else
      den *= 10;
  }
  Rat r(num, den);
  return negative ? -r : r;
}

Rat rational_from_double(double x) {
  if (!std::isfinite(x)) throw input_error("rational_from_double: non-finite value");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  boost::multiprecision::cpp_int num(static_cast<long long>(std::ldexp(mant, 53)));
  exp -= 53;
  boost::multiprecision::cpp_int den = 1;
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return Rat(num, den);
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_pow(const Rat& base, unsigned exp) {
  Rat result = 1;
  Rat b = base;
  while (exp) {
    if (exp & 1u) result *= b;
    b *= b;
    exp >>= 1u;
  }
  return result;
}

std::string decimal_string(double x, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, x);
  std::string s(buf);
  // LP/SMT readers dislike exponent notation with '+'; normalize to plain
  // fixed-point when an exponent sneaks in.
  if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
    int decimals = significant_digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(x))));
    decimals = std::min(std::max(decimals, 0), 40);
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    s = buf;
    size_t last = s.find_last_not_of('0');
    if (last != std::string::npos && s[last] == '.') --last;
    s = s.substr(0, last + 1);
  }
  return s;
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace confdfa
