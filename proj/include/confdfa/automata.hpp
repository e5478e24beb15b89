#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "confdfa/types.hpp"

namespace confdfa {

/// Explicit deterministic finite automaton. States are dense indices
/// 0..n-1, symbols are 0..alphabet_size-1, delta is total.
struct Dfa {
  int n = 1;
  int alphabet_size = 2;
  std::vector<int> delta;       // n * alphabet_size, row-major by state
  int initial = 0;
  std::vector<char> accepting;  // size n, 0/1

  int step(int state, Symbol a) const { return delta[static_cast<size_t>(state) * alphabet_size + a]; }

  void validate() const;  // throws input_error on malformed tables
};

/// DFA as a weighted automaton over the Boolean semiring: one-hot initial
/// vector, arbitrary final vector, one-hot rows in every symbol matrix.
struct BooleanWfa {
  int n = 1;
  int alphabet_size = 2;
  std::vector<char> alpha_init;                // size n, exactly one 1
  std::vector<char> alpha_final;               // size n
  std::vector<std::vector<char>> matrices;     // [sigma][i*n+j]
};

bool run(const Dfa& dfa, std::span<const Symbol> x);

/// State reached from the initial state by u; its residual language is the
/// Brzozowski derivative u^{-1} L.
int derivative_state(const Dfa& dfa, std::span<const Symbol> u);

/// Language-equivalent DFA with the minimal number of states (partition
/// refinement after trimming unreachable states). States come out in BFS
/// order from the initial state.
Dfa minimize(const Dfa& dfa);

/// Product automaton accepting exactly L_a symmetric-difference L_b.
Dfa symmetric_difference(const Dfa& a, const Dfa& b);

bool accepts_nothing(const Dfa& dfa);
bool is_equivalent(const Dfa& a, const Dfa& b);

/// n-state cycle counting occurrences of symbol 1 mod n; state 0 is initial
/// and the only accepting state.
Dfa mod_language(int n, int alphabet_size = 2);

/// Single-state DFA accepting everything.
Dfa all_accepting(int alphabet_size = 2);

/// Uniform random transitions, each state accepting with probability 1/2,
/// regenerated until every state is reachable from state 0.
Dfa random_dfa(int n, int alphabet_size, uint64_t seed);

BooleanWfa to_wfa(const Dfa& dfa);
Dfa from_wfa(const BooleanWfa& wfa);  // throws input_error if rows are not one-hot
bool wfa_eval(const BooleanWfa& wfa, std::span<const Symbol> x);

/// BFS depth of every state from the initial state; -1 for unreachable.
std::vector<int> bfs_depths(const Dfa& dfa);

/// Shortest access string to the given state (throws if unreachable).
Word shortest_access_string(const Dfa& dfa, int state);

// Text format: line 1 "dfa <n> <alphabet_size> <initial>", line 2
// "accepting <states...>", then n rows of alphabet_size targets.
Dfa parse_dfa(std::istream& in);
Dfa parse_dfa_string(const std::string& text);
std::string serialize_dfa(const Dfa& dfa);
Dfa load_dfa_file(const std::string& path);
void save_dfa_file(const Dfa& dfa, const std::string& path);

}  // namespace confdfa
