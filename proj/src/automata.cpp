#include "confdfa/automata.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace confdfa {

void Dfa::validate() const {
  if (n < 1 || alphabet_size < 1) throw input_error("dfa: n and alphabet_size must be >= 1");
  if (delta.size() != static_cast<size_t>(n) * alphabet_size)
    throw input_error("dfa: transition table has wrong size");
  for (int t : delta)
    if (t < 0 || t >= n) throw input_error("dfa: transition target out of range");
  if (initial < 0 || initial >= n) throw input_error("dfa: initial state out of range");
  if (accepting.size() != static_cast<size_t>(n)) throw input_error("dfa: accepting vector has wrong size");
}

bool run(const Dfa& dfa, std::span<const Symbol> x) {
  return dfa.accepting[static_cast<size_t>(derivative_state(dfa, x))] != 0;
}

int derivative_state(const Dfa& dfa, std::span<const Symbol> u) {
  int s = dfa.initial;
  for (Symbol a : u) {
    if (a >= static_cast<Symbol>(dfa.alphabet_size)) throw input_error("run: symbol out of range");
    s = dfa.step(s, a);
  }
  return s;
}

std::vector<int> bfs_depths(const Dfa& dfa) {
  std::vector<int> depth(static_cast<size_t>(dfa.n), -1);
  std::deque<int> queue{dfa.initial};
  depth[static_cast<size_t>(dfa.initial)] = 0;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int a = 0; a < dfa.alphabet_size; ++a) {
      int t = dfa.step(s, static_cast<Symbol>(a));
      if (depth[static_cast<size_t>(t)] < 0) {
        depth[static_cast<size_t>(t)] = depth[static_cast<size_t>(s)] + 1;
        queue.push_back(t);
      }
    }
  }
  return depth;
}

Word shortest_access_string(const Dfa& dfa, int state) {
  std::vector<int> prev_state(static_cast<size_t>(dfa.n), -1);
  std::vector<Symbol> prev_sym(static_cast<size_t>(dfa.n), 0);
  std::vector<char> seen(static_cast<size_t>(dfa.n), 0);
  std::deque<int> queue{dfa.initial};
  seen[static_cast<size_t>(dfa.initial)] = 1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (s == state) break;
    for (int a = 0; a < dfa.alphabet_size; ++a) {
      int t = dfa.step(s, static_cast<Symbol>(a));
      if (!seen[static_cast<size_t>(t)]) {
        seen[static_cast<size_t>(t)] = 1;
        prev_state[static_cast<size_t>(t)] = s;
        prev_sym[static_cast<size_t>(t)] = static_cast<Symbol>(a);
        queue.push_back(t);
      }
    }
  }
  if (!seen[static_cast<size_t>(state)]) throw input_error("shortest_access_string: state unreachable");
  Word w;
  for (int s = state; s != dfa.initial; s = prev_state[static_cast<size_t>(s)])
    w.push_back(prev_sym[static_cast<size_t>(s)]);
  std::reverse(w.begin(), w.end());
  return w;
}

namespace {

// Trim unreachable states and relabel the rest in BFS discovery order.
Dfa trim_reachable(const Dfa& dfa) {
  std::vector<int> depth = bfs_depths(dfa);
  std::vector<int> relabel(static_cast<size_t>(dfa.n), -1);
  // BFS order: stable by (depth, original index) via a second traversal.
  int next = 0;
  std::deque<int> queue{dfa.initial};
  std::vector<char> seen(static_cast<size_t>(dfa.n), 0);
  seen[static_cast<size_t>(dfa.initial)] = 1;
  std::vector<int> order;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    relabel[static_cast<size_t>(s)] = next++;
    order.push_back(s);
    for (int a = 0; a < dfa.alphabet_size; ++a) {
      int t = dfa.step(s, static_cast<Symbol>(a));
      if (!seen[static_cast<size_t>(t)]) {
        seen[static_cast<size_t>(t)] = 1;
        queue.push_back(t);
      }
    }
  }
  Dfa out;
  out.n = next;
  out.alphabet_size = dfa.alphabet_size;
  out.initial = 0;
  out.delta.resize(static_cast<size_t>(next) * dfa.alphabet_size);
  out.accepting.resize(static_cast<size_t>(next));
  for (int s : order) {
    int r = relabel[static_cast<size_t>(s)];
    out.accepting[static_cast<size_t>(r)] = dfa.accepting[static_cast<size_t>(s)];
    for (int a = 0; a < dfa.alphabet_size; ++a)
      out.delta[static_cast<size_t>(r) * dfa.alphabet_size + a] =
          relabel[static_cast<size_t>(dfa.step(s, static_cast<Symbol>(a)))];
  }
  return out;
}

}  // namespace

Dfa minimize(const Dfa& dfa) {
  Dfa d = trim_reachable(dfa);
  // Moore-style partition refinement: split classes by (accepting, successor
  // class per symbol) signatures until a fixpoint.
  std::vector<int> cls(static_cast<size_t>(d.n));
  for (int s = 0; s < d.n; ++s) cls[static_cast<size_t>(s)] = d.accepting[static_cast<size_t>(s)] ? 1 : 0;
  int classes = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_to_cls;
    std::vector<int> next_cls(static_cast<size_t>(d.n));
    for (int s = 0; s < d.n; ++s) {
      std::vector<int> sig;
      sig.push_back(cls[static_cast<size_t>(s)]);
      for (int a = 0; a < d.alphabet_size; ++a)
        sig.push_back(cls[static_cast<size_t>(d.step(s, static_cast<Symbol>(a)))]);
      auto [it, inserted] = sig_to_cls.emplace(std::move(sig), static_cast<int>(sig_to_cls.size()));
      next_cls[static_cast<size_t>(s)] = it->second;
    }
    int next_classes = static_cast<int>(sig_to_cls.size());
    bool stable = next_classes == classes;
    classes = next_classes;
    cls = std::move(next_cls);
    if (stable) break;
  }
  Dfa out;
  out.n = classes;
  out.alphabet_size = d.alphabet_size;
  out.delta.assign(static_cast<size_t>(classes) * d.alphabet_size, 0);
  out.accepting.assign(static_cast<size_t>(classes), 0);
  out.initial = cls[static_cast<size_t>(d.initial)];
  for (int s = 0; s < d.n; ++s) {
    int c = cls[static_cast<size_t>(s)];
    out.accepting[static_cast<size_t>(c)] = d.accepting[static_cast<size_t>(s)];
    for (int a = 0; a < d.alphabet_size; ++a)
      out.delta[static_cast<size_t>(c) * d.alphabet_size + a] =
          cls[static_cast<size_t>(d.step(s, static_cast<Symbol>(a)))];
  }
  return trim_reachable(out);
}

Dfa symmetric_difference(const Dfa& a, const Dfa& b) {
  if (a.alphabet_size != b.alphabet_size)
    throw input_error("symmetric_difference: alphabet mismatch");
  Dfa out;
  out.n = a.n * b.n;
  out.alphabet_size = a.alphabet_size;
  out.initial = a.initial * b.n + b.initial;
  out.delta.resize(static_cast<size_t>(out.n) * out.alphabet_size);
  out.accepting.resize(static_cast<size_t>(out.n));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) {
      int s = i * b.n + j;
      out.accepting[static_cast<size_t>(s)] =
          (a.accepting[static_cast<size_t>(i)] != b.accepting[static_cast<size_t>(j)]) ? 1 : 0;
      for (int sym = 0; sym < out.alphabet_size; ++sym)
        out.delta[static_cast<size_t>(s) * out.alphabet_size + sym] =
            a.step(i, static_cast<Symbol>(sym)) * b.n + b.step(j, static_cast<Symbol>(sym));
    }
  return out;
}

bool accepts_nothing(const Dfa& dfa) {
  std::vector<int> depth = bfs_depths(dfa);
  for (int s = 0; s < dfa.n; ++s)
    if (depth[static_cast<size_t>(s)] >= 0 && dfa.accepting[static_cast<size_t>(s)]) return false;
  return true;
}

bool is_equivalent(const Dfa& a, const Dfa& b) {
  return accepts_nothing(symmetric_difference(a, b));
}

Dfa mod_language(int n, int alphabet_size) {
  if (n < 1) throw input_error("mod_language: n must be >= 1");
  if (alphabet_size < 2) throw input_error("mod_language: alphabet must contain symbol 1");
  Dfa d;
  d.n = n;
  d.alphabet_size = alphabet_size;
  d.initial = 0;
  d.delta.resize(static_cast<size_t>(n) * alphabet_size);
  d.accepting.assign(static_cast<size_t>(n), 0);
  d.accepting[0] = 1;
  for (int s = 0; s < n; ++s)
    for (int a = 0; a < alphabet_size; ++a)
      d.delta[static_cast<size_t>(s) * alphabet_size + a] = (a == 1) ? (s + 1) % n : s;
  return d;
}

Dfa all_accepting(int alphabet_size) {
  Dfa d;
  d.n = 1;
  d.alphabet_size = alphabet_size;
  d.initial = 0;
  d.delta.assign(static_cast<size_t>(alphabet_size), 0);
  d.accepting = {1};
  return d;
}

Dfa random_dfa(int n, int alphabet_size, uint64_t seed) {
  if (n < 1 || alphabet_size < 1) throw input_error("random_dfa: bad parameters");
  for (uint64_t attempt = 0;; ++attempt) {
    Rng rng(mix_seed(seed, attempt));
    Dfa d;
    d.n = n;
    d.alphabet_size = alphabet_size;
    d.initial = 0;
    d.delta.resize(static_cast<size_t>(n) * alphabet_size);
    d.accepting.resize(static_cast<size_t>(n));
    for (auto& t : d.delta) t = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    for (auto& f : d.accepting) f = rng.below(2) ? 1 : 0;
    std::vector<int> depth = bfs_depths(d);
    bool all_reachable = std::all_of(depth.begin(), depth.end(), [](int x) { return x >= 0; });
    if (all_reachable) return d;
    if (attempt >= 1000) return trim_reachable(d);
  }
}

BooleanWfa to_wfa(const Dfa& dfa) {
  BooleanWfa w;
  w.n = dfa.n;
  w.alphabet_size = dfa.alphabet_size;
  w.alpha_init.assign(static_cast<size_t>(dfa.n), 0);
  w.alpha_init[static_cast<size_t>(dfa.initial)] = 1;
  w.alpha_final.assign(dfa.accepting.begin(), dfa.accepting.end());
  w.matrices.assign(static_cast<size_t>(dfa.alphabet_size),
                    std::vector<char>(static_cast<size_t>(dfa.n) * dfa.n, 0));
  for (int s = 0; s < dfa.n; ++s)
    for (int a = 0; a < dfa.alphabet_size; ++a)
      w.matrices[static_cast<size_t>(a)][static_cast<size_t>(s) * dfa.n + dfa.step(s, static_cast<Symbol>(a))] = 1;
  return w;
}

Dfa from_wfa(const BooleanWfa& wfa) {
  Dfa d;
  d.n = wfa.n;
  d.alphabet_size = wfa.alphabet_size;
  d.accepting.assign(wfa.alpha_final.begin(), wfa.alpha_final.end());
  int init = -1;
  for (int i = 0; i < wfa.n; ++i)
    if (wfa.alpha_init[static_cast<size_t>(i)]) {
      if (init >= 0) throw input_error("from_wfa: alpha_init not one-hot");
      init = i;
    }
  if (init < 0) throw input_error("from_wfa: alpha_init not one-hot");
  d.initial = init;
  d.delta.resize(static_cast<size_t>(wfa.n) * wfa.alphabet_size);
  for (int a = 0; a < wfa.alphabet_size; ++a)
    for (int i = 0; i < wfa.n; ++i) {
      int target = -1;
      for (int j = 0; j < wfa.n; ++j)
        if (wfa.matrices[static_cast<size_t>(a)][static_cast<size_t>(i) * wfa.n + j]) {
          if (target >= 0) throw input_error("from_wfa: matrix row not one-hot");
          target = j;
        }
      if (target < 0) throw input_error("from_wfa: matrix row not one-hot");
      d.delta[static_cast<size_t>(i) * wfa.alphabet_size + a] = target;
    }
  return d;
}

bool wfa_eval(const BooleanWfa& wfa, std::span<const Symbol> x) {
  std::vector<char> v(wfa.alpha_init.begin(), wfa.alpha_init.end());
  std::vector<char> next(static_cast<size_t>(wfa.n));
  for (Symbol a : x) {
    if (a >= static_cast<Symbol>(wfa.alphabet_size)) throw input_error("wfa_eval: symbol out of range");
    std::fill(next.begin(), next.end(), 0);
    const auto& m = wfa.matrices[static_cast<size_t>(a)];
    for (int i = 0; i < wfa.n; ++i)
      if (v[static_cast<size_t>(i)])
        for (int j = 0; j < wfa.n; ++j)
          if (m[static_cast<size_t>(i) * wfa.n + j]) next[static_cast<size_t>(j)] = 1;
    v.swap(next);
  }
  for (int i = 0; i < wfa.n; ++i)
    if (v[static_cast<size_t>(i)] && wfa.alpha_final[static_cast<size_t>(i)]) return true;
  return false;
}

Dfa parse_dfa(std::istream& in) {
  std::string tag;
  Dfa d;
  if (!(in >> tag) || tag != "dfa") throw input_error("dfa parse: expected 'dfa' header");
  if (!(in >> d.n >> d.alphabet_size >> d.initial)) throw input_error("dfa parse: malformed header");
  if (d.n < 1 || d.alphabet_size < 1) throw input_error("dfa parse: bad counts");
  if (!(in >> tag) || tag != "accepting") throw input_error("dfa parse: expected 'accepting' line");
  d.accepting.assign(static_cast<size_t>(d.n), 0);
  std::string rest;
  std::getline(in, rest);
  std::istringstream acc(rest);
  int s;
  while (acc >> s) {
    if (s < 0 || s >= d.n) throw input_error("dfa parse: accepting state out of range");
    d.accepting[static_cast<size_t>(s)] = 1;
  }
  d.delta.resize(static_cast<size_t>(d.n) * d.alphabet_size);
  for (auto& t : d.delta)
    if (!(in >> t)) throw input_error("dfa parse: truncated transition table");
  d.validate();
  return d;
}

Dfa parse_dfa_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dfa(in);
}

std::string serialize_dfa(const Dfa& dfa) {
  std::ostringstream out;
  out << "dfa " << dfa.n << " " << dfa.alphabet_size << " " << dfa.initial << "\n";
  out << "accepting";
  for (int s = 0; s < dfa.n; ++s)
    if (dfa.accepting[static_cast<size_t>(s)]) out << " " << s;
  out << "\n";
  for (int s = 0; s < dfa.n; ++s) {
    for (int a = 0; a < dfa.alphabet_size; ++a) {
      if (a) out << " ";
      out << dfa.step(s, static_cast<Symbol>(a));
    }
    out << "\n";
  }
  return out.str();
}

Dfa load_dfa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open DFA file: " + path);
  return parse_dfa(in);
}

void save_dfa_file(const Dfa& dfa, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write DFA file: " + path);
  out << serialize_dfa(dfa);
}

}  // namespace confdfa
