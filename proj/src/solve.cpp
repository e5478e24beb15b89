#include "confdfa/solve.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>
#include <sstream>

namespace confdfa {

namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::Timeout: return "timeout";
    case Verdict::Error: return "error";
  }
  return "?";
}

// --- builtin DPLL ---

namespace {

class Dpll {
 public:
  Dpll(int num_vars, const std::vector<std::vector<int>>& raw_clauses) : nvars_(num_vars) {
    assign_.assign(static_cast<size_t>(num_vars) + 1, 0);
    watches_.assign(2 * (static_cast<size_t>(num_vars) + 1), {});
    occur_.assign(static_cast<size_t>(num_vars) + 1, 0);
    for (const auto& raw : raw_clauses) {
      std::vector<int> c = raw;
      std::sort(c.begin(), c.end(), [](int a, int b) { return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b); });
      c.erase(std::unique(c.begin(), c.end()), c.end());
      bool taut = false;
      for (size_t i = 0; i + 1 < c.size(); ++i)
        if (c[i] == -c[i + 1]) taut = true;
      if (taut) continue;
      for (int l : c) ++occur_[static_cast<size_t>(std::abs(l))];
      if (c.empty()) {
        root_conflict_ = true;
      } else if (c.size() == 1) {
        units_.push_back(c[0]);
      } else {
        int id = static_cast<int>(clauses_.size());
        clauses_.push_back(std::move(c));
        watches_[widx(clauses_.back()[0])].push_back(id);
        watches_[widx(clauses_.back()[1])].push_back(id);
      }
    }
    order_.reserve(static_cast<size_t>(num_vars));
    for (int v = 1; v <= num_vars; ++v) order_.push_back(v);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return occur_[static_cast<size_t>(a)] > occur_[static_cast<size_t>(b)]; });
  }

  void set_budget(std::vector<Rat> weight_by_var, Rat bound) {
    weight_ = std::move(weight_by_var);
    budget_ = std::move(bound);
    has_budget_ = true;
  }

  // Returns Sat/Unsat/Timeout.
  Verdict run(clock_type::time_point deadline) {
    if (root_conflict_) return Verdict::Unsat;
    for (int l : units_)
      if (!enqueue(l)) return Verdict::Unsat;
    uint64_t steps = 0;
    for (;;) {
      if (((++steps) & 1023) == 0 && clock_type::now() > deadline) return Verdict::Timeout;
      if (!propagate()) {
        // Chronological backtrack: flip the most recent un-flipped decision.
        for (;;) {
          if (decisions_.empty()) return Verdict::Unsat;
          auto [lit, flipped] = decisions_.back();
          decisions_.pop_back();
          size_t mark = level_mark_.back();
          level_mark_.pop_back();
          undo_to(mark);
          if (!flipped) {
            decisions_.emplace_back(-lit, true);
            level_mark_.push_back(trail_.size());
            if (enqueue(-lit)) break;
            decisions_.pop_back();
            level_mark_.pop_back();
          }
        }
        continue;
      }
      int v = pick_branch();
      if (v == 0) return Verdict::Sat;
      decisions_.emplace_back(v, false);
      level_mark_.push_back(trail_.size());
      enqueue(v);
    }
  }

  bool value_of(int var) const { return assign_[static_cast<size_t>(var)] > 0; }

 private:
  static size_t widx(int lit) {
    return 2 * static_cast<size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
  }
  int val(int lit) const {
    int8_t a = assign_[static_cast<size_t>(std::abs(lit))];
    if (a == 0) return 0;
    return (a > 0) == (lit > 0) ? 1 : -1;
  }

  bool enqueue(int lit) {
    int v = val(lit);
    if (v < 0) return false;
    if (v > 0) return true;
    int var = std::abs(lit);
    assign_[static_cast<size_t>(var)] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
    if (has_budget_ && lit > 0 && static_cast<size_t>(var) < weight_.size() && weight_[static_cast<size_t>(var)] != 0) {
      spent_ += weight_[static_cast<size_t>(var)];
      if (spent_ > budget_) return false;
    }
    return true;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      int lit = trail_.back();
      trail_.pop_back();
      int var = std::abs(lit);
      if (has_budget_ && lit > 0 && static_cast<size_t>(var) < weight_.size())
        spent_ -= weight_[static_cast<size_t>(var)];
      assign_[static_cast<size_t>(var)] = 0;
    }
    qhead_ = std::min(qhead_, trail_.size());
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      int lit = trail_[qhead_++];
      int falsified = -lit;
      auto& wl = watches_[widx(falsified)];
      size_t keep = 0;
      for (size_t wi = 0; wi < wl.size(); ++wi) {
        int id = wl[wi];
        auto& c = clauses_[static_cast<size_t>(id)];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (val(c[0]) > 0) {
          wl[keep++] = id;
          continue;
        }
        bool moved = false;
        for (size_t i = 2; i < c.size(); ++i) {
          if (val(c[i]) >= 0) {
            std::swap(c[1], c[i]);
            watches_[widx(c[1])].push_back(id);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        wl[keep++] = id;
        if (!enqueue(c[0])) {
          for (size_t wj = wi + 1; wj < wl.size(); ++wj) wl[keep++] = wl[wj];
          wl.resize(keep);
          return false;
        }
      }
      wl.resize(keep);
    }
    return true;
  }

  int pick_branch() {
    while (order_pos_ < order_.size() && assign_[static_cast<size_t>(order_[order_pos_])] != 0) ++order_pos_;
    if (order_pos_ < order_.size()) {
      // Later backtracks may unassign earlier variables; rescan lazily.
      return order_[order_pos_];
    }
    for (int v : order_)
      if (assign_[static_cast<size_t>(v)] == 0) return v;
    order_pos_ = order_.size();
    return 0;
  }

  int nvars_;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> units_;
  std::vector<int> occur_;
  std::vector<int> order_;
  size_t order_pos_ = 0;
  bool root_conflict_ = false;
  std::vector<int8_t> assign_;
  std::vector<int> trail_;
  size_t qhead_ = 0;
  std::vector<std::pair<int, bool>> decisions_;
  std::vector<size_t> level_mark_;
  bool has_budget_ = false;
  std::vector<Rat> weight_;
  Rat budget_ = 0;
  Rat spent_ = 0;
};

double elapsed_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

SolveOutcome BuiltinSatBackend::invoke(const fs::path& problem, double timeout_secs) {
  auto t0 = clock_type::now();
  SolveOutcome out;
  std::ifstream in(problem);
  if (!in) {
    out.diagnostic = "cannot open " + problem.string();
    return out;
  }
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::string line;
  std::vector<int> cur;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream ls(line);
      std::string p, cnf;
      size_t nclauses;
      ls >> p >> cnf >> num_vars >> nclauses;
      continue;
    }
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        clauses.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(lit);
      }
    }
  }
  if (clauses.size() > clause_guard_) {
    out.diagnostic = "clause count exceeds the builtin guard";
    return out;
  }
  Dpll dpll(num_vars, clauses);
  out.verdict = dpll.run(t0 + std::chrono::duration_cast<clock_type::duration>(
                                  std::chrono::duration<double>(timeout_secs)));
  if (out.verdict == Verdict::Sat) {
    std::ostringstream model;
    model << "s SATISFIABLE\nv";
    for (int v = 1; v <= num_vars; ++v) model << " " << (dpll.value_of(v) ? v : -v);
    model << " 0\n";
    out.output = model.str();
  } else if (out.verdict == Verdict::Unsat) {
    out.output = "s UNSATISFIABLE\n";
  }
  out.seconds = elapsed_since(t0);
  return out;
}

std::optional<SolveOutcome> BuiltinSatBackend::solve_instance(const EncodingInstance& inst,
                                                              double timeout_secs) {
  auto t0 = clock_type::now();
  SolveOutcome out;
  Cnf cnf = instance_to_cnf(inst);
  if (cnf.clauses.size() > clause_guard_) {
    out.diagnostic = "clause count exceeds the builtin guard";
    out.seconds = elapsed_since(t0);
    return out;
  }
  Dpll dpll(cnf.num_vars, cnf.clauses);
  for (const auto& c : inst.constraints) {
    if (c.kind != Constraint::LinearLe) continue;
    std::vector<Rat> weight(static_cast<size_t>(cnf.num_vars) + 1, 0);
    for (const auto& [w, v] : c.terms) {
      int item = inst.vars[static_cast<size_t>(v)].item;
      Rat exact = item >= 0 ? inst.examples.items[static_cast<size_t>(item)].weight_exact
                            : rational_from_double(w);
      weight[static_cast<size_t>(v) + 1] += exact;
    }
    dpll.set_budget(std::move(weight), inst.eta_exact);
  }
  out.verdict = dpll.run(t0 + std::chrono::duration_cast<clock_type::duration>(
                                  std::chrono::duration<double>(timeout_secs)));
  if (out.verdict == Verdict::Sat) {
    std::ostringstream model;
    for (size_t v = 0; v < inst.vars.size(); ++v)
      model << inst.vars[v].name << " " << (dpll.value_of(static_cast<int>(v) + 1) ? 1 : 0) << "\n";
    out.output = model.str();
  }
  out.seconds = elapsed_since(t0);
  return out;
}

SolveOutcome SubprocessBackend::invoke(const fs::path& problem, double timeout_secs) {
  auto t0 = clock_type::now();
  SolveOutcome out;
  std::ostringstream cmd;
  cmd << "timeout " << static_cast<long>(std::ceil(timeout_secs)) << " " << command_ << " '"
      << problem.string() << "' 2>&1";
  FILE* pipe = popen(cmd.str().c_str(), "r");
  if (!pipe) {
    out.diagnostic = "popen failed for: " + command_;
    return out;
  }
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int status = pclose(pipe);
  out.seconds = elapsed_since(t0);
  out.output = output;
  int exit_code = -1;
  if (WIFEXITED(status)) exit_code = WEXITSTATUS(status);
  if (exit_code == 124) {
    out.verdict = Verdict::Timeout;
    return out;
  }
  std::string low = output;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low.find("unsat") != std::string::npos)
    out.verdict = Verdict::Unsat;
  else if (low.find("sat") != std::string::npos)
    out.verdict = Verdict::Sat;
  else
    out.diagnostic = "no verdict token in solver output";
  return out;
}

SolveOutcome ReplayBackend::invoke(const fs::path& problem, double) {
  SolveOutcome out;
  fs::path result = problem;
  result += ".result";
  std::ifstream in(result);
  if (!in) {
    out.diagnostic = "missing replay file " + result.string();
    return out;
  }
  std::string verdict;
  std::getline(in, verdict);
  while (!verdict.empty() && std::isspace(static_cast<unsigned char>(verdict.back()))) verdict.pop_back();
  if (verdict == "sat")
    out.verdict = Verdict::Sat;
  else if (verdict == "unsat")
    out.verdict = Verdict::Unsat;
  else if (verdict == "timeout")
    out.verdict = Verdict::Timeout;
  else
    out.diagnostic = "unknown replay verdict: " + verdict;
  std::ostringstream rest;
  rest << in.rdbuf();
  out.output = rest.str();
  return out;
}

// --- model parsing ---

namespace {

std::map<std::string, bool> parse_smt_model(const std::string& output) {
  std::string spaced;
  spaced.reserve(output.size());
  for (char c : output) {
    if (c == '(' || c == ')') {
      spaced.push_back(' ');
    } else {
      spaced.push_back(c);
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  std::map<std::string, bool> model;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] == "define-fun" && i + 1 < toks.size()) {
      std::string name = toks[i + 1];
      for (size_t j = i + 2; j < toks.size() && toks[j] != "define-fun"; ++j) {
        if (toks[j] == "true" || toks[j] == "false") {
          model[name] = toks[j] == "true";
          break;
        }
      }
    } else if ((toks[i] == "true" || toks[i] == "false") && i > 0 && model.count(toks[i - 1]) == 0 &&
               toks[i - 1].find('_') != std::string::npos) {
      model[toks[i - 1]] = toks[i] == "true";
    }
  }
  return model;
}

std::map<std::string, bool> parse_sat_model(const std::string& output, const fs::path& problem) {
  fs::path map_path = problem;
  map_path += ".map";
  std::ifstream mf(map_path);
  if (!mf) throw decode_error("parse_model: missing mapping file " + map_path.string());
  std::map<int, std::string> name_of;
  std::string name;
  int idx;
  while (mf >> name >> idx) name_of[idx] = name;
  std::map<int, bool> lits;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != 'v') continue;
    std::istringstream ls(line.substr(1));
    long l;
    while (ls >> l) {
      if (l == 0) break;
      lits[static_cast<int>(std::labs(l))] = l > 0;
    }
  }
  std::map<std::string, bool> model;
  for (const auto& [i, n] : name_of) {
    auto it = lits.find(i);
    if (it == lits.end()) throw decode_error("parse_model: variable " + n + " missing from v-lines");
    model[n] = it->second;
  }
  return model;
}

std::map<std::string, bool> parse_mip_model(const std::string& output) {
  std::map<std::string, bool> model;
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 's') continue;
    std::istringstream ls(line);
    std::string name, sval;
    if (!(ls >> name >> sval)) continue;
    char* end = nullptr;
    double v = std::strtod(sval.c_str(), &end);
    if (end == sval.c_str() || *end != '\0') continue;
    double r = std::round(v);
    if (std::abs(v - r) > 1e-6)
      throw decode_error("parse_model: fractional value for binary " + name);
    model[name] = r != 0.0;
  }
  return model;
}

}  // namespace

std::map<std::string, bool> parse_model(const std::string& kind, const std::string& output,
                                        const fs::path& problem) {
  if (kind == "smt") return parse_smt_model(output);
  if (kind == "sat") return parse_sat_model(output, problem);
  if (kind == "mip") return parse_mip_model(output);
  throw input_error("parse_model: unknown backend kind " + kind);
}

// --- minimal search ---

std::string SearchReport::csv() const {
  std::ostringstream out;
  out << "n,verdict,seconds,vars,constraints\n";
  for (const auto& r : records)
    out << r.n << "," << to_string(r.verdict) << "," << decimal_string(r.seconds, 6) << "," << r.vars
        << "," << r.constraints << "\n";
  return out.str();
}

namespace {

EncodingInstance build_for(const ExampleSet& examples, int n, Direction dir, Flavor flavor, double eta) {
  EncodingInstance exact = dir == Direction::Naive     ? encode_naive(examples, n)
                           : dir == Direction::Forward ? encode_forward(examples, n)
                                                       : encode_backward(examples, n);
  if (flavor == Flavor::ExactSat) return exact;
  EncodingInstance relaxed = relax_eta(exact, eta);
  if (flavor == Flavor::EtaSmt) return relaxed;
  return to_mip(relaxed);
}

}  // namespace

SearchReport minimal_search(const ExampleSet& examples, double eta, Direction direction, Flavor flavor,
                            SolverBackend& backend, int n_max, double timeout_secs,
                            const fs::path& workdir) {
  if (n_max < 1) throw input_error("minimal_search: n_max must be >= 1");
  fs::create_directories(workdir);
  SearchReport report;
  for (int n = 1; n <= n_max; ++n) {
    EncodingInstance inst = build_for(examples, n, direction, flavor, eta);
    SizeRecord rec;
    rec.n = n;
    rec.vars = inst.var_count();
    rec.constraints = inst.constraint_count();

    SolveOutcome outcome;
    std::string kind = backend.kind();
    fs::path problem;
    auto in_process = backend.solve_instance(inst, timeout_secs);
    if (in_process) {
      outcome = *in_process;
      kind = "mip";  // name/value model lines
    } else {
      std::string stem = "search_" + to_string(direction) + "_" + to_string(flavor) + "_n" + std::to_string(n);
      if (backend.kind() == "smt") {
        problem = workdir / (stem + ".smt2");
        std::ofstream(problem) << emit_smtlib(inst);
      } else if (backend.kind() == "sat") {
        DimacsResult d = emit_dimacs(inst);
        problem = workdir / (stem + ".cnf");
        std::ofstream(problem) << d.dimacs;
        std::ofstream(problem.string() + ".map") << d.mapping;
      } else if (backend.kind() == "mip") {
        problem = workdir / (stem + ".lp");
        std::ofstream(problem) << emit_lp(inst);
      } else {
        throw input_error("minimal_search: unknown backend kind " + backend.kind());
      }
      outcome = backend.invoke(problem, timeout_secs);
    }

    rec.verdict = outcome.verdict;
    rec.seconds = outcome.seconds;
    report.records.push_back(rec);
    if (outcome.verdict == Verdict::Sat) {
      report.minimal_n = n;
      report.witness = decode_model(inst, parse_model(kind, outcome.output, problem));
      break;
    }
    if (outcome.verdict != Verdict::Unsat) break;  // timeout/error: inconclusive
  }
  return report;
}

BruteForceResult brute_force_minimal(const ExampleSet& examples, const Rat& eta, int n_max, bool force) {
  if (!force && (n_max > 3 || examples.alphabet_size > 2))
    throw size_error("brute_force_minimal: enumeration guard (n_max <= 3, binary alphabet); set force to override");
  BruteForceResult result;
  const int alpha = examples.alphabet_size;
  for (int n = 1; n <= n_max; ++n) {
    const int cells = n * alpha;
    std::vector<int> delta(static_cast<size_t>(cells), 0);
    Rat best = -1;
    Dfa best_dfa;
    for (;;) {
      // End state of every example under this transition table; the
      // accepting set is then chosen optimally per state.
      std::vector<Rat> pos(static_cast<size_t>(n), 0), neg(static_cast<size_t>(n), 0);
      for (const auto& item : examples.items) {
        int s = 0;
        for (Symbol a : item.x) s = delta[static_cast<size_t>(s * alpha) + a];
        (item.sign > 0 ? pos : neg)[static_cast<size_t>(s)] += item.weight_exact;
      }
      Rat loss = 0;
      std::vector<char> accepting(static_cast<size_t>(n));
      for (int s = 0; s < n; ++s) {
        // accept: pay the negative mass; reject: pay the positive mass
        bool acc = neg[static_cast<size_t>(s)] < pos[static_cast<size_t>(s)];
        accepting[static_cast<size_t>(s)] = acc ? 1 : 0;
        loss += acc ? neg[static_cast<size_t>(s)] : pos[static_cast<size_t>(s)];
      }
      if (best < 0 || loss < best) {
        best = loss;
        best_dfa.n = n;
        best_dfa.alphabet_size = alpha;
        best_dfa.initial = 0;
        best_dfa.delta = delta;
        best_dfa.accepting = accepting;
      }
      int pos_i = cells - 1;
      while (pos_i >= 0 && delta[static_cast<size_t>(pos_i)] == n - 1) delta[static_cast<size_t>(pos_i--)] = 0;
      if (pos_i < 0) break;
      ++delta[static_cast<size_t>(pos_i)];
    }
    result.best_loss.emplace_back(n, best);
    if (result.minimal_n < 0 && best <= eta) {
      result.minimal_n = n;
      result.witness = best_dfa;
    }
  }
  return result;
}

}  // namespace confdfa
