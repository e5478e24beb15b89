#include "confdfa/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace confdfa {

double ExampleSet::total_weight() const {
  double t = 0.0;
  for (const auto& it : items) t += it.weight;
  return t;
}

Rat ExampleSet::total_weight_exact() const {
  Rat t = 0;
  for (const auto& it : items) t += it.weight_exact;
  return t;
}

ExampleSet build_example_set(const ConfidenceOracle& oracle, int k, uint64_t limit) {
  ExampleSet set;
  set.alphabet_size = oracle.alphabet_size();
  set.k = k;
  for_each_word(
      set.alphabet_size, k,
      [&](std::span<const Symbol> x) {
        double q = oracle.query(x);
        if (q == 0.0) {
          auto qr = oracle.query_rational(x);
          if (!qr || *qr == 0) return;  // zero-confidence strings are dropped
        }
        ExampleItem item;
        item.x.assign(x.begin(), x.end());
        item.weight = std::abs(q);
        auto qr = oracle.query_rational(x);
        item.weight_exact = qr ? abs(*qr) : rational_from_double(item.weight);
        item.sign = q >= 0.0 ? 1 : -1;
        set.items.push_back(std::move(item));
      },
      limit);
  return set;
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::Naive: return "naive";
    case Direction::Forward: return "forward";
    case Direction::Backward: return "backward";
  }
  return "?";
}

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::ExactSat: return "exact-sat";
    case Flavor::EtaSmt: return "eta-smt";
    case Flavor::EtaMip: return "eta-mip";
  }
  return "?";
}

Constraint Constraint::make_var(int v) {
  Constraint c;
  c.kind = Var;
  c.var = v;
  return c;
}
Constraint Constraint::make_not(Constraint k) {
  Constraint c;
  c.kind = Not;
  c.kids.push_back(std::move(k));
  return c;
}
Constraint Constraint::make_and(std::vector<Constraint> kids) {
  Constraint c;
  c.kind = And;
  c.kids = std::move(kids);
  return c;
}
Constraint Constraint::make_or(std::vector<Constraint> kids) {
  Constraint c;
  c.kind = Or;
  c.kids = std::move(kids);
  return c;
}
Constraint Constraint::exactly_one(std::vector<int> vs) {
  Constraint c;
  c.kind = ExactlyOne;
  c.vars = std::move(vs);
  return c;
}
Constraint Constraint::linear_le(std::vector<std::pair<double, int>> terms, double bound) {
  Constraint c;
  c.kind = LinearLe;
  c.terms = std::move(terms);
  c.bound = bound;
  return c;
}
Constraint Constraint::make_iff(Constraint a, Constraint b) {
  Constraint a2 = a, b2 = b;
  std::vector<Constraint> kids;
  kids.push_back(make_or({make_not(std::move(a)), std::move(b)}));
  kids.push_back(make_or({make_not(std::move(b2)), std::move(a2)}));
  return make_and(std::move(kids));
}

int ClosureTrie::insert(std::span<const Symbol> path) {
  int node = 0;
  for (Symbol a : path) {
    int& child = children[static_cast<size_t>(node)][a];
    if (child < 0) {
      child = node_count();
      children.push_back(std::vector<int>(static_cast<size_t>(alphabet_size), -1));
      parent.push_back(node);
      via.push_back(a);
    }
    node = child;
  }
  return node;
}

int EncodingInstance::vec_var(int node, int i) const {
  if (direction == Direction::Backward) {
    if (node == 0) return final_var(i);  // beta_epsilon = alpha_infinity
    return off_vec + (node - 1) * n + i;
  }
  return off_vec + node * n + i;
}

namespace {

void add_var(EncodingInstance& inst, VariableInfo::Role role, std::string name, int i = -1, int j = -1,
             int sigma = -1, int node = -1, int item = -1) {
  VariableInfo v;
  v.role = role;
  v.name = std::move(name);
  v.i = i;
  v.j = j;
  v.sigma = sigma;
  v.node = node;
  v.item = item;
  inst.vars.push_back(std::move(v));
}

void add_core_vars(EncodingInstance& inst) {
  const int n = inst.n;
  inst.off_final = static_cast<int>(inst.vars.size());
  for (int i = 0; i < n; ++i) add_var(inst, VariableInfo::Final, "aF_" + std::to_string(i), i);
  inst.off_trans = static_cast<int>(inst.vars.size());
  for (int s = 0; s < inst.alphabet_size; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        add_var(inst, VariableInfo::Trans,
                "t_" + std::to_string(s) + "_" + std::to_string(i) + "_" + std::to_string(j), i, j, s);
}

void add_row_one_hot(EncodingInstance& inst) {
  for (int s = 0; s < inst.alphabet_size; ++s)
    for (int i = 0; i < inst.n; ++i) {
      std::vector<int> row;
      for (int j = 0; j < inst.n; ++j) row.push_back(inst.trans_var(s, i, j));
      inst.constraints.push_back(Constraint::exactly_one(std::move(row)));
    }
}

// Acceptance literal of one example item, in the boolean tree language.
Constraint acceptance_literal(const EncodingInstance& inst, size_t item) {
  if (inst.direction == Direction::Backward) {
    return Constraint::make_var(inst.vec_var(inst.item_node[item], 0));
  }
  if (inst.direction == Direction::Forward) {
    std::vector<Constraint> terms;
    int node = inst.item_node[item];
    for (int i = 0; i < inst.n; ++i)
      terms.push_back(Constraint::make_and(
          {Constraint::make_var(inst.vec_var(node, i)), Constraint::make_var(inst.final_var(i))}));
    return Constraint::make_or(std::move(terms));
  }
  // Naive: expand alpha_1^T A_x alpha_inf as a disjunction over state paths.
  const Word& x = inst.examples.items[item].x;
  // recursion over remaining suffix from a given state
  struct Rec {
    const EncodingInstance& inst;
    const Word& x;
    Constraint operator()(size_t pos, int state) const {
      if (pos == x.size()) return Constraint::make_var(inst.final_var(state));
      std::vector<Constraint> branches;
      for (int j = 0; j < inst.n; ++j)
        branches.push_back(Constraint::make_and(
            {Constraint::make_var(inst.trans_var(static_cast<int>(x[pos]), state, j)), (*this)(pos + 1, j)}));
      return Constraint::make_or(std::move(branches));
    }
  };
  return Rec{inst, x}(0, 0);
}

void add_acceptance_constraints(EncodingInstance& inst) {
  for (size_t item = 0; item < inst.examples.items.size(); ++item) {
    Constraint lit = acceptance_literal(inst, item);
    if (inst.examples.items[item].sign > 0)
      inst.constraints.push_back(std::move(lit));
    else
      inst.constraints.push_back(Constraint::make_not(std::move(lit)));
  }
}

void add_eta_constraints(EncodingInstance& inst) {
  inst.off_ind = static_cast<int>(inst.vars.size());
  for (size_t item = 0; item < inst.examples.items.size(); ++item)
    add_var(inst, VariableInfo::Indicator, "e_" + std::to_string(item), -1, -1, -1, -1,
            static_cast<int>(item));
  std::vector<std::pair<double, int>> budget;
  for (size_t item = 0; item < inst.examples.items.size(); ++item) {
    Constraint lit = acceptance_literal(inst, item);
    Constraint miss = inst.examples.items[item].sign > 0 ? Constraint::make_not(lit) : lit;
    int e = inst.indicator_var(static_cast<int>(item));
    // e_x <-> (acceptance literal != sign)
    inst.constraints.push_back(Constraint::make_or({Constraint::make_not(Constraint::make_var(e)), miss}));
    inst.constraints.push_back(
        Constraint::make_or({Constraint::make_var(e), Constraint::make_not(std::move(miss))}));
    budget.emplace_back(inst.examples.items[item].weight, e);
  }
  inst.constraints.push_back(Constraint::linear_le(std::move(budget), inst.eta));
}

EncodingInstance build_instance(const ExampleSet& examples, int n, Direction dir, Flavor flavor,
                                double eta, uint64_t naive_term_limit, int naive_max_len) {
  if (n < 1) throw input_error("encode: n must be >= 1");
  if (flavor != Flavor::ExactSat && eta < 0.0) throw input_error("encode: eta must be >= 0");
  EncodingInstance inst;
  inst.n = n;
  inst.alphabet_size = examples.alphabet_size;
  inst.direction = dir;
  inst.flavor = flavor;
  inst.eta = eta;
  inst.eta_exact = rational_from_double(eta);
  inst.examples = examples;
  inst.trie = ClosureTrie(examples.alphabet_size);
  inst.item_node.assign(examples.items.size(), -1);

  add_core_vars(inst);

  if (dir == Direction::Naive) {
    // Size guard: the matrix-product expansion has n^{|x|} terms per example.
    double terms = 0;
    for (const auto& it : examples.items) {
      if (static_cast<int>(it.x.size()) > naive_max_len)
        throw size_error("encode_naive: example longer than the expansion guard");
      terms += std::pow(static_cast<double>(n), static_cast<double>(it.x.size()));
      if (terms > static_cast<double>(naive_term_limit))
        throw size_error("encode_naive: expanded product terms exceed the limit");
    }
  } else {
    Word path;
    for (size_t item = 0; item < examples.items.size(); ++item) {
      const Word& x = examples.items[item].x;
      if (dir == Direction::Forward) {
        inst.item_node[item] = inst.trie.insert(x);
      } else {
        path.assign(x.rbegin(), x.rend());
        inst.item_node[item] = inst.trie.insert(path);
      }
    }
    inst.off_vec = static_cast<int>(inst.vars.size());
    int first = dir == Direction::Backward ? 1 : 0;  // backward root is alpha_infinity
    char prefix = dir == Direction::Forward ? 'a' : 'b';
    for (int node = first; node < inst.trie.node_count(); ++node)
      for (int i = 0; i < n; ++i)
        add_var(inst, VariableInfo::Vec,
                std::string(1, prefix) + "_" + std::to_string(node) + "_" + std::to_string(i), i, -1, -1,
                node);
  }

  add_row_one_hot(inst);

  if (dir == Direction::Forward) {
    // alpha_epsilon fixed to e_1 (state 0 is initial).
    inst.constraints.push_back(Constraint::make_var(inst.vec_var(0, 0)));
    for (int i = 1; i < n; ++i)
      inst.constraints.push_back(Constraint::make_not(Constraint::make_var(inst.vec_var(0, i))));
    // Redundant one-hot on every alpha_x, kept on purpose.
    for (int node = 0; node < inst.trie.node_count(); ++node) {
      std::vector<int> vs;
      for (int i = 0; i < n; ++i) vs.push_back(inst.vec_var(node, i));
      inst.constraints.push_back(Constraint::exactly_one(std::move(vs)));
    }
    // alpha_{x sigma, j} <-> OR_i (alpha_{x,i} and t_{sigma,i,j})
    for (int node = 0; node < inst.trie.node_count(); ++node)
      for (int s = 0; s < inst.alphabet_size; ++s) {
        int child = inst.trie.children[static_cast<size_t>(node)][static_cast<size_t>(s)];
        if (child < 0) continue;
        for (int j = 0; j < n; ++j) {
          std::vector<Constraint> terms;
          for (int i = 0; i < n; ++i)
            terms.push_back(Constraint::make_and({Constraint::make_var(inst.vec_var(node, i)),
                                                  Constraint::make_var(inst.trans_var(s, i, j))}));
          Constraint rhs = Constraint::make_or(std::move(terms));
          Constraint lhs = Constraint::make_var(inst.vec_var(child, j));
          inst.constraints.push_back(Constraint::make_or({Constraint::make_not(lhs), rhs}));
          inst.constraints.push_back(
              Constraint::make_or({std::move(lhs), Constraint::make_not(std::move(rhs))}));
        }
      }
  } else if (dir == Direction::Backward) {
    // beta_{sigma x, i} <-> OR_j (t_{sigma,i,j} and beta_{x,j}); no one-hot
    // on the beta vectors.
    for (int node = 0; node < inst.trie.node_count(); ++node)
      for (int s = 0; s < inst.alphabet_size; ++s) {
        int child = inst.trie.children[static_cast<size_t>(node)][static_cast<size_t>(s)];
        if (child < 0) continue;
        for (int i = 0; i < n; ++i) {
          std::vector<Constraint> terms;
          for (int j = 0; j < n; ++j)
            terms.push_back(Constraint::make_and({Constraint::make_var(inst.trans_var(s, i, j)),
                                                  Constraint::make_var(inst.vec_var(node, j))}));
          Constraint rhs = Constraint::make_or(std::move(terms));
          Constraint lhs = Constraint::make_var(inst.vec_var(child, i));
          inst.constraints.push_back(Constraint::make_or({Constraint::make_not(lhs), rhs}));
          inst.constraints.push_back(
              Constraint::make_or({std::move(lhs), Constraint::make_not(std::move(rhs))}));
        }
      }
  }

  if (flavor == Flavor::ExactSat)
    add_acceptance_constraints(inst);
  else
    add_eta_constraints(inst);
  return inst;
}

}  // namespace

EncodingInstance encode_naive(const ExampleSet& examples, int n, uint64_t term_limit, int max_example_len) {
  return build_instance(examples, n, Direction::Naive, Flavor::ExactSat, 0.0, term_limit, max_example_len);
}

EncodingInstance encode_forward(const ExampleSet& examples, int n) {
  return build_instance(examples, n, Direction::Forward, Flavor::ExactSat, 0.0, 0, 0);
}

EncodingInstance encode_backward(const ExampleSet& examples, int n) {
  return build_instance(examples, n, Direction::Backward, Flavor::ExactSat, 0.0, 0, 0);
}

EncodingInstance relax_eta(const EncodingInstance& exact_instance, double eta) {
  if (eta < 0.0) throw input_error("relax_eta: eta must be >= 0");
  return build_instance(exact_instance.examples, exact_instance.n, exact_instance.direction,
                        Flavor::EtaSmt, eta, 1ull << 20, 20);
}

namespace {

struct MipBuilder {
  EncodingInstance& inst;
  int aux_count = 0;

  int new_aux(const std::string& hint) {
    int v = static_cast<int>(inst.vars.size());
    add_var(inst, VariableInfo::Aux, "z_" + hint + "_" + std::to_string(aux_count++));
    return v;
  }

  void row(std::vector<std::pair<double, int>> terms, char sense, double rhs) {
    inst.rows.push_back({std::move(terms), sense, rhs});
  }

  /// z = a * b for binaries, McCormick: z <= a, z <= b, z >= a + b - 1.
  int product(int a, int b, const std::string& hint) {
    int z = new_aux(hint);
    row({{1, z}, {-1, a}}, '<', 0);
    row({{1, z}, {-1, b}}, '<', 0);
    row({{1, z}, {-1, a}, {-1, b}}, '>', -1);
    return z;
  }
};

}  // namespace

EncodingInstance to_mip(const EncodingInstance& eta_instance, bool with_objective) {
  if (eta_instance.flavor != Flavor::EtaSmt)
    throw input_error("to_mip: expects an eta-smt instance");
  if (eta_instance.direction == Direction::Naive)
    throw input_error("to_mip: naive direction is not linearized");
  EncodingInstance inst = eta_instance;
  inst.flavor = Flavor::EtaMip;
  inst.rows.clear();
  MipBuilder mb{inst};

  const int n = inst.n;
  // Matrix rows are one-hot.
  for (int s = 0; s < inst.alphabet_size; ++s)
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<double, int>> terms;
      for (int j = 0; j < n; ++j) terms.emplace_back(1, inst.trans_var(s, i, j));
      mb.row(std::move(terms), '=', 1);
    }

  if (inst.direction == Direction::Forward) {
    mb.row({{1, inst.vec_var(0, 0)}}, '=', 1);
    for (int node = 0; node < inst.trie.node_count(); ++node) {
      std::vector<std::pair<double, int>> terms;
      for (int i = 0; i < n; ++i) terms.emplace_back(1, inst.vec_var(node, i));
      mb.row(std::move(terms), '=', 1);
    }
    for (int node = 0; node < inst.trie.node_count(); ++node)
      for (int s = 0; s < inst.alphabet_size; ++s) {
        int child = inst.trie.children[static_cast<size_t>(node)][static_cast<size_t>(s)];
        if (child < 0) continue;
        for (int j = 0; j < n; ++j) {
          // alpha_{child,j} = sum_i alpha_{node,i} * t_{s,i,j}; rows are
          // one-hot so the sum linearizes exactly.
          std::vector<std::pair<double, int>> terms{{1, inst.vec_var(child, j)}};
          for (int i = 0; i < n; ++i)
            terms.emplace_back(-1, mb.product(inst.vec_var(node, i), inst.trans_var(s, i, j), "f"));
          mb.row(std::move(terms), '=', 0);
        }
      }
  } else {
    for (int node = 1; node < inst.trie.node_count(); ++node) {
      int parent = inst.trie.parent[static_cast<size_t>(node)];
      int s = static_cast<int>(inst.trie.via[static_cast<size_t>(node)]);
      // In the suffix trie the child spells sigma.y where the parent spells
      // y, so the propagation runs child <- parent.
      for (int i = 0; i < n; ++i) {
        std::vector<std::pair<double, int>> terms{{1, inst.vec_var(node, i)}};
        for (int j = 0; j < n; ++j)
          terms.emplace_back(-1, mb.product(inst.trans_var(s, i, j), inst.vec_var(parent, j), "b"));
        mb.row(std::move(terms), '=', 0);
      }
    }
  }

  // Misclassification indicators and the budget.
  std::vector<std::pair<double, int>> budget;
  for (size_t item = 0; item < inst.examples.items.size(); ++item) {
    int e = inst.indicator_var(static_cast<int>(item));
    int sign = inst.examples.items[item].sign;
    if (inst.direction == Direction::Backward) {
      int lit = inst.vec_var(inst.item_node[item], 0);
      if (sign > 0)
        mb.row({{1, e}, {1, lit}}, '=', 1);
      else
        mb.row({{1, e}, {-1, lit}}, '=', 0);
    } else {
      std::vector<std::pair<double, int>> acc;
      int node = inst.item_node[item];
      for (int i = 0; i < n; ++i)
        acc.emplace_back(1, mb.product(inst.vec_var(node, i), inst.final_var(i), "acc"));
      std::vector<std::pair<double, int>> terms{{1, e}};
      for (auto& [w, v] : acc) terms.emplace_back(sign > 0 ? w : -w, v);
      mb.row(std::move(terms), '=', sign > 0 ? 1 : 0);
    }
    budget.emplace_back(inst.examples.items[item].weight, e);
  }
  inst.objective = budget;
  inst.minimize_objective = with_objective;
  mb.row(std::move(budget), '<', inst.eta);
  return inst;
}

Dfa decode_model(const EncodingInstance& inst, const std::map<std::string, bool>& assignment) {
  auto value = [&](const std::string& name) {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw decode_error("decode_model: missing variable " + name);
    return it->second;
  };
  Dfa d;
  d.n = inst.n;
  d.alphabet_size = inst.alphabet_size;
  d.initial = 0;
  d.delta.resize(static_cast<size_t>(inst.n) * inst.alphabet_size);
  d.accepting.resize(static_cast<size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i)
    d.accepting[static_cast<size_t>(i)] = value(inst.vars[static_cast<size_t>(inst.final_var(i))].name) ? 1 : 0;
  for (int s = 0; s < inst.alphabet_size; ++s)
    for (int i = 0; i < inst.n; ++i) {
      int target = -1;
      for (int j = 0; j < inst.n; ++j)
        if (value(inst.vars[static_cast<size_t>(inst.trans_var(s, i, j))].name)) {
          if (target >= 0) throw decode_error("decode_model: matrix row not one-hot");
          target = j;
        }
      if (target < 0) throw decode_error("decode_model: matrix row not one-hot");
      d.delta[static_cast<size_t>(i) * inst.alphabet_size + s] = target;
    }
  return d;
}

// --- emission ---

namespace {

void smt_expr(std::ostringstream& out, const EncodingInstance& inst, const Constraint& c) {
  switch (c.kind) {
    case Constraint::Var:
      out << inst.vars[static_cast<size_t>(c.var)].name;
      break;
    case Constraint::Not:
      out << "(not ";
      smt_expr(out, inst, c.kids[0]);
      out << ")";
      break;
    case Constraint::And:
    case Constraint::Or:
      out << (c.kind == Constraint::And ? "(and" : "(or");
      for (const auto& k : c.kids) {
        out << " ";
        smt_expr(out, inst, k);
      }
      out << ")";
      break;
    case Constraint::ExactlyOne: {
      out << "(and (or";
      for (int v : c.vars) out << " " << inst.vars[static_cast<size_t>(v)].name;
      out << ")";
      for (size_t i = 0; i < c.vars.size(); ++i)
        for (size_t j = i + 1; j < c.vars.size(); ++j)
          out << " (not (and " << inst.vars[static_cast<size_t>(c.vars[i])].name << " "
              << inst.vars[static_cast<size_t>(c.vars[j])].name << "))";
      out << ")";
      break;
    }
    case Constraint::LinearLe: {
      out << "(<= (+";
      for (const auto& [w, v] : c.terms)
        out << " (ite " << inst.vars[static_cast<size_t>(v)].name << " " << decimal_string(w) << " 0.0)";
      out << ") " << decimal_string(c.bound) << ")";
      break;
    }
  }
}

}  // namespace

std::string emit_smtlib(const EncodingInstance& inst) {
  std::ostringstream out;
  if (inst.flavor != Flavor::ExactSat) out << "(set-logic QF_LRA)\n";
  for (const auto& v : inst.vars)
    if (v.role != VariableInfo::Aux) out << "(declare-const " << v.name << " Bool)\n";
  for (const auto& c : inst.constraints) {
    out << "(assert ";
    smt_expr(out, inst, c);
    out << ")\n";
  }
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

namespace {

struct TseitinCtx {
  Cnf cnf;
  int next_var;

  int fresh() { return ++next_var; }
  void clause(std::vector<int> lits) { cnf.clauses.push_back(std::move(lits)); }

  // Returns a CNF literal equivalent to the subtree.
  int literal(const Constraint& c) {
    switch (c.kind) {
      case Constraint::Var:
        return c.var + 1;
      case Constraint::Not:
        return -literal(c.kids[0]);
      case Constraint::And:
      case Constraint::Or: {
        std::vector<int> lits;
        for (const auto& k : c.kids) lits.push_back(literal(k));
        int g = fresh();
        if (c.kind == Constraint::And) {
          std::vector<int> big{g};
          for (int l : lits) {
            clause({-g, l});
            big.push_back(-l);
          }
          clause(std::move(big));
        } else {
          std::vector<int> big{-g};
          for (int l : lits) {
            clause({g, -l});
            big.push_back(l);
          }
          clause(std::move(big));
        }
        return g;
      }
      default:
        throw input_error("tseitin: unsupported nested constraint");
    }
  }

  void assert_true(const Constraint& c) {
    switch (c.kind) {
      case Constraint::Var:
        clause({c.var + 1});
        break;
      case Constraint::Not:
        clause({-literal(c.kids[0])});
        break;
      case Constraint::And:
        for (const auto& k : c.kids) assert_true(k);
        break;
      case Constraint::Or: {
        std::vector<int> lits;
        for (const auto& k : c.kids) lits.push_back(literal(k));
        clause(std::move(lits));
        break;
      }
      case Constraint::ExactlyOne: {
        std::vector<int> alo;
        for (int v : c.vars) alo.push_back(v + 1);
        clause(std::move(alo));
        for (size_t i = 0; i < c.vars.size(); ++i)
          for (size_t j = i + 1; j < c.vars.size(); ++j)
            clause({-(c.vars[i] + 1), -(c.vars[j] + 1)});
        break;
      }
      case Constraint::LinearLe:
        // Handled natively by the caller (builtin backend); not clausal.
        break;
    }
  }
};

}  // namespace

Cnf instance_to_cnf(const EncodingInstance& inst, std::map<std::string, int>* named_vars) {
  TseitinCtx ctx;
  ctx.next_var = static_cast<int>(inst.vars.size());
  for (const auto& c : inst.constraints) ctx.assert_true(c);
  ctx.cnf.num_vars = ctx.next_var;
  if (named_vars)
    for (size_t v = 0; v < inst.vars.size(); ++v)
      (*named_vars)[inst.vars[v].name] = static_cast<int>(v) + 1;
  return ctx.cnf;
}

DimacsResult emit_dimacs(const EncodingInstance& inst) {
  for (const auto& c : inst.constraints)
    if (c.kind == Constraint::LinearLe)
      throw input_error("emit_dimacs: the eta budget is not clausal; DIMACS supports the exact flavor only");
  std::map<std::string, int> names;
  Cnf cnf = instance_to_cnf(inst, &names);
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
  for (const auto& cl : cnf.clauses) {
    for (int l : cl) out << l << " ";
    out << "0\n";
  }
  std::ostringstream map;
  for (const auto& [name, idx] : names) map << name << " " << idx << "\n";
  return {out.str(), map.str()};
}

std::string emit_lp(const EncodingInstance& inst) {
  if (inst.flavor != Flavor::EtaMip) throw input_error("emit_lp: expects an eta-mip instance");
  std::ostringstream out;
  out << "Minimize\n obj:";
  if (inst.minimize_objective) {
    bool first = true;
    for (const auto& [w, v] : inst.objective) {
      out << (first ? " " : " + ") << decimal_string(w) << " " << inst.vars[static_cast<size_t>(v)].name;
      first = false;
    }
    if (first) out << " 0";
  } else {
    out << " 0";
  }
  out << "\nSubject To\n";
  int row_id = 0;
  for (const auto& row : inst.rows) {
    out << " c" << row_id++ << ":";
    bool first = true;
    for (const auto& [w, v] : row.terms) {
      if (w >= 0)
        out << (first ? " " : " + ") << decimal_string(w);
      else
        out << (first ? " -" : " - ") << decimal_string(-w);
      out << " " << inst.vars[static_cast<size_t>(v)].name;
      first = false;
    }
    out << " " << (row.sense == '<' ? "<=" : row.sense == '>' ? ">=" : "=") << " "
        << decimal_string(row.rhs) << "\n";
  }
  out << "Binary\n";
  for (const auto& v : inst.vars) out << " " << v.name << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace confdfa
