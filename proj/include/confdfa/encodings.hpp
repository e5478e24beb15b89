#pragma once

#include <map>
#include <string>
#include <vector>

#include "confdfa/automata.hpp"
#include "confdfa/oracle.hpp"
#include "confdfa/types.hpp"

namespace confdfa {

class decode_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weighted, signed finite example strings: the truncated oracle.
struct ExampleItem {
  Word x;
  double weight = 0.0;   // |Q(x)|
  Rat weight_exact = 0;  // exact when the oracle provides it, else from the double
  int sign = 1;          // +1: positive example, -1: negative
};

struct ExampleSet {
  int alphabet_size = 2;
  int k = 0;
  std::vector<ExampleItem> items;

  double total_weight() const;
  Rat total_weight_exact() const;
};

/// One item per x in Sigma^{<=k} with |Q(x)| > 0; Q(x) = 0 strings carry no
/// weight and are dropped. Sign +1 iff Q(x) >= 0.
ExampleSet build_example_set(const ConfidenceOracle& oracle, int k, uint64_t limit = (1ull << 24));

enum class Direction { Naive, Forward, Backward };
enum class Flavor { ExactSat, EtaSmt, EtaMip };

std::string to_string(Direction d);
std::string to_string(Flavor f);

/// Neutral constraint tree: and/or/not over variable leaves, plus
/// exactly-one groups and one linear-sum-<= row (the eta budget).
struct Constraint {
  enum Kind { Var, Not, And, Or, ExactlyOne, LinearLe } kind = Var;
  int var = -1;
  std::vector<Constraint> kids;
  std::vector<int> vars;                       // ExactlyOne
  std::vector<std::pair<double, int>> terms;   // LinearLe: weight * var
  double bound = 0.0;

  static Constraint make_var(int v);
  static Constraint make_not(Constraint c);
  static Constraint make_and(std::vector<Constraint> kids);
  static Constraint make_or(std::vector<Constraint> kids);
  static Constraint exactly_one(std::vector<int> vs);
  static Constraint linear_le(std::vector<std::pair<double, int>> terms, double bound);
  static Constraint make_iff(Constraint a, Constraint b);  // (a -> b) and (b -> a)
};

struct VariableInfo {
  enum Role { Final, Trans, Vec, Indicator, Aux } role = Aux;
  std::string name;
  int i = -1, j = -1, sigma = -1, node = -1, item = -1;
};

/// Shared prefix/suffix closure trie. Node 0 is the root (empty string);
/// in backward direction the path from the root spells the suffix
/// right-to-left, so child(node(y), sigma) represents sigma . y.
struct ClosureTrie {
  int alphabet_size = 2;
  std::vector<std::vector<int>> children;  // node -> per-symbol child (-1 if absent)
  std::vector<int> parent{-1};
  std::vector<Symbol> via{0};

  explicit ClosureTrie(int alphabet = 2) : alphabet_size(alphabet) {
    children.push_back(std::vector<int>(static_cast<size_t>(alphabet), -1));
  }
  int node_count() const { return static_cast<int>(children.size()); }
  int insert(std::span<const Symbol> path);  // returns node for the full path
};

/// MIP row: sum(terms) sense rhs, with sense one of '<' (<=), '=', '>' (>=).
struct MipRow {
  std::vector<std::pair<double, int>> terms;
  char sense = '<';
  double rhs = 0.0;
};

struct EncodingInstance {
  int n = 1;
  int alphabet_size = 2;
  Direction direction = Direction::Backward;
  Flavor flavor = Flavor::ExactSat;
  double eta = 0.0;
  Rat eta_exact = 0;
  ExampleSet examples;
  ClosureTrie trie;                  // unused for naive
  std::vector<int> item_node;       // per example item: its trie node (-1 for naive)

  std::vector<VariableInfo> vars;
  std::vector<Constraint> constraints;  // boolean form (all flavors)
  std::vector<MipRow> rows;             // EtaMip only
  std::vector<std::pair<double, int>> objective;
  bool minimize_objective = false;

  int off_final = 0, off_trans = 0, off_vec = 0, off_ind = -1;

  int final_var(int i) const { return off_final + i; }
  int trans_var(int sigma, int i, int j) const { return off_trans + (sigma * n + i) * n + j; }
  /// Forward: per-prefix alpha vector. Backward: per-suffix beta vector,
  /// with the root (beta_epsilon) aliased to alpha_infinity.
  int vec_var(int node, int i) const;
  int indicator_var(int item) const { return off_ind + item; }

  size_t var_count() const { return vars.size(); }
  size_t constraint_count() const { return flavor == Flavor::EtaMip ? rows.size() : constraints.size(); }
};

EncodingInstance encode_naive(const ExampleSet& examples, int n, uint64_t term_limit = (1ull << 20),
                              int max_example_len = 20);
EncodingInstance encode_forward(const ExampleSet& examples, int n);
EncodingInstance encode_backward(const ExampleSet& examples, int n);

/// Replace hard per-example acceptance by misclassification indicators and
/// the budget sum(w_x e_x) <= eta.
EncodingInstance relax_eta(const EncodingInstance& exact_instance, double eta);

/// 0/1 linearization of an eta instance: McCormick products, one-hot rows
/// as unit sums. Optional objective min sum(w_x e_x).
EncodingInstance to_mip(const EncodingInstance& eta_instance, bool with_objective = false);

/// Read transitions and accepting set off a satisfying assignment
/// (initial state is 0 since alpha_1 = e_1).
Dfa decode_model(const EncodingInstance& inst, const std::map<std::string, bool>& assignment);

// --- emission ---

std::string emit_smtlib(const EncodingInstance& inst);

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// Tseitin transformation of the boolean constraint tree (exact flavor);
/// named_vars maps instance variable names to 1-based CNF indices.
Cnf instance_to_cnf(const EncodingInstance& inst, std::map<std::string, int>* named_vars = nullptr);

struct DimacsResult {
  std::string dimacs;
  std::string mapping;  // "<name> <dimacs var>" lines
};
DimacsResult emit_dimacs(const EncodingInstance& inst);

std::string emit_lp(const EncodingInstance& inst);

}  // namespace confdfa
