#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confdfa/encodings.hpp"

namespace confdfa {

enum class Verdict { Sat, Unsat, Timeout, Error };

std::string to_string(Verdict v);

struct SolveOutcome {
  Verdict verdict = Verdict::Error;
  std::string output;      // raw solver output (model text on Sat)
  double seconds = 0.0;
  std::string diagnostic;  // human-readable detail on Error
};

/// A solver invoked on an emitted problem file. Backends either shell out
/// (SubprocessBackend), replay canned results (ReplayBackend), or run the
/// built-in DPLL in process (BuiltinSatBackend).
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string kind() const = 0;  // "smt", "sat", or "mip"
  virtual SolveOutcome invoke(const std::filesystem::path& problem, double timeout_secs) = 0;

  /// In-process path, bypassing file emission; backends that support it
  /// (the builtin) handle the eta budget natively.
  virtual std::optional<SolveOutcome> solve_instance(const EncodingInstance& inst, double timeout_secs) {
    (void)inst;
    (void)timeout_secs;
    return std::nullopt;
  }
};

/// DPLL over the Tseitin CNF with unit propagation; the eta budget is
/// enforced as an exact-rational pseudo-boolean side constraint during the
/// search, so both exact and eta instances solve without external tools.
class BuiltinSatBackend : public SolverBackend {
 public:
  explicit BuiltinSatBackend(size_t clause_guard = 50000) : clause_guard_(clause_guard) {}
  std::string kind() const override { return "sat"; }
  SolveOutcome invoke(const std::filesystem::path& problem, double timeout_secs) override;
  std::optional<SolveOutcome> solve_instance(const EncodingInstance& inst, double timeout_secs) override;

 private:
  size_t clause_guard_;
};

/// Runs `command <problem>` under the system timeout(1); exit 124 maps to
/// Verdict::Timeout.
class SubprocessBackend : public SolverBackend {
 public:
  SubprocessBackend(std::string kind, std::string command)
      : kind_(std::move(kind)), command_(std::move(command)) {}
  std::string kind() const override { return kind_; }
  SolveOutcome invoke(const std::filesystem::path& problem, double timeout_secs) override;

 private:
  std::string kind_;
  std::string command_;
};

/// Reads `<problem>.result`: first line is the verdict (sat/unsat/timeout),
/// the remainder is the model text. Used for pinned fixtures.
class ReplayBackend : public SolverBackend {
 public:
  explicit ReplayBackend(std::string kind) : kind_(std::move(kind)) {}
  std::string kind() const override { return kind_; }
  SolveOutcome invoke(const std::filesystem::path& problem, double timeout_secs) override;

 private:
  std::string kind_;
};

/// Parse a satisfying assignment out of solver output. `kind` selects the
/// format: "smt" ((define-fun ...) or (name value) pairs), "sat" (DIMACS
/// v-lines, resolved through `<problem>.map`), "mip" (`name value` lines
/// with a 1e-6 integrality band; fractional values raise decode_error).
std::map<std::string, bool> parse_model(const std::string& kind, const std::string& output,
                                        const std::filesystem::path& problem);

struct SizeRecord {
  int n = 0;
  Verdict verdict = Verdict::Error;
  double seconds = 0.0;
  size_t vars = 0;
  size_t constraints = 0;
};

struct SearchReport {
  std::vector<SizeRecord> records;
  int minimal_n = -1;                // -1: no SAT size found within n_max
  std::optional<Dfa> witness;
  std::string csv() const;          // header n,verdict,seconds,vars,constraints
};

/// Linear search n = 1, 2, ... n_max, stopping at the first satisfiable
/// size. Problem files land in workdir (created if needed).
SearchReport minimal_search(const ExampleSet& examples, double eta, Direction direction, Flavor flavor,
                            SolverBackend& backend, int n_max, double timeout_secs,
                            const std::filesystem::path& workdir);

struct BruteForceResult {
  int minimal_n = -1;
  std::optional<Dfa> witness;
  std::vector<std::pair<int, Rat>> best_loss;  // per n: least misclassified mass
};

/// Exhaustive enumeration of all DFAs up to n_max states with exact
/// rational loss accounting. Guarded to n_max <= 3 and |Sigma| <= 2 unless
/// force is set: the count grows as n^(n|Sigma|) * 2^n.
BruteForceResult brute_force_minimal(const ExampleSet& examples, const Rat& eta, int n_max,
                                     bool force = false);

}  // namespace confdfa
