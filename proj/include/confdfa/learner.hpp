#pragma once

#include <string>
#include <vector>

#include "confdfa/automata.hpp"
#include "confdfa/metric.hpp"
#include "confdfa/oracle.hpp"

namespace confdfa {

struct EpsilonSchedule {
  enum Kind { Constant, Geometric } kind = Geometric;
  double eps0 = 0.0;  // Constant: fixed threshold
  double eta = 0.0;   // Geometric: eps(len) = 2 * c(len) * eta with c from the measure

  static EpsilonSchedule constant(double eps) { return {Constant, eps, 0.0}; }
  static EpsilonSchedule geometric(double eta) { return {Geometric, 0.0, eta}; }
};

struct LearnerConfig {
  EpsilonSchedule schedule;
  long samples_per_test = 100000;
  double delta = 0.01;       // per-test confidence 1 - delta
  int max_states = 64;
  uint64_t seed = 0;
  bool majority_labels = false;
  int max_doublings = 3;     // extra sampling rounds when the radius straddles epsilon
};

struct TranscriptEntry {
  Word u;
  Symbol sigma = 0;
  Word vstar;
  double estimate = 0.0;
  double radius = 0.0;
  enum Decision { Merge, NewState } decision = Merge;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
  std::string serialize() const;  // line-oriented: u sigma v* estimate radius decision
};

enum class LearnStatus { Ok, StateCapExceeded };

struct LearnResult {
  LearnStatus status = LearnStatus::Ok;
  Dfa dfa;                 // partial on StateCapExceeded (missing transitions self-loop)
  Transcript transcript;
  std::vector<Word> access_strings;  // states of dfa in BFS discovery order
};

/// The epsilon-closure learner: BFS over access strings with estimated
/// derivative distances against the current queue.
LearnResult learn(const ConfidenceOracle& oracle, const LearnerConfig& config);

/// Argmin with ties broken by earliest insertion order; candidates are
/// (insertion index, estimate) pairs.
size_t tie_break(const std::vector<std::pair<size_t, double>>& candidates);

}  // namespace confdfa
