#include "confdfa/learner.hpp"

#include <sstream>

namespace confdfa {

std::string Transcript::serialize() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << format_word(e.u) << " " << e.sigma << " " << format_word(e.vstar) << " " << e.estimate
        << " " << e.radius << " " << (e.decision == TranscriptEntry::Merge ? "merge" : "new-state")
        << "\n";
  }
  return out.str();
}

size_t tie_break(const std::vector<std::pair<size_t, double>>& candidates) {
  if (candidates.empty()) throw input_error("tie_break: empty candidate list");
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    const auto& [idx, est] = candidates[i];
    const auto& [bidx, best_est] = candidates[best];
    if (est < best_est || (est == best_est && idx < bidx)) best = i;
  }
  return best;
}

namespace {

double epsilon_for(const ConfidenceOracle& oracle, const EpsilonSchedule& sched, int len) {
  if (sched.kind == EpsilonSchedule::Constant) return sched.eps0;
  auto scale = oracle.prefix_mass_scale(len);
  if (!scale)
    throw input_error("learner: geometric epsilon schedule needs an oracle with a prefix mass scale");
  // d(u^{-1}L1, u^{-1}L2) <= d(L1,L2) / scale(|u|), so distances at depth len
  // are meaningful down to eta / scale(len).
  return 2.0 * sched.eta / *scale;
}

bool state_label(const ConfidenceOracle& oracle, const Word& u, bool majority) {
  if (!majority) return oracle.member(u);
  int votes = 0;
  for (int i = 0; i < 5; ++i) votes += oracle.member(u) ? 1 : -1;
  return votes > 0;
}

}  // namespace

LearnResult learn(const ConfidenceOracle& oracle, const LearnerConfig& config) {
  if (config.max_states < 1) throw input_error("learner: max_states must be >= 1");
  if (config.schedule.kind == EpsilonSchedule::Constant && config.schedule.eps0 <= 0.0)
    throw input_error("learner: constant epsilon must be positive");
  const int alpha = oracle.alphabet_size();

  std::vector<Word> states{{}};              // S, in BFS insertion order; epsilon first
  std::vector<std::vector<int>> delta{std::vector<int>(static_cast<size_t>(alpha), -1)};
  Transcript transcript;
  uint64_t test_counter = 0;
  bool cap_exceeded = false;

  for (size_t explored = 0; explored < states.size() && !cap_exceeded; ++explored) {
    Word u = states[explored];
    for (int sym = 0; sym < alpha && !cap_exceeded; ++sym) {
      Word w = u;
      w.push_back(static_cast<Symbol>(sym));
      double eps = epsilon_for(oracle, config.schedule, static_cast<int>(w.size()));

      std::vector<std::pair<size_t, double>> candidates;
      candidates.reserve(states.size());
      for (size_t vi = 0; vi < states.size(); ++vi) {
        DistanceEstimate e = derivative_distance(oracle, w, states[vi], config.samples_per_test,
                                                 config.delta, mix_seed(config.seed, test_counter++));
        candidates.emplace_back(vi, e.value);
      }
      size_t ci = tie_break(candidates);
      size_t vstar = candidates[ci].first;
      double estimate = candidates[ci].second;
      double radius = hoeffding_radius(config.samples_per_test, config.delta);

      // Conservative decision rule: only act when the confidence interval
      // clears epsilon; resample with doubled m while it straddles, then
      // fall back to merging (small hypotheses win ties).
      long m = config.samples_per_test;
      int rounds = 0;
      TranscriptEntry::Decision decision;
      while (true) {
        if (estimate + radius < eps) {
          decision = TranscriptEntry::Merge;
          break;
        }
        if (estimate - radius >= eps) {
          decision = TranscriptEntry::NewState;
          break;
        }
        if (rounds >= config.max_doublings) {
          decision = TranscriptEntry::Merge;
          break;
        }
        ++rounds;
        m *= 2;
        DistanceEstimate e = derivative_distance(oracle, w, states[vstar], m, config.delta,
                                                 mix_seed(config.seed, test_counter++));
        estimate = e.value;
        radius = e.radius;
      }

      transcript.entries.push_back({u, static_cast<Symbol>(sym), states[vstar], estimate, radius, decision});

      if (decision == TranscriptEntry::Merge) {
        delta[explored][static_cast<size_t>(sym)] = static_cast<int>(vstar);
      } else {
        if (static_cast<int>(states.size()) >= config.max_states) {
          cap_exceeded = true;
          break;
        }
        delta[explored][static_cast<size_t>(sym)] = static_cast<int>(states.size());
        states.push_back(w);
        delta.emplace_back(static_cast<size_t>(alpha), -1);
      }
    }
  }

  LearnResult result;
  result.status = cap_exceeded ? LearnStatus::StateCapExceeded : LearnStatus::Ok;
  result.access_strings = states;
  result.transcript = std::move(transcript);
  Dfa d;
  d.n = static_cast<int>(states.size());
  d.alphabet_size = alpha;
  d.initial = 0;
  d.delta.resize(static_cast<size_t>(d.n) * alpha);
  d.accepting.resize(static_cast<size_t>(d.n));
  for (size_t s = 0; s < states.size(); ++s) {
    d.accepting[s] = state_label(oracle, states[s], config.majority_labels) ? 1 : 0;
    for (int a = 0; a < alpha; ++a) {
      int t = delta[s][static_cast<size_t>(a)];
      d.delta[s * static_cast<size_t>(alpha) + static_cast<size_t>(a)] =
          t >= 0 ? t : static_cast<int>(s);  // unfilled (partial result): self-loop
    }
  }
  result.dfa = std::move(d);
  return result;
}

}  // namespace confdfa
