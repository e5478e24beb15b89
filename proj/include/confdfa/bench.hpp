#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "confdfa/solve.hpp"

namespace confdfa {

/// One timing sweep: a family of target languages, an example-set depth,
/// and an encoding/backend choice. Each grid point runs a fresh minimal
/// search (or, in full-sweep mode, solves every candidate size, mirroring
/// the fixed-true-size experiments).
struct BenchSpec {
  enum Family { Mod, Random, Files } family = Mod;
  std::vector<int> sizes;             // Mod: n values; Random: state counts
  std::vector<std::string> files;     // Files: DFA paths
  int alphabet_size = 2;
  double lambda = 0.9;
  int k = 5;                          // example depth; overridden by eta_trunc > 0
  double eta_trunc = 0.0;
  double eta = 0.0;                   // relaxation budget (eta flavors)
  Direction direction = Direction::Backward;
  Flavor flavor = Flavor::ExactSat;
  int n_max = 8;
  int reps = 1;
  uint64_t seed = 0;
  double timeout_secs = 60.0;
  bool full_sweep = false;            // solve all n in 1..n_max, not just up to the first SAT
  std::filesystem::path workdir = "bench_work";
};

struct BenchPoint {
  std::string target;
  int rep = 0;
  int n = 0;
  Verdict verdict = Verdict::Error;
  double seconds = 0.0;
  size_t vars = 0;
  size_t constraints = 0;
};

struct BenchResult {
  std::vector<BenchPoint> points;
  std::string csv() const;      // target,rep,n,verdict,seconds,vars,constraints
  std::string gnuplot() const;  // "<target size> <total seconds>" per search, '#' comments
};

BenchResult run_bench(const BenchSpec& spec, SolverBackend& backend);

}  // namespace confdfa
