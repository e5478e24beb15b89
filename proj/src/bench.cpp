#include "confdfa/bench.hpp"

#include <fstream>
#include <sstream>

namespace confdfa {

namespace fs = std::filesystem;

namespace {

struct Target {
  std::string name;
  int size = 0;  // x coordinate of the gnuplot point
  Dfa dfa;
};

std::vector<Target> build_targets(const BenchSpec& spec) {
  std::vector<Target> targets;
  switch (spec.family) {
    case BenchSpec::Mod:
      for (int n : spec.sizes)
        targets.push_back({"mod" + std::to_string(n), n, mod_language(n, spec.alphabet_size)});
      break;
    case BenchSpec::Random: {
      uint64_t i = 0;
      for (int n : spec.sizes) {
        Dfa d = random_dfa(n, spec.alphabet_size, mix_seed(spec.seed, i++));
        targets.push_back({"rand" + std::to_string(n), d.n, std::move(d)});
      }
      break;
    }
    case BenchSpec::Files:
      for (const auto& path : spec.files) {
        Dfa d = load_dfa_file(path);
        targets.push_back({fs::path(path).stem().string(), d.n, std::move(d)});
      }
      break;
  }
  if (targets.empty()) throw input_error("bench: empty target list");
  return targets;
}

SolveOutcome solve_point(const EncodingInstance& inst, SolverBackend& backend, const fs::path& workdir,
                         const std::string& stem, double timeout_secs) {
  if (auto in_process = backend.solve_instance(inst, timeout_secs)) return *in_process;
  fs::path problem;
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
    throw input_error("bench: unknown backend kind " + backend.kind());
  }
  return backend.invoke(problem, timeout_secs);
}

}  // namespace

BenchResult run_bench(const BenchSpec& spec, SolverBackend& backend) {
  if (spec.reps < 1) throw input_error("bench: reps must be >= 1");
  if (spec.n_max < 1) throw input_error("bench: n_max must be >= 1");
  fs::create_directories(spec.workdir);
  BenchResult result;
  for (const Target& target : build_targets(spec)) {
    GeometricOracle oracle(target.dfa, spec.lambda);
    int k = spec.eta_trunc > 0.0 ? truncation_length(oracle, spec.eta_trunc) : spec.k;
    ExampleSet examples = build_example_set(oracle, k);
    for (int rep = 0; rep < spec.reps; ++rep) {
      for (int n = 1; n <= spec.n_max; ++n) {
        EncodingInstance exact = spec.direction == Direction::Naive
                                     ? encode_naive(examples, n)
                                     : spec.direction == Direction::Forward ? encode_forward(examples, n)
                                                                            : encode_backward(examples, n);
        EncodingInstance inst = spec.flavor == Flavor::ExactSat ? std::move(exact)
                                : spec.flavor == Flavor::EtaSmt ? relax_eta(exact, spec.eta)
                                                                : to_mip(relax_eta(exact, spec.eta));
        std::string stem = target.name + "_rep" + std::to_string(rep) + "_n" + std::to_string(n);
        SolveOutcome outcome = solve_point(inst, backend, spec.workdir, stem, spec.timeout_secs);
        result.points.push_back({target.name, rep, n, outcome.verdict, outcome.seconds, inst.var_count(),
                                 inst.constraint_count()});
        if (!spec.full_sweep && outcome.verdict != Verdict::Unsat) break;  // first SAT (or failure) ends the search
      }
    }
  }
  return result;
}

std::string BenchResult::csv() const {
  std::ostringstream out;
  out << "target,rep,n,verdict,seconds,vars,constraints\n";
  for (const auto& p : points)
    out << p.target << "," << p.rep << "," << p.n << "," << to_string(p.verdict) << ","
        << decimal_string(p.seconds, 6) << "," << p.vars << "," << p.constraints << "\n";
  return out.str();
}

std::string BenchResult::gnuplot() const {
  std::ostringstream out;
  out << "# minimal-size search time per target\n# x: winning size  y: total seconds\n";
  std::string current;
  int rep = -1;
  int last_n = 0;
  double total = 0.0;
  bool open = false;
  auto flush = [&]() {
    if (open) out << last_n << " " << decimal_string(total, 6) << "\n";
    open = false;
    total = 0.0;
  };
  for (const auto& p : points) {
    if (p.target != current || p.rep != rep) {
      flush();
      current = p.target;
      rep = p.rep;
    }
    total += p.seconds;
    last_n = p.n;
    open = true;
  }
  flush();
  return out.str();
}

}  // namespace confdfa
