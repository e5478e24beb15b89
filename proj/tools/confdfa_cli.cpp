// confdfa: learn, encode, solve, and benchmark compact DFAs against
// confidence oracles.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "confdfa/bench.hpp"
#include "confdfa/learner.hpp"
#include "confdfa/lemmas.hpp"
#include "confdfa/solve.hpp"

namespace fs = std::filesystem;
using namespace confdfa;

namespace {

constexpr int kExitError = 1;
constexpr int kExitMissingFile = 2;
constexpr int kExitPartial = 3;

struct OracleFlags {
  std::string base_path;
  std::string csv_path;
  double lambda = 0.9;

  void attach(CLI::App* cmd) {
    cmd->add_option("--base", base_path, "ground-truth DFA file for a geometric oracle");
    cmd->add_option("--csv", csv_path, "labeled sample CSV (string,label) for an empirical oracle");
    cmd->add_option("--lambda", lambda, "geometric length decay in (0,1)")->capture_default_str();
  }

  std::shared_ptr<ConfidenceOracle> build() const {
    if (!base_path.empty()) {
      if (!fs::exists(base_path)) {
        std::cerr << "error: no such file: " << base_path << "\n";
        std::exit(kExitMissingFile);
      }
      return std::make_shared<GeometricOracle>(load_dfa_file(base_path), lambda);
    }
    if (!csv_path.empty()) {
      if (!fs::exists(csv_path)) {
        std::cerr << "error: no such file: " << csv_path << "\n";
        std::exit(kExitMissingFile);
      }
      auto samples = load_labeled_csv(csv_path);
      int alpha = 1;
      for (const auto& [w, l] : samples)
        for (Symbol s : w) alpha = std::max(alpha, static_cast<int>(s) + 1);
      return std::make_shared<EmpiricalOracle>(samples, std::max(alpha, 2));
    }
    std::cerr << "error: provide --base or --csv\n";
    std::exit(kExitError);
  }
};

Direction parse_direction(const std::string& s) {
  if (s == "naive") return Direction::Naive;
  if (s == "forward") return Direction::Forward;
  if (s == "backward") return Direction::Backward;
  throw CLI::ValidationError("--direction", "expected naive|forward|backward");
}

Flavor parse_flavor(const std::string& s) {
  if (s == "exact-sat") return Flavor::ExactSat;
  if (s == "eta-smt") return Flavor::EtaSmt;
  if (s == "eta-mip") return Flavor::EtaMip;
  throw CLI::ValidationError("--flavor", "expected exact-sat|eta-smt|eta-mip");
}

std::unique_ptr<SolverBackend> make_backend(const std::string& spec) {
  if (spec == "builtin-sat") return std::make_unique<BuiltinSatBackend>();
  auto colon = spec.find(":cmd=");
  if (colon != std::string::npos) {
    std::string kind = spec.substr(0, colon);
    std::string cmd = spec.substr(colon + 5);
    if (kind != "smt" && kind != "sat" && kind != "mip")
      throw CLI::ValidationError("--backend", "kind must be smt, sat, or mip");
    if (cmd.rfind("replay", 0) == 0) return std::make_unique<ReplayBackend>(kind);
    return std::make_unique<SubprocessBackend>(kind, cmd);
  }
  throw CLI::ValidationError("--backend", "expected builtin-sat or <kind>:cmd=<command>");
}

int pick_k(const ConfidenceOracle& oracle, int k, double eta_trunc) {
  return eta_trunc > 0.0 ? truncation_length(oracle, eta_trunc) : k;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(kExitError);
  }
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DFA learning and identification toolkit for confidence oracles"};
  app.require_subcommand(1);

  // --- oracle-info ---
  auto* info = app.add_subcommand("oracle-info", "describe an oracle and its truncation depths");
  OracleFlags info_oracle;
  info_oracle.attach(info);
  double info_eta_trunc = 1e-6;
  info->add_option("--eta-trunc", info_eta_trunc, "tail mass for the reported truncation length")
      ->capture_default_str();

  // --- learn ---
  auto* learn_cmd = app.add_subcommand("learn", "run the epsilon-closure learner");
  OracleFlags learn_oracle;
  learn_oracle.attach(learn_cmd);
  double learn_eta = 0.0, learn_eps = 0.0, learn_delta = 0.01;
  long learn_samples = 100000;
  int learn_max_states = 64, report_k = -1;
  uint64_t learn_seed = 0;
  std::string learn_out, transcript_out;
  bool majority = false;
  learn_cmd->add_option("--eta", learn_eta, "perturbation budget driving the geometric epsilon schedule");
  learn_cmd->add_option("--eps", learn_eps, "constant epsilon threshold (overrides the schedule)");
  learn_cmd->add_option("--samples", learn_samples, "samples per distance test")->capture_default_str();
  learn_cmd->add_option("--delta", learn_delta, "per-test failure probability")->capture_default_str();
  learn_cmd->add_option("--max-states", learn_max_states)->capture_default_str();
  learn_cmd->add_option("--seed", learn_seed)->capture_default_str();
  learn_cmd->add_option("--out", learn_out, "output DFA file");
  learn_cmd->add_option("--transcript", transcript_out, "decision transcript file");
  learn_cmd->add_option("--report-k", report_k, "report exact truncated distance to the oracle language");
  learn_cmd->add_flag("--majority-labels", majority, "label states by 5-vote majority");

  // --- encode ---
  auto* encode_cmd = app.add_subcommand("encode", "emit an identification problem file");
  OracleFlags enc_oracle;
  enc_oracle.attach(encode_cmd);
  int enc_k = 4, enc_n = 2;
  double enc_eta = 0.0, enc_eta_trunc = 0.0;
  std::string enc_dir = "backward", enc_flavor = "exact-sat", enc_out, enc_format = "smt2";
  encode_cmd->add_option("--k", enc_k, "example set depth: all strings up to this length")->capture_default_str();
  encode_cmd->add_option("--eta-trunc", enc_eta_trunc, "derive the depth from this tail mass instead of --k");
  encode_cmd->add_option("--n", enc_n, "candidate DFA size")->capture_default_str();
  encode_cmd->add_option("--direction", enc_dir)->capture_default_str();
  encode_cmd->add_option("--flavor", enc_flavor)->capture_default_str();
  encode_cmd->add_option("--eta", enc_eta, "misclassification budget");
  encode_cmd->add_option("--format", enc_format, "smt2|dimacs|lp")->capture_default_str();
  encode_cmd->add_option("--out", enc_out, "output problem file")->required();

  // --- solve ---
  auto* solve_cmd = app.add_subcommand("solve", "minimal-size search over a backend");
  OracleFlags solve_oracle;
  solve_oracle.attach(solve_cmd);
  int solve_k = 4, solve_n_max = 8;
  double solve_eta = 0.0, solve_eta_trunc = 0.0, solve_timeout = 60.0;
  std::string solve_dir = "backward", solve_flavor = "exact-sat", solve_backend = "builtin-sat";
  std::string solve_out, solve_workdir = "confdfa_work";
  solve_cmd->add_option("--k", solve_k)->capture_default_str();
  solve_cmd->add_option("--eta-trunc", solve_eta_trunc);
  solve_cmd->add_option("--eta", solve_eta);
  solve_cmd->add_option("--n-max", solve_n_max)->capture_default_str();
  solve_cmd->add_option("--direction", solve_dir)->capture_default_str();
  solve_cmd->add_option("--flavor", solve_flavor)->capture_default_str();
  solve_cmd->add_option("--backend", solve_backend)->capture_default_str();
  solve_cmd->add_option("--timeout-secs", solve_timeout)->capture_default_str();
  solve_cmd->add_option("--workdir", solve_workdir)->capture_default_str();
  solve_cmd->add_option("--out", solve_out, "write the winning DFA here");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "timing sweeps over language families");
  std::vector<int> bench_mod, bench_random;
  std::vector<std::string> bench_files;
  int bench_k = 4, bench_n_max = 8, bench_reps = 1, bench_alpha = 2;
  double bench_lambda = 0.9, bench_eta = 0.0, bench_eta_trunc = 0.0, bench_timeout = 60.0;
  uint64_t bench_seed = 0;
  bool bench_full = false;
  std::string bench_dir = "backward", bench_flavor = "exact-sat", bench_backend = "builtin-sat";
  std::string bench_csv, bench_plot, bench_workdir = "bench_work";
  bench_cmd->add_option("--mod", bench_mod, "mod-n targets");
  bench_cmd->add_option("--random-sizes", bench_random, "random target sizes");
  bench_cmd->add_option("--files", bench_files, "target DFA files");
  bench_cmd->add_option("--alphabet", bench_alpha)->capture_default_str();
  bench_cmd->add_option("--lambda", bench_lambda)->capture_default_str();
  bench_cmd->add_option("--k", bench_k)->capture_default_str();
  bench_cmd->add_option("--eta-trunc", bench_eta_trunc);
  bench_cmd->add_option("--eta", bench_eta);
  bench_cmd->add_option("--n-max", bench_n_max)->capture_default_str();
  bench_cmd->add_option("--reps", bench_reps)->capture_default_str();
  bench_cmd->add_option("--seed", bench_seed)->capture_default_str();
  bench_cmd->add_option("--direction", bench_dir)->capture_default_str();
  bench_cmd->add_option("--flavor", bench_flavor)->capture_default_str();
  bench_cmd->add_option("--backend", bench_backend)->capture_default_str();
  bench_cmd->add_option("--timeout-secs", bench_timeout)->capture_default_str();
  bench_cmd->add_option("--workdir", bench_workdir)->capture_default_str();
  bench_cmd->add_option("--csv-out", bench_csv, "CSV output path");
  bench_cmd->add_option("--gnuplot-out", bench_plot, "gnuplot data output path");
  bench_cmd->add_flag("--full-sweep", bench_full, "solve every size up to --n-max");

  // --- check-lemmas ---
  auto* lemmas_cmd = app.add_subcommand("check-lemmas", "random-trial checks of the derivative lemmas");
  int lem_trials = 500, lem_k = 16, lem_max_states = 5, lem_alpha = 2, lem_word_len = 4;
  double lem_lambda = 0.9;
  uint64_t lem_seed = 0;
  lemmas_cmd->add_option("--trials", lem_trials)->capture_default_str();
  lemmas_cmd->add_option("--k", lem_k)->capture_default_str();
  lemmas_cmd->add_option("--lambda", lem_lambda)->capture_default_str();
  lemmas_cmd->add_option("--max-states", lem_max_states)->capture_default_str();
  lemmas_cmd->add_option("--alphabet", lem_alpha)->capture_default_str();
  lemmas_cmd->add_option("--max-word-len", lem_word_len)->capture_default_str();
  lemmas_cmd->add_option("--seed", lem_seed)->capture_default_str();

  // --- brute-min ---
  auto* brute_cmd = app.add_subcommand("brute-min", "exhaustive minimal-size search (small instances)");
  OracleFlags brute_oracle;
  brute_oracle.attach(brute_cmd);
  int brute_k = 4, brute_n_max = 3;
  double brute_eta = 0.0;
  bool brute_force_flag = false;
  std::string brute_out;
  brute_cmd->add_option("--k", brute_k)->capture_default_str();
  brute_cmd->add_option("--eta", brute_eta)->capture_default_str();
  brute_cmd->add_option("--n-max", brute_n_max)->capture_default_str();
  brute_cmd->add_flag("--force", brute_force_flag, "lift the instance-size guard");
  brute_cmd->add_option("--out", brute_out, "write the witness DFA here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) {
      auto oracle = info_oracle.build();
      std::cout << "alphabet " << oracle->alphabet_size() << "\n";
      std::cout << "support-length " << oracle->max_support_length() << "\n";
      for (int k : {5, 10, 20, 40})
        std::cout << "length-cdf " << k << " " << decimal_string(oracle->length_cdf(k)) << "\n";
      std::cout << "truncation-length " << decimal_string(info_eta_trunc) << " "
                << truncation_length(*oracle, info_eta_trunc) << "\n";
      return 0;
    }

    if (*learn_cmd) {
      auto oracle = learn_oracle.build();
      LearnerConfig config;
      config.schedule = learn_eps > 0.0 ? EpsilonSchedule::constant(learn_eps)
                                        : EpsilonSchedule::geometric(learn_eta);
      config.samples_per_test = learn_samples;
      config.delta = learn_delta;
      config.max_states = learn_max_states;
      config.seed = learn_seed;
      config.majority_labels = majority;
      LearnResult result = learn(*oracle, config);
      std::cout << "states " << result.dfa.n << "\n";
      if (!learn_out.empty()) save_dfa_file(result.dfa, learn_out);
      if (!transcript_out.empty()) write_file(transcript_out, result.transcript.serialize());
      if (report_k >= 0) {
        double d = exact_distance_truncated(*oracle, oracle_view(*oracle), dfa_view(result.dfa), report_k);
        std::cout << "distance-at-" << report_k << " " << decimal_string(d) << "\n";
      }
      if (result.status == LearnStatus::StateCapExceeded) {
        std::cerr << "warning: state cap exceeded; result is partial\n";
        return kExitPartial;
      }
      return 0;
    }

    if (*encode_cmd) {
      auto oracle = enc_oracle.build();
      int k = pick_k(*oracle, enc_k, enc_eta_trunc);
      ExampleSet examples = build_example_set(*oracle, k);
      Direction dir = parse_direction(enc_dir);
      Flavor flavor = parse_flavor(enc_flavor);
      EncodingInstance exact = dir == Direction::Naive     ? encode_naive(examples, enc_n)
                               : dir == Direction::Forward ? encode_forward(examples, enc_n)
                                                           : encode_backward(examples, enc_n);
      EncodingInstance inst = flavor == Flavor::ExactSat ? std::move(exact)
                              : flavor == Flavor::EtaSmt ? relax_eta(exact, enc_eta)
                                                         : to_mip(relax_eta(exact, enc_eta));
      if (enc_format == "lp" || flavor == Flavor::EtaMip) {
        write_file(enc_out, emit_lp(inst));
      } else if (enc_format == "dimacs") {
        DimacsResult d = emit_dimacs(inst);
        write_file(enc_out, d.dimacs);
        write_file(enc_out + ".map", d.mapping);
      } else {
        write_file(enc_out, emit_smtlib(inst));
      }
      std::cout << "k " << k << "\nvariables " << inst.var_count() << "\nconstraints "
                << inst.constraint_count() << "\n";
      return 0;
    }

    if (*solve_cmd) {
      auto oracle = solve_oracle.build();
      int k = pick_k(*oracle, solve_k, solve_eta_trunc);
      ExampleSet examples = build_example_set(*oracle, k);
      auto backend = make_backend(solve_backend);
      SearchReport report = minimal_search(examples, solve_eta, parse_direction(solve_dir),
                                           parse_flavor(solve_flavor), *backend, solve_n_max,
                                           solve_timeout, solve_workdir);
      std::cout << report.csv();
      if (report.minimal_n > 0) {
        std::cout << "minimal " << report.minimal_n << "\n";
        if (!solve_out.empty() && report.witness) save_dfa_file(*report.witness, solve_out);
        return 0;
      }
      std::cerr << "no satisfiable size up to " << solve_n_max << "\n";
      return kExitError;
    }

    if (*bench_cmd) {
      BenchSpec spec;
      if (!bench_mod.empty()) {
        spec.family = BenchSpec::Mod;
        spec.sizes = bench_mod;
      } else if (!bench_random.empty()) {
        spec.family = BenchSpec::Random;
        spec.sizes = bench_random;
      } else {
        spec.family = BenchSpec::Files;
        spec.files = bench_files;
      }
      spec.alphabet_size = bench_alpha;
      spec.lambda = bench_lambda;
      spec.k = bench_k;
      spec.eta_trunc = bench_eta_trunc;
      spec.eta = bench_eta;
      spec.direction = parse_direction(bench_dir);
      spec.flavor = parse_flavor(bench_flavor);
      spec.n_max = bench_n_max;
      spec.reps = bench_reps;
      spec.seed = bench_seed;
      spec.timeout_secs = bench_timeout;
      spec.full_sweep = bench_full;
      spec.workdir = bench_workdir;
      auto backend = make_backend(bench_backend);
      BenchResult result = run_bench(spec, *backend);
      if (!bench_csv.empty())
        write_file(bench_csv, result.csv());
      else
        std::cout << result.csv();
      if (!bench_plot.empty()) write_file(bench_plot, result.gnuplot());
      return 0;
    }

    if (*lemmas_cmd) {
      Rat lambda = rational_from_double(lem_lambda);
      LemmaReport r1 = check_lemma1(lem_trials, lem_k, lambda, lem_max_states, lem_alpha, lem_word_len,
                                    lem_seed);
      LemmaReport r2 = check_lemma2(lem_trials, lem_k, lambda, lem_max_states, lem_alpha, lem_seed);
      std::cout << "lemma1 trials " << r1.trials << " violations " << r1.violations << "\n";
      std::cout << "lemma2 trials " << r2.trials << " violations " << r2.violations << "\n";
      if (!r1.ok() || !r2.ok()) {
        for (const auto& ce : r1.counterexamples) std::cerr << ce << "\n";
        for (const auto& ce : r2.counterexamples) std::cerr << ce << "\n";
        return kExitError;
      }
      return 0;
    }

    if (*brute_cmd) {
      auto oracle = brute_oracle.build();
      ExampleSet examples = build_example_set(*oracle, brute_k);
      BruteForceResult result =
          brute_force_minimal(examples, rational_from_double(brute_eta), brute_n_max, brute_force_flag);
      for (const auto& [n, loss] : result.best_loss)
        std::cout << "best-loss " << n << " " << loss << "\n";
      if (result.minimal_n > 0) {
        std::cout << "minimal " << result.minimal_n << "\n";
        if (!brute_out.empty() && result.witness) save_dfa_file(*result.witness, brute_out);
        return 0;
      }
      std::cerr << "no DFA within budget up to " << brute_n_max << " states\n";
      return kExitError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
