// Compares the OpenMP distance kernels against their serial reference
// implementations: same results required, wall time reported.
#include <chrono>
#include <cmath>
#include <iostream>

#include "confdfa/metric.hpp"
#include "confdfa/oracle.hpp"

using namespace confdfa;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double timed(F&& f) {
  auto t0 = clock_type::now();
  f();
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long m = argc > 1 ? std::atol(argv[1]) : 2000000;
  int k = argc > 2 ? std::atoi(argv[2]) : 20;

  GeometricOracle oracle(mod_language(4), 0.9);
  Dfa hyp = mod_language(3);
  LanguageView a = oracle_view(oracle);
  LanguageView b = dfa_view(hyp);

  DistanceEstimate serial_est, parallel_est;
  double ts = timed([&] { serial_est = estimate_distance_serial(oracle, a, b, m, 0.01, 42); });
  double tp = timed([&] { parallel_est = estimate_distance(oracle, a, b, m, 0.01, 42); });
  std::cout << "estimator m=" << m << " serial " << ts << "s parallel " << tp << "s value "
            << serial_est.value << (serial_est.value == parallel_est.value ? " MATCH" : " MISMATCH")
            << "\n";

  double ds = 0, dp = 0;
  double es = timed([&] { ds = exact_distance_truncated(oracle, a, b, k); });
  double ep = timed([&] { dp = exact_distance_truncated_parallel(oracle, a, b, k); });
  // The blocked reduction regroups the floating-point sum, so the weighted
  // kernel is compared up to rounding; the counting kernel above is exact.
  bool enum_ok = std::abs(ds - dp) <= 1e-12 * std::max(1.0, std::abs(ds));
  std::cout << "enumeration k=" << k << " serial " << es << "s parallel " << ep << "s value " << ds
            << (enum_ok ? " MATCH" : " MISMATCH") << "\n";

  return serial_est.value == parallel_est.value && enum_ok ? 0 : 1;
}
