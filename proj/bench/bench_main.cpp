// Times the parallel Monte Carlo driver against the serial reference on two
// representative workloads and checks that both produce identical bits.
//
//   msu_bench [trials] [threads]

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "msu/harness.hpp"

namespace {

using msu::Count;
using namespace msu::harness;

struct Workload {
  const char* name;
  msu::synth::GeneratorConfig cfg;
};

msu::synth::FeatureSpec feature(msu::synth::Role role, msu::Label card) {
  msu::synth::FeatureSpec f;
  f.role = role;
  f.cardinality = card;
  if (role == msu::synth::Role::xor_member) f.xor_group = 1;
  return f;
}

void run(const Workload& w, Count trials, int threads) {
  const MeasureSpec measures[] = {MeasureSpec::all("msu")};

  double t0 = omp_get_wtime();
  const std::vector<CurvePoint> serial =
      run_point_serial(w.cfg, trials, 1, measures);
  const double serial_s = omp_get_wtime() - t0;

  t0 = omp_get_wtime();
  const std::vector<CurvePoint> parallel =
      run_point(w.cfg, trials, 1, measures, threads);
  const double parallel_s = omp_get_wtime() - t0;

  const bool identical = serial[0].mean == parallel[0].mean &&
                         serial[0].stddev == parallel[0].stddev;
  std::printf("%-28s trials=%-6llu serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              w.name, static_cast<unsigned long long>(trials), serial_s,
              parallel_s, serial_s / parallel_s,
              identical ? "bitwise-identical" : "MISMATCH");
  if (!identical) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  Count trials = 2000;
  int threads = 0;
  if (argc > 1) trials = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) threads = std::atoi(argv[2]);

  Workload xor_pair{"xor_pair_n5000", {}};
  xor_pair.cfg.class_cardinality = 2;
  xor_pair.cfg.features = {feature(msu::synth::Role::xor_member, 2),
                           feature(msu::synth::Role::xor_member, 2)};
  xor_pair.cfg.n_rows = 5000;

  Workload wide{"informative_12x2_n5000", {}};
  wide.cfg.class_cardinality = 2;
  wide.cfg.features.assign(12, feature(msu::synth::Role::kononenko, 2));
  wide.cfg.n_rows = 5000;

  std::printf("threads: %d (0 = OpenMP default, max %d)\n", threads,
              omp_get_max_threads());
  run(xor_pair, trials, threads);
  run(wide, trials, threads);
  return 0;
}
