// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ratlink/mechanism_io.hpp"
#include "ratlink/trajectory.hpp"

using namespace ratlink;

namespace {

const MechanismSpec& bennett() {
  static const MechanismSpec spec = load_mechanism_spec(RATLINK_DATA_DIR "/bennett.json");
  return spec;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_InverseKinematics(benchmark::State& state) {
  const auto m = bennett().build();
  IKOptions opts = bennett().ik_options();
  opts.exec = mode(state);
  const auto pose = direct_kinematics(m, JointAngle{2.0});
  for (auto _ : state) benchmark::DoNotOptimize(inverse_kinematics(m, pose, opts));
  label(state);
}
BENCHMARK(BM_InverseKinematics)->Arg(0)->Arg(1);

void BM_Segmentation(benchmark::State& state) {
  const auto m = bennett().build();
  const auto tr = make_traversal(m, tool_point(m), JointAngle{0.331}, JointAngle{5.893},
                                 TravelDirection::LongArc);
  BisectionOptions opts;
  opts.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(equidistant_segmentation(tr, 80, m.driving_axis(), opts));
  label(state);
}
BENCHMARK(BM_Segmentation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DirectKinematicsBatch(benchmark::State& state) {
  const auto m = bennett().build();
  std::vector<double> thetas(100'000);
  for (std::size_t i = 0; i < thetas.size(); ++i) thetas[i] = 6.283 * i / thetas.size();
  for (auto _ : state) benchmark::DoNotOptimize(direct_kinematics_batch(m, thetas, mode(state)));
  label(state);
}
BENCHMARK(BM_DirectKinematicsBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
