// Times the serial reference path against the OpenMP path of each grid
// kernel and reports the speedup.  Also asserts that both paths agree
// bitwise, since that is the contract the tests rely on.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "parisi/certifier.hpp"
#include "parisi/solver.hpp"

using namespace parisi;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_ms(F&& f, int reps) {
  // one warmup, then best of reps
  f();
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.2f ms %10.2f ms %7.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  const auto model = MixtureModel::parse("5/7:3,2/7:16");
  const auto sol = solve_2rsb(model, 0.743, 0.747);

  std::printf("threads: %d\n", grid::max_threads());
  std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    const double fine = 2e-6;  // half a million grid points
    const auto a = chen_sen_verify(model, sol.measure, fine, grid::Exec::Serial);
    const auto b = chen_sen_verify(model, sol.measure, fine, grid::Exec::Parallel);
    if (a.min_g != b.min_g || a.min_g_at != b.min_g_at) {
      std::fprintf(stderr, "criterion grid: serial/openmp mismatch\n");
      return 1;
    }
    row("criterion grid (5e5 pts)",
        time_ms([&] { chen_sen_verify(model, sol.measure, fine, grid::Exec::Serial); }, 3),
        time_ms([&] { chen_sen_verify(model, sol.measure, fine, grid::Exec::Parallel); }, 3));
  }

  {
    const double step = 2.5e-5;  // 2e4 independent root solves
    const auto a = trace_f2_curve(model, 0.2, 0.7, step, grid::Exec::Serial);
    const auto b = trace_f2_curve(model, 0.2, 0.7, step, grid::Exec::Parallel);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].z2 != b[i].z2) {
        std::fprintf(stderr, "curve trace: serial/openmp mismatch\n");
        return 1;
      }
    }
    row("f2 curve trace (2e4 pts)",
        time_ms([&] { trace_f2_curve(model, 0.2, 0.7, step, grid::Exec::Serial); }, 3),
        time_ms([&] { trace_f2_curve(model, 0.2, 0.7, step, grid::Exec::Parallel); }, 3));
  }

  {
    CertifyOptions serial_opts;
    serial_opts.grid_step = 2e-5;
    serial_opts.exec = grid::Exec::Serial;
    CertifyOptions parallel_opts = serial_opts;
    parallel_opts.exec = grid::Exec::Parallel;
    const Rectangle rect{0.743, 0.747, 3.17, 3.25};
    row("rectangle certificate",
        time_ms([&] { certify_rectangle(model, rect, serial_opts); }, 2),
        time_ms([&] { certify_rectangle(model, rect, parallel_opts); }, 2));
  }

  return 0;
}
