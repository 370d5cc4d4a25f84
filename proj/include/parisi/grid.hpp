#pragma once

#include <cstddef>
#include <cstdlib>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parisi::grid {

/// Every grid sweep in the library runs through one of the two drivers
/// below.  Serial is the reference implementation; Parallel is the OpenMP
/// kernel.  Both must produce bitwise-identical results (the tests compare
/// them), which holds because each index is evaluated independently and the
/// reductions are order-insensitive.
enum class Exec { Serial, Parallel };

/// Thread budget: PARISI_ZERO_THREADS caps the OpenMP default when set.
inline int max_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("PARISI_ZERO_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

struct MinResult {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

namespace detail {
inline bool better(double v, std::size_t i, const MinResult& best) {
  return v < best.value || (v == best.value && i < best.index);
}
}  // namespace detail

/// Minimum of f(0..n-1) with the smallest attaining index.  The lexicographic
/// tie-break makes the result independent of how the range is partitioned.
template <class F>
MinResult min_reduce(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
  MinResult best;
  best.index = n;
  if (n == 0) return best;
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
    const int nt = max_threads();
    std::vector<MinResult> per(nt);
    for (auto& r : per) r.index = n;
#pragma omp parallel num_threads(nt)
    {
      const int t = omp_get_thread_num();
      MinResult local;
      local.index = n;
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        double v = f(static_cast<std::size_t>(i));
        if (detail::better(v, static_cast<std::size_t>(i), local)) {
          local.value = v;
          local.index = static_cast<std::size_t>(i);
        }
      }
      per[t] = local;
    }
    for (const auto& r : per) {
      if (r.index < n && detail::better(r.value, r.index, best)) best = r;
    }
    return best;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) {
    double v = f(i);
    if (detail::better(v, i, best)) {
      best.value = v;
      best.index = i;
    }
  }
  return best;
}

/// Run f(i) for i in [0, n); f writes its own slot of a preallocated output,
/// so the merge order is fixed by the index regardless of scheduling.
template <class F>
void for_each_index(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
    const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      f(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace parisi::grid
