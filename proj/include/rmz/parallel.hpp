#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rmz {

// Hot loops (harness trials, contour grids, sample sweeps) are written as
// index-parallel kernels: every index computes its value independently and
// reductions happen serially afterwards, so the OpenMP path is bit-identical
// to the serial reference regardless of schedule or thread count.
enum class Exec { Serial, Parallel };

#ifdef _OPENMP
inline constexpr bool kHaveOpenMP = true;
#else
inline constexpr bool kHaveOpenMP = false;
#endif

inline Exec default_exec() { return kHaveOpenMP ? Exec::Parallel : Exec::Serial; }

template <typename Fn>
void for_index(Exec exec, std::ptrdiff_t n, Fn&& fn) {
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(guided)
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
    return;
#endif
  }
  for (std::ptrdiff_t i = 0; i < n; ++i) fn(static_cast<std::size_t>(i));
}

// Fill out[i] = fn(i) for i in [0, n). out is resized.
template <typename T, typename Fn>
void map_index(Exec exec, std::size_t n, std::vector<T>& out, Fn&& fn) {
  out.resize(n);
  for_index(exec, static_cast<std::ptrdiff_t>(n),
            [&](std::size_t i) { out[i] = fn(i); });
}

// Deterministic argmax: ties break toward the smallest index.
inline std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

}  // namespace rmz
