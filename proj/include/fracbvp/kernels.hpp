#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path; the two produce bitwise identical results because each output
// element is computed by the same sequential code in both.

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracbvp {

class GreenKernel;
class QuadratureGrid;

namespace kernels {

enum class Exec { serial, parallel };

inline constexpr Exec kDefaultExec = Exec::parallel;

int max_threads() noexcept;

/// Calls fn(i) for every i in [0, n); fn must only write state owned by index i.
template <typename Fn>
void for_each_index(std::size_t n, Fn&& fn, Exec exec = kDefaultExec) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

/// out[i] = fn(i) for i in [0, n).
template <typename Fn>
void tabulate(std::span<double> out, Fn&& fn, Exec exec = kDefaultExec) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  if (exec == Exec::serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = fn(static_cast<std::size_t>(i));
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = fn(static_cast<std::size_t>(i));
}

/// Row-major Nystrom matrix K[i*n + j] = w_j * G(s_i, s_j) on the grid nodes.
std::vector<double> assemble_nystrom(const GreenKernel& kernel, const QuadratureGrid& grid,
                                     Exec exec = kDefaultExec);

/// y = K x for a row-major square matrix.
void matvec(std::span<const double> matrix, std::span<const double> x, std::span<double> y,
            Exec exec = kDefaultExec);

/// Values of G(t_i, s_j) on the tensor grid rows x cols, row-major.
std::vector<double> green_table(const GreenKernel& kernel, std::span<const double> rows,
                                std::span<const double> cols, Exec exec = kDefaultExec);

}  // namespace kernels
}  // namespace fracbvp
