#include "fracbvp/kernels.hpp"

#include "fracbvp/errors.hpp"
#include "fracbvp/green_kernel.hpp"
#include "fracbvp/phi_calculus.hpp"

namespace fracbvp::kernels {

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> assemble_nystrom(const GreenKernel& kernel, const QuadratureGrid& grid, Exec exec) {
  const std::size_t n = grid.size();
  const auto y = grid.phi_nodes();
  const auto w = grid.weights();
  std::vector<double> matrix(n * n);
  // G is evaluated in the kernel's phi coordinate; the grid's map must agree.
  if (!kernel.params().phi.same_map(grid.phi()))
    throw ConfigError("nystrom assembly: grid and kernel use different phi maps");
  for_each_index(n, [&](std::size_t i) {
    double* row = matrix.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] = w[j] * kernel.at_phi(y[i], y[j]);
  }, exec);
  return matrix;
}

void matvec(std::span<const double> matrix, std::span<const double> x, std::span<double> y, Exec exec) {
  const std::size_t n = x.size();
  if (matrix.size() != n * n || y.size() != n) throw ConfigError("matvec: dimension mismatch");
  for_each_index(n, [&](std::size_t i) {
    const double* row = matrix.data() + i * n;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += row[j] * x[j];
    y[i] = sum;
  }, exec);
}

std::vector<double> green_table(const GreenKernel& kernel, std::span<const double> rows,
                                std::span<const double> cols, Exec exec) {
  const PhiMap& phi = kernel.params().phi;
  std::vector<double> yc(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) yc[j] = phi.eval(cols[j]);
  std::vector<double> out(rows.size() * cols.size());
  for_each_index(rows.size(), [&](std::size_t i) {
    const double yt = phi.eval(rows[i]);
    for (std::size_t j = 0; j < cols.size(); ++j) out[i * cols.size() + j] = kernel.at_phi(yt, yc[j]);
  }, exec);
  return out;
}

}  // namespace fracbvp::kernels
