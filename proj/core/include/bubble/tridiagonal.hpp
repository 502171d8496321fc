#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace bubble {

/// Solves a tridiagonal system by forward elimination and back substitution.
///
/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored.
inline std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                             std::span<const double> diag,
                                             std::span<const double> upper,
                                             std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n || n == 0) {
    throw std::invalid_argument("tridiagonal: inconsistent sizes");
  }
  std::vector<double> c(n);
  std::vector<double> x(n);
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) throw std::runtime_error("tridiagonal: singular pivot");
  c[0] = upper[0] / pivot;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw std::runtime_error("tridiagonal: singular pivot");
    }
    c[i] = upper[i] / pivot;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

}  // namespace bubble
