#include "tdenoise/dft.hpp"

#include <cmath>
#include <numbers>

namespace tdenoise {

DftPair dft_pair(std::size_t n) {
  if (n == 0) throw ArgumentError("dft_pair: size must be positive");
  std::vector<Complex> roots(n);
  for (std::size_t m = 0; 2 * m <= n; ++m) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    roots[m] = Complex(std::cos(angle), std::sin(angle));
    if (m != 0 && 2 * m != n) roots[n - m] = std::conj(roots[m]);
  }
  if (n % 2 == 0) roots[n / 2] = Complex(-1.0, 0.0);
  roots[0] = Complex(1.0, 0.0);

  DftPair pair{n, Matrix<Complex>(n, n), Matrix<Complex>(n, n)};
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex w = roots[(j * k) % n];
      pair.unnormalized(j, k) = w;
      pair.unitary(j, k) = w * scale;
    }
  }
  return pair;
}

namespace {

void require_mode3(std::size_t order) {
  if (order < 3) throw ArgumentError("fft_mode3 requires a tensor of order >= 3");
}

}  // namespace

ComplexTensor fft_mode3(const ComplexTensor& t) {
  require_mode3(t.order());
  return mode_product(t, dft_pair(t.extent(3)).unitary, 3);
}

ComplexTensor fft_mode3(const RealTensor& t) { return fft_mode3(to_complex(t)); }

ComplexTensor ifft_mode3(const ComplexTensor& t) {
  require_mode3(t.order());
  return mode_product(t, dft_pair(t.extent(3)).unitary.adjoint(), 3);
}

}  // namespace tdenoise
