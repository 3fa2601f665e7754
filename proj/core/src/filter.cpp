#include "tdenoise/filter.hpp"

#include <algorithm>
#include <cmath>

#include "tdenoise/dft.hpp"

namespace tdenoise {

namespace {

struct GroupDims {
  std::size_t ps;
  std::size_t channels;
  std::size_t k;
};

GroupDims check_group(const RealTensor& group, const GlobalBasis& gb, const GroupBasis& ub) {
  if (group.order() < 3 || group.extent(1) != group.extent(2)) {
    throw ArgumentError("group must be ps x ps x C x K");
  }
  const GroupDims d{group.extent(1), group.extent(3), group.extent(4)};
  if (gb.patch_size != d.ps || gb.n_channels != d.channels ||
      gb.retained() != retained_slices(d.channels)) {
    throw ArgumentError("global basis does not match group shape");
  }
  if (ub.u_group.rows() != d.k || ub.u_group.cols() != d.k) {
    throw ArgumentError("group basis does not match group size");
  }
  return d;
}

// out(:, b) = sum_a m(a, b) in(:, a) for column blocks of length `len`
// (transpose = false), or sum_a m(b, a) in(:, a) (transpose = true).
template <typename T>
void mix_blocks(const T* in, T* out, std::size_t len, const Matrix<double>& m, bool transpose) {
  const std::size_t n = m.rows();
  std::fill(out, out + len * n, T{});
  for (std::size_t b = 0; b < n; ++b) {
    T* dst = out + len * b;
    for (std::size_t a = 0; a < n; ++a) {
      const double w = transpose ? m(b, a) : m(a, b);
      if (w == 0.0) continue;
      const T* src = in + len * a;
      for (std::size_t e = 0; e < len; ++e) dst[e] += w * src[e];
    }
  }
}

// y = u^H x v for column-major ps x ps blocks.
void sandwich_adjoint(const Complex* x, const Matrix<Complex>& u, const Matrix<Complex>& v,
                      Complex* tmp, Complex* y, std::size_t ps) {
  for (std::size_t c = 0; c < ps; ++c)
    for (std::size_t a = 0; a < ps; ++a) {
      Complex acc{};
      for (std::size_t r = 0; r < ps; ++r) acc += std::conj(u(r, a)) * x[r + ps * c];
      tmp[a + ps * c] = acc;
    }
  for (std::size_t b = 0; b < ps; ++b)
    for (std::size_t a = 0; a < ps; ++a) {
      Complex acc{};
      for (std::size_t c = 0; c < ps; ++c) acc += tmp[a + ps * c] * v(c, b);
      y[a + ps * b] = acc;
    }
}

// x = u y v^H for column-major ps x ps blocks.
void sandwich(const Complex* y, const Matrix<Complex>& u, const Matrix<Complex>& v, Complex* tmp,
              Complex* x, std::size_t ps) {
  for (std::size_t c = 0; c < ps; ++c)
    for (std::size_t r = 0; r < ps; ++r) {
      Complex acc{};
      for (std::size_t a = 0; a < ps; ++a) acc += u(r, a) * y[a + ps * c];
      tmp[r + ps * c] = acc;
    }
  for (std::size_t c = 0; c < ps; ++c)
    for (std::size_t r = 0; r < ps; ++r) {
      Complex acc{};
      for (std::size_t b = 0; b < ps; ++b) acc += tmp[r + ps * b] * std::conj(v(c, b));
      x[r + ps * c] = acc;
    }
}

}  // namespace

CoefficientTensor forward(const RealTensor& group, const GlobalBasis& gb, const GroupBasis& ub) {
  const GroupDims d = check_group(group, gb, ub);
  const std::size_t area = d.ps * d.ps;
  const std::size_t m = area * d.channels;
  const std::size_t s = gb.retained();
  const DftPair dft = dft_pair(d.channels);

  std::vector<double> mixed(m * d.k);
  mix_blocks(group.data().data(), mixed.data(), m, ub.u_group, false);

  CoefficientTensor out{ComplexTensor({d.ps, d.ps, s, d.k}), d.channels, 0};
  std::vector<Complex> slice(area);
  std::vector<Complex> tmp(area);
  auto dst = out.data.data();
  for (std::size_t k = 0; k < d.k; ++k) {
    const double* patch = mixed.data() + m * k;
    for (std::size_t j = 0; j < s; ++j) {
      std::fill(slice.begin(), slice.end(), Complex{});
      for (std::size_t ch = 0; ch < d.channels; ++ch) {
        const Complex f = dft.unitary(j, ch);
        const double* src = patch + area * ch;
        for (std::size_t e = 0; e < area; ++e) slice[e] += src[e] * f;
      }
      sandwich_adjoint(slice.data(), gb.u_row[j], gb.u_col[j], tmp.data(),
                       dst.data() + area * (j + s * k), d.ps);
    }
  }
  out.n_retained = d.ps * d.ps * d.channels * d.k;
  return out;
}

CoefficientTensor hard_threshold(CoefficientTensor c, double tau) {
  if (!(tau >= 0.0)) throw ArgumentError("hard_threshold: tau must be >= 0");
  const std::size_t area = c.data.extent(1) * c.data.extent(2);
  const std::size_t s = c.data.extent(3);
  const std::size_t k_count = c.data.extent(4);
  const double tau2 = tau * tau;
  auto data = c.data.data();
  std::size_t kept = 0;
  for (std::size_t k = 0; k < k_count; ++k)
    for (std::size_t j = 0; j < s; ++j) {
      const std::size_t mult = slice_multiplicity(j, c.n_channels);
      Complex* block = data.data() + area * (j + s * k);
      for (std::size_t e = 0; e < area; ++e) {
        if (std::norm(block[e]) < tau2) {
          block[e] = Complex{};
        } else {
          kept += mult;
        }
      }
    }
  c.n_retained = kept;
  return c;
}

RealTensor inverse(const CoefficientTensor& c, const GlobalBasis& gb, const GroupBasis& ub) {
  const std::size_t ps = c.data.extent(1);
  const std::size_t s = c.data.extent(3);
  const std::size_t k_count = c.data.extent(4);
  const std::size_t channels = c.n_channels;
  if (gb.patch_size != ps || gb.n_channels != channels || gb.retained() != s ||
      retained_slices(channels) != s) {
    throw ArgumentError("inverse: global basis does not match coefficients");
  }
  if (ub.u_group.rows() != k_count) throw ArgumentError("inverse: group basis size mismatch");
  const std::size_t area = ps * ps;
  const std::size_t m = area * channels;
  const DftPair dft = dft_pair(channels);

  std::vector<double> mixed(m * k_count, 0.0);
  std::vector<Complex> slice(area);
  std::vector<Complex> tmp(area);
  auto src = c.data.data();
  double residue = 0.0;
  for (std::size_t k = 0; k < k_count; ++k) {
    double* patch = mixed.data() + m * k;
    for (std::size_t j = 0; j < s; ++j) {
      sandwich(src.data() + area * (j + s * k), gb.u_row[j], gb.u_col[j], tmp.data(),
               slice.data(), ps);
      const double mult = static_cast<double>(slice_multiplicity(j, channels));
      if (mult == 1.0) {
        for (const Complex& v : slice) residue = std::max(residue, std::abs(v.imag()));
      }
      for (std::size_t ch = 0; ch < channels; ++ch) {
        // Re(conj(F[j, ch]) x), doubled for the implied mirror slice.
        const Complex f = dft.unitary(j, ch);
        const double fr = mult * f.real();
        const double fi = mult * f.imag();
        double* dst = patch + area * ch;
        for (std::size_t e = 0; e < area; ++e) dst[e] += fr * slice[e].real() + fi * slice[e].imag();
      }
    }
  }

  RealTensor out({ps, ps, channels, k_count});
  mix_blocks(mixed.data(), out.data().data(), m, ub.u_group, true);
  const double scale = frobenius_norm(out);
  if (residue > 1e-9 * std::max(scale, 1.0)) {
    throw InvariantError("inverse: self-conjugate slice has an imaginary residue");
  }
  return out;
}

ComplexTensor forward_full_spectrum(const RealTensor& group, const GlobalBasis& gb,
                                    const GroupBasis& ub) {
  const GroupDims d = check_group(group, gb, ub);
  ComplexTensor spectrum = fft_mode3(to_complex(group));
  ComplexTensor out({d.ps, d.ps, d.channels, d.k});
  for (std::size_t j = 0; j < d.channels; ++j) {
    const bool mirrored = j >= gb.retained();
    const std::size_t src = mirrored ? d.channels - j : j;
    const Matrix<Complex> u_row = mirrored ? gb.u_row[src].adjoint().transpose() : gb.u_row[src];
    const Matrix<Complex> u_col = mirrored ? gb.u_col[src].adjoint().transpose() : gb.u_col[src];
    const Matrix<Complex> left = u_row.adjoint();
    for (std::size_t k = 0; k < d.k; ++k) {
      Matrix<Complex> x(d.ps, d.ps);
      for (std::size_t c = 0; c < d.ps; ++c)
        for (std::size_t r = 0; r < d.ps; ++r) x(r, c) = spectrum(r, c, j, k);
      const Matrix<Complex> y = left * x * u_col;
      for (std::size_t c = 0; c < d.ps; ++c)
        for (std::size_t r = 0; r < d.ps; ++r) out(r, c, j, k) = y(r, c);
    }
  }
  return mode_product(out, to_complex(ub.u_group.transpose()), 4);
}

std::size_t hard_threshold_full_spectrum(ComplexTensor& c, double tau) {
  std::size_t kept = 0;
  for (Complex& v : c.data()) {
    if (std::abs(v) < tau) {
      v = Complex{};
    } else {
      ++kept;
    }
  }
  return kept;
}

RealTensor inverse_full_spectrum(const ComplexTensor& c, const GlobalBasis& gb,
                                 const GroupBasis& ub) {
  const std::size_t ps = c.extent(1);
  const std::size_t channels = c.extent(3);
  const std::size_t k_count = c.extent(4);
  ComplexTensor spectrum({ps, ps, channels, k_count});
  for (std::size_t j = 0; j < channels; ++j) {
    const bool mirrored = j >= gb.retained();
    const std::size_t src = mirrored ? channels - j : j;
    const Matrix<Complex> u_row = mirrored ? gb.u_row[src].adjoint().transpose() : gb.u_row[src];
    const Matrix<Complex> u_col = mirrored ? gb.u_col[src].adjoint().transpose() : gb.u_col[src];
    const Matrix<Complex> right = u_col.adjoint();
    for (std::size_t k = 0; k < k_count; ++k) {
      Matrix<Complex> y(ps, ps);
      for (std::size_t cc = 0; cc < ps; ++cc)
        for (std::size_t r = 0; r < ps; ++r) y(r, cc) = c(r, cc, j, k);
      const Matrix<Complex> x = u_row * y * right;
      for (std::size_t cc = 0; cc < ps; ++cc)
        for (std::size_t r = 0; r < ps; ++r) spectrum(r, cc, j, k) = x(r, cc);
    }
  }
  const ComplexTensor grouped = mode_product(spectrum, to_complex(ub.u_group), 4);
  const ComplexTensor signal = ifft_mode3(grouped);
  RealTensor out(signal.shape());
  double residue = 0.0;
  auto dst = out.data();
  auto src = signal.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = src[i].real();
    residue = std::max(residue, std::abs(src[i].imag()));
  }
  if (residue > 1e-9 * std::max(frobenius_norm(out), 1.0)) {
    throw InvariantError("inverse_full_spectrum: output is not real");
  }
  return out;
}

namespace {

// out = t x_mode m (real), strided without unfolding.
RealTensor mode_multiply(const RealTensor& t, const Matrix<double>& m, std::size_t mode) {
  const std::size_t extent = t.extent(mode);
  if (m.cols() != extent) throw ArgumentError("mode_multiply: dimension mismatch");
  std::size_t stride = 1;
  for (std::size_t i = 1; i < mode; ++i) stride *= t.extent(i);
  const std::size_t outer = t.size() / (extent * stride);
  Shape shape = t.shape();
  while (shape.size() < mode) shape.push_back(1);
  shape[mode - 1] = m.rows();
  RealTensor out(shape);
  auto src = t.data();
  auto dst = out.data();
  for (std::size_t o = 0; o < outer; ++o) {
    const double* in_block = src.data() + o * extent * stride;
    double* out_block = dst.data() + o * m.rows() * stride;
    for (std::size_t b = 0; b < extent; ++b) {
      const double* x = in_block + b * stride;
      for (std::size_t a = 0; a < m.rows(); ++a) {
        const double w = m(a, b);
        if (w == 0.0) continue;
        double* y = out_block + a * stride;
        for (std::size_t i = 0; i < stride; ++i) y[i] += w * x[i];
      }
    }
  }
  return out;
}

}  // namespace

RealTensor hosvd_forward(const RealTensor& group, const HosvdBasis& basis) {
  RealTensor c = mode_multiply(group, basis.u_row.transpose(), 1);
  c = mode_multiply(c, basis.u_col.transpose(), 2);
  c = mode_multiply(c, basis.u_color.transpose(), 3);
  return mode_multiply(c, basis.u_group.transpose(), 4);
}

RealTensor hosvd_inverse(const RealTensor& core, const HosvdBasis& basis) {
  RealTensor g = mode_multiply(core, basis.u_group, 4);
  g = mode_multiply(g, basis.u_color, 3);
  g = mode_multiply(g, basis.u_col, 2);
  return mode_multiply(g, basis.u_row, 1);
}

std::size_t hard_threshold_in_place(RealTensor& t, double tau) {
  if (!(tau >= 0.0)) throw ArgumentError("hard_threshold: tau must be >= 0");
  std::size_t kept = 0;
  for (double& v : t.data()) {
    if (std::abs(v) < tau) {
      v = 0.0;
    } else {
      ++kept;
    }
  }
  return kept;
}

}  // namespace tdenoise
