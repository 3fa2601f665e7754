#include "tdenoise/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "tdenoise/circulant.hpp"
#include "tdenoise/dft.hpp"
#include "tdenoise/eig.hpp"
#include "tdenoise/filter.hpp"
#include "tdenoise/random.hpp"
#include "tdenoise/transforms.hpp"

namespace tdenoise {

namespace {

constexpr double kTolerance = 1e-8;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : seed_(seed) {}

  double normal() { return standard_normal(seed_, next_++); }
  std::size_t pick(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(mix64(seed_ ^ mix64(next_++)) % (hi - lo + 1));
  }
  RealTensor tensor(Shape shape) {
    RealTensor t(std::move(shape));
    for (double& v : t.data()) v = normal();
    return t;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t next_ = 0;
};

double relative(double err, double scale) { return err / std::max(scale, 1e-300); }

Matrix<double> group_mode_gram(const RealTensor& t) {
  return mode_gram(t, t.order());
}

OracleResult make(std::string name, std::size_t instances, double worst) {
  return {std::move(name), instances, worst, kTolerance, worst <= kTolerance};
}

// N x N block-diagonal complex matrix with the given blocks.
Matrix<Complex> block_diag(const std::vector<Matrix<Complex>>& blocks) {
  const std::size_t r = blocks.front().rows();
  const std::size_t c = blocks.front().cols();
  Matrix<Complex> m(r * blocks.size(), c * blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i) m(b * r + i, b * c + j) = blocks[b](i, j);
  return m;
}

// Bases for all N slices, mirrors conjugated.
std::vector<Matrix<Complex>> full_bases(const std::vector<Matrix<Complex>>& retained, std::size_t n) {
  std::vector<Matrix<Complex>> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (j < retained.size()) {
      out.push_back(retained[j]);
    } else {
      Matrix<Complex> m = retained[n - j];
      for (Complex& v : m.data()) v = std::conj(v);
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<RealTensor> patches_of(const RealTensor& group) {
  const std::size_t ps1 = group.extent(1);
  const std::size_t ps2 = group.extent(2);
  const std::size_t n = group.extent(3);
  const std::size_t stride = ps1 * ps2 * n;
  std::vector<RealTensor> out;
  for (std::size_t k = 0; k < group.extent(4); ++k) {
    RealTensor p({ps1, ps2, n});
    std::copy(group.data().begin() + k * stride, group.data().begin() + (k + 1) * stride,
              p.data().begin());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

OracleResult oracle_circulant_gram(std::size_t instances, std::uint64_t seed) {
  Sampler rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = rng.pick(2, 6);
    const RealTensor p = rng.tensor({rng.pick(1, 5), rng.pick(1, 5), n});
    const Matrix<double> b = bcirc_patch(p);
    const Matrix<double> g = b * b.transpose();
    const std::size_t br = g.rows() / n;
    double err = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < br; ++j)
          for (std::size_t i = 0; i < br; ++i)
            err = std::max(err, std::abs(g(r * br + i, c * br + j) -
                                         g(((r + 1) % n) * br + i, ((c + 1) % n) * br + j)));
    worst = std::max(worst, relative(err, frobenius_norm(g)));
  }
  return make("bcirc gram is block circulant", instances, worst);
}

OracleResult oracle_circulant_norm(std::size_t instances, std::uint64_t seed) {
  Sampler rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = t % 2 == 0 ? 3 : rng.pick(2, 8);
    const Shape shape{rng.pick(1, 6), rng.pick(1, 6), n};
    const RealTensor a = rng.tensor(shape);
    const RealTensor b = rng.tensor(shape);
    RealTensor diff(shape);
    for (std::size_t i = 0; i < diff.size(); ++i) diff.data()[i] = a.data()[i] - b.data()[i];
    const Matrix<double> ca = bcirc_patch(a);
    const Matrix<double> cb = bcirc_patch(b);
    const double lhs = frobenius_norm(ca - cb);
    const double rhs = std::sqrt(static_cast<double>(n)) * frobenius_norm(diff);
    worst = std::max(worst, relative(std::abs(lhs - rhs), rhs));
  }
  return make("bcirc norm equals sqrt(N) patch norm", instances, worst);
}

OracleResult oracle_group_factor(std::size_t instances, std::uint64_t seed) {
  Sampler rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = rng.pick(2, 5);
    const std::size_t k = rng.pick(2, 8);
    const RealTensor group = rng.tensor({rng.pick(2, 4), rng.pick(2, 4), n, k});
    const Matrix<double> g = group_mode_gram(group);
    const Matrix<double> gb = group_mode_gram(bcirc_group(group));
    Matrix<double> scaled = g;
    for (double& v : scaled.data()) v *= static_cast<double>(n);
    worst = std::max(worst, relative(max_abs_difference(gb, scaled), frobenius_norm(scaled)));

    // Same factor up to column signs.
    const auto ea = symmetric_eig(g);
    const auto eb = symmetric_eig(gb);
    for (std::size_t c = 0; c < k; ++c) {
      double dot = 0.0;
      for (std::size_t r = 0; r < k; ++r) dot += ea.vectors(r, c) * eb.vectors(r, c);
      worst = std::max(worst, std::abs(1.0 - std::abs(dot)));
    }
  }
  return make("group factor unchanged by bcirc", instances, worst);
}

OracleResult oracle_block_diagonalization(std::size_t instances, std::uint64_t seed) {
  Sampler rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = t % 2 == 0 ? 3 : rng.pick(2, 8);
    const RealTensor p = rng.tensor({rng.pick(1, 5), rng.pick(1, 5), n});
    const DftPair dft = dft_pair(n);
    const Matrix<Complex> left = kron(dft.unitary, Matrix<Complex>::identity(p.extent(1)));
    const Matrix<Complex> right = kron(dft.unitary, Matrix<Complex>::identity(p.extent(2)));
    const Matrix<Complex> got = left * to_complex(bcirc_patch(p)) * right.adjoint();
    const Matrix<Complex> expected = block_diagonal(mode_product(to_complex(p), dft.unnormalized, 3));
    worst = std::max(worst, relative(max_abs_difference(got, expected), frobenius_norm(expected)));
  }
  return make("Fourier block-diagonalises bcirc", instances, worst);
}

OracleResult oracle_core_norm(std::size_t instances, std::uint64_t seed) {
  Sampler rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = t % 2 == 0 ? 3 : rng.pick(2, 6);
    const std::size_t ps = rng.pick(2, 4);
    const std::size_t k = rng.pick(2, 6);
    const RealTensor group = rng.tensor({ps, ps, n, k});
    const GlobalBasis gb = train_global_basis(patches_of(group));
    const GroupBasis ub = local_pca(group, PcaMode::full);
    const auto rows = full_bases(gb.u_row, n);
    const auto cols = full_bases(gb.u_col, n);
    const DftPair dft = dft_pair(n);

    // Per-slice path on P x_3 W.
    const ComplexTensor hat = mode_product(to_complex(group), dft.unnormalized, 3);
    ComplexTensor fdiag({ps, ps, n, k});
    for (std::size_t kk = 0; kk < k; ++kk)
      for (std::size_t j = 0; j < n; ++j) {
        Matrix<Complex> s(ps, ps);
        for (std::size_t c = 0; c < ps; ++c)
          for (std::size_t r = 0; r < ps; ++r) s(r, c) = hat(r, c, j, kk);
        const Matrix<Complex> y = rows[j].adjoint() * s * cols[j];
        for (std::size_t c = 0; c < ps; ++c)
          for (std::size_t r = 0; r < ps; ++r) fdiag(r, c, j, kk) = y(r, c);
      }
    fdiag = mode_product(fdiag, to_complex(ub.u_group.transpose()), 4);

    // Explicit bcirc path with the induced transforms (F kron I)^H bdiag(U(j)).
    const Matrix<Complex> fi = kron(dft.unitary, Matrix<Complex>::identity(ps));
    const Matrix<Complex> u_row = fi.adjoint() * block_diag(rows);
    const Matrix<Complex> u_col = fi.adjoint() * block_diag(cols);
    const ComplexTensor circ = to_complex(bcirc_group(group));
    ComplexTensor bcirc_core({ps * n, ps * n, k});
    for (std::size_t kk = 0; kk < k; ++kk) {
      Matrix<Complex> s(ps * n, ps * n);
      for (std::size_t c = 0; c < ps * n; ++c)
        for (std::size_t r = 0; r < ps * n; ++r) s(r, c) = circ(r, c, kk);
      const Matrix<Complex> y = u_row.adjoint() * s * u_col;
      for (std::size_t c = 0; c < ps * n; ++c)
        for (std::size_t r = 0; r < ps * n; ++r) bcirc_core(r, c, kk) = y(r, c);
    }
    bcirc_core = mode_product(bcirc_core, to_complex(ub.u_group.transpose()), 3);

    const double a = frobenius_norm(fdiag);
    const double b = frobenius_norm(bcirc_core);
    worst = std::max(worst, relative(std::abs(a - b), b));

    // The production full-spectrum transform is the same core up to sqrt(N).
    ComplexTensor prod = forward_full_spectrum(group, gb, ub);
    for (Complex& v : prod.data()) v *= std::sqrt(static_cast<double>(n));
    worst = std::max(worst, relative(max_abs_difference(prod, fdiag), a));
  }
  return make("core norm: Fourier path equals bcirc path", instances, worst);
}

std::vector<OracleResult> run_theorem_oracles(std::size_t instances, std::uint64_t seed,
                                              double tolerance) {
  std::vector<OracleResult> out{
      oracle_circulant_gram(instances, mix64(seed + 1)),
      oracle_circulant_norm(instances, mix64(seed + 2)),
      oracle_group_factor(instances, mix64(seed + 3)),
      oracle_block_diagonalization(instances, mix64(seed + 4)),
      oracle_core_norm(instances, mix64(seed + 5)),
  };
  for (OracleResult& r : out) {
    r.tolerance = tolerance;
    r.passed = r.worst <= tolerance;
  }
  return out;
}

}  // namespace tdenoise
