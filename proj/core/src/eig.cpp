#include "tdenoise/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tdenoise {

namespace {

double real_part(double v) { return v; }
double real_part(const Complex& v) { return v.real(); }

template <typename T>
double off_diagonal_norm(const Matrix<T>& a) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (r != c) s += squared_magnitude(a(r, c));
  return std::sqrt(s);
}

// a <- J^H a J and v <- v J for the rotation zeroing a(p, q).
template <typename T>
void rotate(Matrix<T>& a, Matrix<T>& v, std::size_t p, std::size_t q) {
  const T apq = a(p, q);
  const double mag = std::abs(apq);
  const T phase = apq / mag;
  const double tau = (real_part(a(q, q)) - real_part(a(p, p))) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const T s_e = s * phase;
  const T s_ec = s * conjugate(phase);
  const std::size_t n = a.rows();

  for (std::size_t r = 0; r < n; ++r) {
    const T arp = a(r, p);
    const T arq = a(r, q);
    a(r, p) = c * arp - s_ec * arq;
    a(r, q) = s_e * arp + c * arq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const T apk = a(p, k);
    const T aqk = a(q, k);
    a(p, k) = c * apk - s_e * aqk;
    a(q, k) = s_ec * apk + c * aqk;
  }
  a(p, q) = T{};
  a(q, p) = T{};
  a(p, p) = real_part(a(p, p));
  a(q, q) = real_part(a(q, q));

  for (std::size_t r = 0; r < n; ++r) {
    const T vrp = v(r, p);
    const T vrq = v(r, q);
    v(r, p) = c * vrp - s_ec * vrq;
    v(r, q) = s_e * vrp + c * vrq;
  }
}

template <typename T>
void normalize_phase(std::span<T> column) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double m = std::abs(column[i]);
    if (m > best_mag * (1.0 + 1e-12)) {
      best_mag = m;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  const T unit = conjugate(column[best]) / best_mag;
  for (T& x : column) x *= unit;
  column[best] = best_mag;
}

#if defined(__GNUC__) && !defined(__clang__) && defined(__x86_64__) && defined(__linux__)
#define TDENOISE_CLONES __attribute__((target_clones("avx2", "default")))
#else
#define TDENOISE_CLONES
#endif

// Symmetric eigensolver on a column-major n x n matrix `a` (overwritten).
// Householder reduction to tridiagonal form, explicit Q, then implicit QL with
// Wilkinson shifts accumulating into z. Eigenvalues land in d, unsorted, with
// eigenvector i in column i of z. All loops are element-wise or fixed-order
// reductions, so every clone produces the same bits.
TDENOISE_CLONES
bool tridiagonal_ql(std::size_t n, double* a, double* z, double* d, double* e, double* work) {
  double* tau = work;
  double* p = work + n;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double* x = a + (k + 1) + n * k;
    double sigma = 0.0;
    for (std::size_t i = 1; i < m; ++i) sigma += x[i] * x[i];
    const double alpha = x[0];
    if (sigma == 0.0) {
      tau[k] = 0.0;
      e[k] = alpha;
      continue;
    }
    const double norm = std::sqrt(alpha * alpha + sigma);
    const double beta = alpha >= 0.0 ? -norm : norm;
    tau[k] = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (std::size_t i = 1; i < m; ++i) x[i] *= scale;
    x[0] = 1.0;
    e[k] = beta;

    double* sub = a + (k + 1) * (n + 1);
    for (std::size_t i = 0; i < m; ++i) p[i] = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double vj = tau[k] * x[j];
      const double* col = sub + n * j;
      for (std::size_t i = 0; i < m; ++i) p[i] += col[i] * vj;
    }
    double pv = 0.0;
    for (std::size_t i = 0; i < m; ++i) pv += p[i] * x[i];
    const double half = 0.5 * tau[k] * pv;
    for (std::size_t i = 0; i < m; ++i) p[i] -= half * x[i];
    for (std::size_t j = 0; j < m; ++j) {
      double* col = sub + n * j;
      const double vj = x[j];
      const double wj = p[j];
      for (std::size_t i = 0; i < m; ++i) col[i] -= x[i] * wj + p[i] * vj;
    }
  }
  for (std::size_t k = 0; k < n; ++k) d[k] = a[k * (n + 1)];
  if (n >= 2) e[n - 2] = a[(n - 1) + n * (n - 2)];
  e[n - 1] = 0.0;

  for (std::size_t i = 0; i < n * n; ++i) z[i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) z[i * (n + 1)] = 1.0;
  for (std::size_t k = n >= 2 ? n - 2 : 0; k-- > 0;) {
    if (tau[k] == 0.0) continue;
    const std::size_t m = n - k - 1;
    const double* v = a + (k + 1) + n * k;
    for (std::size_t j = k + 1; j < n; ++j) {
      double* col = z + (k + 1) + n * j;
      double t = 0.0;
      for (std::size_t i = 0; i < m; ++i) t += v[i] * col[i];
      t *= tau[k];
      for (std::size_t i = 0; i < m; ++i) col[i] -= t * v[i];
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_iterations = 30 * n;
  std::size_t iterations = 0;
  double shift = 0.0;
  double scale = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    scale = std::max(scale, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m + 1 < n && std::abs(e[m]) > eps * scale) ++m;
    if (m > l) {
      do {
        if (++iterations > max_iterations) return false;
        double g = d[l];
        double q = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::sqrt(q * q + 1.0);
        if (q < 0.0) r = -r;
        d[l] = e[l] / (q + r);
        d[l + 1] = e[l] * (q + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        shift += h;

        q = d[m];
        double c = 1.0;
        double c2 = 1.0;
        double c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * q;
          r = std::sqrt(q * q + e[i] * e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = q / r;
          q = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          double* zi = z + n * i;
          double* zj = zi + n;
          for (std::size_t k = 0; k < n; ++k) {
            const double t = zj[k];
            zj[k] = s * zi[k] + c * t;
            zi[k] = c * zi[k] - s * t;
          }
        }
        q = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * q;
        d[l] = c * q;
      } while (std::abs(e[l]) > eps * scale);
    }
    d[l] += shift;
    e[l] = 0.0;
  }
  return true;
}

}  // namespace

template <typename T>
EigenDecomposition<T> hermitian_eig(const Matrix<T>& g) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw ArgumentError("hermitian_eig: matrix must be square");
  const double norm = frobenius_norm(g);
  if (frobenius_norm(g - g.adjoint()) > 1e-8 * norm) {
    throw ArgumentError("hermitian_eig: matrix is not Hermitian");
  }

  Matrix<T> a = g;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = real_part(a(i, i));
  Matrix<T> v = Matrix<T>::identity(n);

  const double target = 1e-12 * norm;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        rotate(a, v, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return real_part(a(x, x)) > real_part(a(y, y));
  });

  EigenDecomposition<T> out{std::vector<double>(n), Matrix<T>(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = real_part(a(order[i], order[i]));
    auto src = v.column(order[i]);
    auto dst = out.vectors.column(i);
    std::copy(src.begin(), src.end(), dst.begin());
    normalize_phase(dst);
  }
  return out;
}

EigenDecomposition<double> symmetric_eig(const Matrix<double>& g) {
  const std::size_t n = g.rows();
  if (g.cols() != n) throw ArgumentError("symmetric_eig: matrix must be square");
  EigenDecomposition<double> out{std::vector<double>(n, 0.0), Matrix<double>::identity(n)};
  if (n == 0 || frobenius_norm(g) == 0.0) return out;

  thread_local std::vector<double> buffer;
  buffer.assign(2 * n * n + 4 * n, 0.0);
  double* a = buffer.data();
  double* z = a + n * n;
  double* d = z + n * n;
  double* e = d + n;
  auto src = g.data();
  std::copy(src.begin(), src.end(), a);
  if (!tridiagonal_ql(n, a, z, d, e, e + n)) {
    throw InvariantError("symmetric_eig: QL iteration did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return d[x] != d[y] ? d[x] > d[y] : x < y;
  });
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] = d[order[i]];
    auto dst = out.vectors.column(i);
    const double* col = z + n * order[i];
    std::copy(col, col + n, dst.begin());
    normalize_phase(dst);
  }
  return out;
}

template EigenDecomposition<double> hermitian_eig(const Matrix<double>&);
template EigenDecomposition<Complex> hermitian_eig(const Matrix<Complex>&);

}  // namespace tdenoise
