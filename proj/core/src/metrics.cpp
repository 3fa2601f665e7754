#include "tdenoise/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

namespace tdenoise {

namespace {

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (a.shape() != b.shape()) throw ArgumentError(std::string(what) + ": shape mismatch");
}

constexpr double kPeak = 255.0;

// Separable filter over the valid region: (h - n + 1) x (w - n + 1).
std::vector<double> filter_valid(const double* src, std::size_t h, std::size_t w,
                                 const std::vector<double>& kernel) {
  const std::size_t n = kernel.size();
  const std::size_t oh = h - n + 1;
  const std::size_t ow = w - n + 1;
  std::vector<double> rows(oh * w);
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t r = 0; r < oh; ++r) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += kernel[t] * src[r + t + h * c];
      rows[r + oh * c] = acc;
    }
  std::vector<double> out(oh * ow);
  for (std::size_t c = 0; c < ow; ++c)
    for (std::size_t r = 0; r < oh; ++r) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += kernel[t] * rows[r + oh * (c + t)];
      out[r + oh * c] = acc;
    }
  return out;
}

std::vector<double> gaussian_kernel(std::size_t size, double sigma) {
  std::vector<double> k(size);
  const double center = static_cast<double>(size - 1) / 2.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double x = static_cast<double>(i) - center;
    k[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace

double psnr(const Image& clean, const Image& test) {
  require_same_shape(clean, test, "psnr");
  auto a = clean.data();
  auto b = test.data();
  double sse = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sse += d * d;
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(a.size());
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

double ssim(const Image& clean, const Image& test) {
  require_same_shape(clean, test, "ssim");
  constexpr std::size_t kWindow = 11;
  const std::size_t h = clean.extent(1);
  const std::size_t w = clean.extent(2);
  const std::size_t channels = clean.extent(3);
  if (h < kWindow || w < kWindow) throw ArgumentError("ssim: image smaller than the 11x11 window");
  const std::vector<double> kernel = gaussian_kernel(kWindow, 1.5);
  const double c1 = (0.01 * kPeak) * (0.01 * kPeak);
  const double c2 = (0.03 * kPeak) * (0.03 * kPeak);
  const std::size_t plane = h * w;

  double total = 0.0;
  std::vector<double> xx(plane), yy(plane), xy(plane);
  for (std::size_t ch = 0; ch < channels; ++ch) {
    const double* x = clean.data().data() + plane * ch;
    const double* y = test.data().data() + plane * ch;
    for (std::size_t i = 0; i < plane; ++i) {
      xx[i] = x[i] * x[i];
      yy[i] = y[i] * y[i];
      xy[i] = x[i] * y[i];
    }
    const auto mx = filter_valid(x, h, w, kernel);
    const auto my = filter_valid(y, h, w, kernel);
    const auto mxx = filter_valid(xx.data(), h, w, kernel);
    const auto myy = filter_valid(yy.data(), h, w, kernel);
    const auto mxy = filter_valid(xy.data(), h, w, kernel);
    double sum = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
      const double vx = mxx[i] - mx[i] * mx[i];
      const double vy = myy[i] - my[i] * my[i];
      const double cov = mxy[i] - mx[i] * my[i];
      sum += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2)) /
             ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    total += sum / static_cast<double>(mx.size());
  }
  return total / static_cast<double>(channels);
}

double ergas(const Image& clean, const Image& test) {
  require_same_shape(clean, test, "ergas");
  const std::size_t plane = clean.extent(1) * clean.extent(2);
  const std::size_t bands = clean.extent(3);
  double acc = 0.0;
  for (std::size_t b = 0; b < bands; ++b) {
    const double* x = clean.data().data() + plane * b;
    const double* y = test.data().data() + plane * b;
    double mean = 0.0;
    double sse = 0.0;
    for (std::size_t i = 0; i < plane; ++i) {
      mean += x[i];
      const double d = x[i] - y[i];
      sse += d * d;
    }
    mean /= static_cast<double>(plane);
    if (mean == 0.0) throw ArgumentError("ergas: band " + std::to_string(b) + " has zero mean");
    const double rmse = std::sqrt(sse / static_cast<double>(plane));
    acc += (rmse / mean) * (rmse / mean);
  }
  return 100.0 * std::sqrt(acc / static_cast<double>(bands));
}

double sam(const Image& clean, const Image& test) {
  require_same_shape(clean, test, "sam");
  const std::size_t plane = clean.extent(1) * clean.extent(2);
  const std::size_t bands = clean.extent(3);
  auto x = clean.data();
  auto y = test.data();
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t p = 0; p < plane; ++p) {
    double dot = 0.0, nx = 0.0, ny = 0.0;
    for (std::size_t b = 0; b < bands; ++b) {
      const double a = x[p + plane * b];
      const double c = y[p + plane * b];
      dot += a * c;
      nx += a * a;
      ny += c * c;
    }
    if (nx == 0.0 || ny == 0.0) continue;
    const double cosine = std::clamp(dot / std::sqrt(nx * ny), -1.0, 1.0);
    total += std::acos(cosine);
    ++counted;
  }
  if (counted == 0) throw ArgumentError("sam: every pixel has a zero spectrum");
  return total / static_cast<double>(counted);
}

MetricBlock evaluate(const Image& clean, const Image& test) {
  return {psnr(clean, test), ssim(clean, test), ergas(clean, test), sam(clean, test)};
}

std::string metrics_csv_header() { return "method,sigma,psnr,ssim,ergas,sam,seconds"; }

std::string format_psnr(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::string metrics_csv_row(const std::string& method, const std::string& sigma,
                            const MetricBlock& m, const std::string& seconds) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f", m.ssim, m.ergas, m.sam);
  return method + "," + sigma + "," + format_psnr(m.psnr) + "," + buf + "," + seconds;
}

}  // namespace tdenoise
