#pragma once

#include <string>

#include "tdenoise/patch.hpp"

namespace tdenoise {

struct MetricBlock {
  double psnr = 0.0;   // dB, +inf for identical inputs
  double ssim = 0.0;
  double ergas = 0.0;
  double sam = 0.0;    // radians
};

/// 10 log10(255^2 / MSE) over all entries; +inf when MSE is 0.
double psnr(const Image& clean, const Image& test);

/// Mean SSIM over all fully-contained 11x11 Gaussian windows (std 1.5),
/// K1 = 0.01, K2 = 0.03, dynamic range 255, averaged over channels.
double ssim(const Image& clean, const Image& test);

/// 100 sqrt(mean_b (RMSE_b / mu_b)^2) with mu_b the clean band mean.
double ergas(const Image& clean, const Image& test);

/// Mean spectral angle (radians) over pixels whose spectra are nonzero in
/// both images.
double sam(const Image& clean, const Image& test);

MetricBlock evaluate(const Image& clean, const Image& test);

/// "method,sigma,psnr,ssim,ergas,sam,seconds"
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& method, const std::string& sigma,
                            const MetricBlock& m, const std::string& seconds);
std::string format_psnr(double psnr);

}  // namespace tdenoise
