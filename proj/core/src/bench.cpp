#include "tdenoise/bench.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <regex>
#include <sstream>

#include "tdenoise/errors.hpp"
#include "tdenoise/io.hpp"
#include "tdenoise/noise.hpp"
#include "tdenoise/pipeline.hpp"
#include "tdenoise/random.hpp"
#include "tdenoise/synthetic.hpp"

namespace tdenoise {

namespace {

using json = nlohmann::json;

std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "n/a";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sigma_label(double sigma) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", sigma);
  return buf;
}

std::string metric_cells(const MetricBlock& m) {
  return fixed(m.psnr, 2) + " | " + fixed(m.ssim, 4) + " | " + fixed(m.ergas, 2) + " | " +
         fixed(m.sam, 4);
}

MetricBlock nan_block() {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  return {nan, nan, nan, nan};
}

MetricBlock mean_of(const std::vector<const BenchRow*>& rows) {
  MetricBlock m{};
  for (const BenchRow* r : rows) {
    m.psnr += r->metrics.psnr;
    m.ssim += r->metrics.ssim;
    m.ergas += r->metrics.ergas;
    m.sam += r->metrics.sam;
  }
  const double n = static_cast<double>(rows.size());
  return {m.psnr / n, m.ssim / n, m.ergas / n, m.sam / n};
}

std::uint64_t noise_seed(std::uint64_t seed, std::size_t image, std::size_t sigma) {
  return mix64(seed ^ mix64((static_cast<std::uint64_t>(image) << 32) | sigma));
}

}  // namespace

BenchConfig BenchConfig::from_json(const std::string& text) {
  BenchConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ArgumentError("bench config must be a JSON object");
    for (const auto& item : j.value("images", json::array())) {
      if (item.is_string()) {
        cfg.images.push_back({item.get<std::string>(), item.get<std::string>()});
      } else if (item.is_object() && item.contains("path")) {
        const auto path = item.at("path").get<std::string>();
        cfg.images.push_back({item.value("name", path), path});
      } else {
        throw ArgumentError("bench image entries are strings or {\"path\": ...} objects");
      }
    }
    for (const auto& m : j.value("methods", json::array())) {
      cfg.methods.push_back(parse_method(m.get<std::string>()));
    }
    for (const auto& s : j.value("sigmas", json::array())) {
      const double sigma = s.get<double>();
      if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("sigma must be >= 0");
      cfg.sigmas.push_back(sigma);
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    if (cfg.threads == 0) throw ArgumentError("threads must be >= 1");
    if (j.contains("gamma")) {
      cfg.gamma = j.at("gamma").get<double>();
      if (!(*cfg.gamma > 0.0)) throw ArgumentError("gamma must be > 0");
    }
    cfg.timings = j.value("timings", cfg.timings);
    cfg.output = j.value("output", cfg.output);
    cfg.csv = j.value("csv", cfg.csv);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad bench config: ") + e.what());
  }
  return cfg;
}

Image load_bench_image(const std::string& source) {
  static const std::regex color(R"(synthetic:color(\d+))");
  static const std::regex msi(R"(synthetic:msi(\d+)(?:x(\d+))?)");
  std::smatch m;
  if (std::regex_match(source, m, color)) return synthetic::color_scene(std::stoul(m[1].str()));
  if (std::regex_match(source, m, msi)) {
    const std::size_t size = std::stoul(m[1].str());
    const std::size_t bands = m[2].matched ? std::stoul(m[2].str()) : 31;
    return synthetic::msi_cube(size, size, bands);
  }
  if (source.starts_with("synthetic:")) throw ArgumentError("unknown synthetic image " + source);
  return read_image(source);
}

BenchReport run_bench(const BenchConfig& cfg) {
  BenchReport report;
  report.sigmas = cfg.sigmas;
  report.timings = cfg.timings;
  for (std::size_t i = 0; i < cfg.images.size(); ++i) {
    const Image clean = load_bench_image(cfg.images[i].source);
    const ImageKind kind = clean.extent(3) == 3 ? ImageKind::color : ImageKind::msi;
    for (std::size_t s = 0; s < cfg.sigmas.size(); ++s) {
      const double sigma = cfg.sigmas[s];
      const Image noisy = add_awgn(clean, sigma, noise_seed(cfg.seed, i, s));
      report.noisy.push_back({cfg.images[i].name, "noisy", sigma, evaluate(clean, noisy), 0.0, false, {}});
      for (Method method : cfg.methods) {
        BenchRow row{cfg.images[i].name, std::string(to_string(method)), sigma, {}, 0.0, false, {}};
        try {
          FilterParams params = default_params(method, kind, sigma);
          if (cfg.gamma) params.gamma = *cfg.gamma;
          params.threads = cfg.threads;
          const auto t0 = std::chrono::steady_clock::now();
          const DenoiseResult result = denoise(noisy, params);
          row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          row.metrics = evaluate(clean, result.image);
        } catch (const std::exception& e) {
          row.failed = true;
          row.error = e.what();
          row.metrics = nan_block();
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  for (Method method : cfg.methods) {
    BenchAggregate agg;
    agg.method = std::string(to_string(method));
    std::vector<const BenchRow*> ok;
    for (const BenchRow& r : report.rows) {
      if (r.method == agg.method && !r.failed) ok.push_back(&r);
    }
    agg.runs = ok.size();
    agg.mean = ok.empty() ? nan_block() : mean_of(ok);
    for (const BenchRow* r : ok) agg.seconds += r->seconds;
    if (!ok.empty()) agg.seconds /= static_cast<double>(ok.size());
    report.aggregates.push_back(agg);
  }
  return report;
}

std::string BenchReport::markdown() const {
  std::ostringstream out;
  auto seconds = [&](double s) { return timings ? fixed(s, 2) : std::string("n/a"); };

  out << "# Denoising benchmark\n\n## PSNR / SSIM / ERGAS / SAM by noise level (mean over images)\n\n";
  out << "| Method |";
  for (double s : sigmas) out << " σ=" << sigma_label(s) << " PSNR | SSIM | ERGAS | SAM |";
  out << "\n|---|";
  for (std::size_t i = 0; i < sigmas.size(); ++i) out << "---|---|---|---|";
  out << "\n";
  std::vector<std::string> methods;
  if (!noisy.empty()) methods.push_back("noisy");
  for (const BenchAggregate& a : aggregates) methods.push_back(a.method);
  for (const std::string& method : methods) {
    out << "| " << (method == "noisy" ? std::string("Noisy") : method) << " |";
    const auto& source = method == "noisy" ? noisy : rows;
    for (double s : sigmas) {
      std::vector<const BenchRow*> sel;
      bool any_failed = false;
      for (const BenchRow& r : source) {
        if (r.method != method || r.sigma != s) continue;
        if (r.failed) {
          any_failed = true;
        } else {
          sel.push_back(&r);
        }
      }
      if (sel.empty()) {
        out << (any_failed ? " failed | failed | failed | failed |" : " n/a | n/a | n/a | n/a |");
      } else {
        out << " " << metric_cells(mean_of(sel)) << " |";
      }
    }
    out << "\n";
  }

  out << "\n## Runs\n\n| Image | Method | σ | PSNR | SSIM | ERGAS | SAM | Time (s) |\n"
         "|---|---|---|---|---|---|---|---|\n";
  for (const BenchRow& r : rows) {
    out << "| " << r.image << " | " << r.method << " | " << sigma_label(r.sigma) << " | ";
    if (r.failed) {
      out << "failed: " << r.error << " | | | | |\n";
    } else {
      out << metric_cells(r.metrics) << " | " << seconds(r.seconds) << " |\n";
    }
  }

  out << "\n## Aggregates (mean over images and σ)\n\n| Method | Runs | PSNR | SSIM | ERGAS | SAM | Time (s) |\n"
         "|---|---|---|---|---|---|---|\n";
  for (const BenchAggregate& a : aggregates) {
    out << "| " << a.method << " | " << a.runs << " | " << metric_cells(a.mean) << " | "
        << (a.runs ? seconds(a.seconds) : std::string("n/a")) << " |\n";
  }
  return out.str();
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << "image," << metrics_csv_header() << ",status\n";
  auto emit = [&](const BenchRow& r) {
    const std::string secs = r.method == "noisy" ? "0" : (timings ? fixed(r.seconds, 4) : "n/a");
    out << r.image << "," << metrics_csv_row(r.method, sigma_label(r.sigma), r.metrics, secs) << ","
        << (r.failed ? "failed" : "ok") << "\n";
  };
  for (const BenchRow& r : noisy) emit(r);
  for (const BenchRow& r : rows) emit(r);
  return out.str();
}

}  // namespace tdenoise
