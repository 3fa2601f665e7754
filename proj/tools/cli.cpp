#include "cli.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tdenoise/bench.hpp"
#include "tdenoise/errors.hpp"
#include "tdenoise/io.hpp"
#include "tdenoise/metrics.hpp"
#include "tdenoise/noise.hpp"
#include "tdenoise/oracles.hpp"
#include "tdenoise/pipeline.hpp"
#include "tdenoise/random.hpp"

namespace tdenoise::cli {

namespace {

struct DenoiseArgs {
  std::string method;
  double sigma = -1.0;
  std::optional<double> gamma;
  std::optional<double> tau;
  std::optional<std::size_t> ps, k, sr, step;
  std::string weights = "uniform";
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  double training_fraction = 1.0;
  std::string basis_cache;
  std::string clean;
  std::string input, output;
};

struct NoiseArgs {
  std::optional<double> sigma;
  std::string ramp;
  std::string stripes;
  std::uint64_t seed = 0;
  std::string input, output;
};

struct MetricsArgs {
  std::string clean, test;
  std::string label = "-";
  std::string sigma = "-";
  bool header = false;
};

struct BenchArgs {
  std::string config;
  std::string output;
  std::string csv;
};

struct SelfTestArgs {
  std::size_t instances = 100;
  std::uint64_t seed = 7;
};

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", s);
  return buf;
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ArgumentError(std::string(what) + " expects A:B, got " + text);
  try {
    std::size_t used = 0;
    const double a = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string tail = text.substr(colon + 1);
    const double b = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ArgumentError(std::string(what) + " expects numbers A:B, got " + text);
  }
}

std::vector<std::size_t> parse_bands(const std::string& text) {
  std::vector<std::size_t> bands;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      bands.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw ArgumentError("--stripes band list must be comma separated indices, got " + text);
    }
  }
  if (bands.empty()) throw ArgumentError("--stripes needs at least one band");
  return bands;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_denoise(const DenoiseArgs& a, std::ostream& out) {
  const Method method = parse_method(a.method);
  if (a.sigma < 0.0) throw ArgumentError("--sigma must be >= 0");
  Image img = read_image(a.input);
  const ImageKind kind = img.extent(3) == 3 ? ImageKind::color : ImageKind::msi;
  FilterParams p = default_params(method, kind, a.sigma);
  if (a.gamma) p.gamma = *a.gamma;
  if (a.tau) p.tau_override = *a.tau;
  if (a.ps) p.patch_size = *a.ps;
  if (a.k) p.group_size = *a.k;
  if (a.sr) p.search_radius = *a.sr;
  if (a.step) p.step = *a.step;
  p.weight_mode = parse_weight_mode(a.weights);
  p.threads = a.threads;
  p.training_seed = a.seed;
  p.training_fraction = a.training_fraction;
  p.validate();

  DenoiseResult result;
  const bool cacheable = (method == Method::mstsvd || method == Method::cmstsvd) && !a.basis_cache.empty();
  if (cacheable) {
    // Key covers everything the trained basis depends on.
    std::uint64_t key = image_hash(img);
    key ^= mix64(p.patch_size * 0x100000001ULL + p.step);
    key ^= mix64(std::bit_cast<std::uint64_t>(p.training_fraction) ^ mix64(p.training_seed));
    std::optional<GlobalBasis> basis = load_global_basis(a.basis_cache, key);
    if (!basis) {
      basis = train_global_basis_for(img, p);
      save_global_basis(a.basis_cache, *basis, key);
    }
    result = method == Method::mstsvd ? denoise_mstsvd(img, p, &*basis) : denoise_cmstsvd(img, p, &*basis);
  } else {
    result = denoise(img, p);
  }
  write_image(a.output, result.image);

  char line[256];
  std::snprintf(line, sizeof line, "method=%s sigma=%g gamma=%g tau=%.6g groups=%zu seconds=%.3f\n",
                result.report.method.c_str(), p.sigma, p.gamma, result.report.tau, result.report.groups,
                result.report.seconds);
  out << line;
  if (!a.clean.empty()) {
    const Image clean = read_image(a.clean);
    char sigma[32];
    std::snprintf(sigma, sizeof sigma, "%g", a.sigma);
    out << metrics_csv_header() << "\n"
        << metrics_csv_row(result.report.method, sigma, evaluate(clean, result.image),
                           format_seconds(result.report.seconds))
        << "\n";
  }
  return kOk;
}

int run_add_noise(const NoiseArgs& a) {
  if (!a.sigma && a.ramp.empty() && a.stripes.empty()) {
    throw ArgumentError("add-noise needs --sigma, --ramp or --stripes");
  }
  if (a.sigma && !a.ramp.empty()) throw ArgumentError("--sigma and --ramp are exclusive");
  Image img = read_image(a.input);
  if (a.sigma) {
    if (*a.sigma < 0.0) throw ArgumentError("--sigma must be >= 0");
    img = add_awgn(img, *a.sigma, a.seed);
  }
  if (!a.ramp.empty()) {
    const auto [lo, hi] = parse_pair(a.ramp, "--ramp");
    img = add_awgn_band_ramp(img, lo, hi, a.seed);
  }
  if (!a.stripes.empty()) {
    const auto colon = a.stripes.rfind(':');
    if (colon == std::string::npos) throw ArgumentError("--stripes expects BANDS:AMP");
    const auto bands = parse_bands(a.stripes.substr(0, colon));
    double amp = 0.0;
    try {
      amp = std::stod(a.stripes.substr(colon + 1));
    } catch (const std::logic_error&) {
      throw ArgumentError("--stripes amplitude is not a number: " + a.stripes);
    }
    img = add_stripes(img, bands, amp, a.seed ^ 0x9E3779B97F4A7C15ULL);
  }
  write_image(a.output, img);
  return kOk;
}

int run_metrics(const MetricsArgs& a, std::ostream& out) {
  const Image clean = read_image(a.clean);
  const Image test = read_image(a.test);
  if (clean.shape() != test.shape()) throw ArgumentError("images differ in shape");
  if (a.header) out << metrics_csv_header() << "\n";
  out << metrics_csv_row(a.label, a.sigma, evaluate(clean, test), "0") << "\n";
  return kOk;
}

int run_bench_cmd(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg = BenchConfig::from_json(read_text(a.config));
  if (!a.output.empty()) cfg.output = a.output;
  if (!a.csv.empty()) cfg.csv = a.csv;
  const BenchReport report = run_bench(cfg);
  const std::string md = report.markdown();
  if (cfg.output.empty()) {
    out << md;
  } else {
    write_text(cfg.output, md);
  }
  if (!cfg.csv.empty()) write_text(cfg.csv, report.csv());
  for (const BenchRow& r : report.rows) {
    if (r.failed) err << "warning: " << r.image << " " << r.method << " sigma " << r.sigma << " failed: " << r.error << "\n";
  }
  return kOk;
}

int run_self_test(const SelfTestArgs& a, std::ostream& out) {
  bool ok = true;
  for (const OracleResult& r : run_theorem_oracles(a.instances, a.seed)) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-45s n=%zu worst=%.3e tol=%.0e\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.instances, r.worst, r.tolerance);
    out << line;
    ok = ok && r.passed;
  }
  return ok ? kOk : kInvariantError;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tensor-based color and multispectral image denoiser", "tdenoise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tdenoise 0.1.0");

  DenoiseArgs d;
  auto* denoise = app.add_subcommand("denoise", "Denoise an image with a known noise level");
  denoise->add_option("--method", d.method, "mstsvd | cmstsvd | twist | hosvd4d")->required();
  denoise->add_option("--sigma", d.sigma, "Noise standard deviation (0-255 scale)")->required();
  denoise->add_option("--gamma", d.gamma, "Threshold multiplier");
  denoise->add_option("--tau", d.tau, "Explicit hard threshold, overrides gamma");
  denoise->add_option("--ps", d.ps, "Patch size");
  denoise->add_option("--k", d.k, "Patches per group, reference included");
  denoise->add_option("--sr", d.sr, "Search radius in pixels");
  denoise->add_option("--step", d.step, "Reference grid stride");
  denoise->add_option("--weights", d.weights, "uniform | sparsity");
  denoise->add_option("--threads", d.threads, "Worker threads")->check(CLI::PositiveNumber);
  denoise->add_option("--seed", d.seed, "Seed for basis training subsampling");
  denoise->add_option("--training-fraction", d.training_fraction, "Fraction of reference patches used for training");
  denoise->add_option("--basis-cache", d.basis_cache, "File caching the trained global basis");
  denoise->add_option("--clean", d.clean, "Clean reference; prints a metrics row");
  denoise->add_option("IN", d.input)->required();
  denoise->add_option("OUT", d.output)->required();

  NoiseArgs n;
  auto* noise = app.add_subcommand("add-noise", "Add seeded synthetic noise");
  noise->add_option("--sigma", n.sigma, "i.i.d. Gaussian standard deviation");
  noise->add_option("--ramp", n.ramp, "Per-band sigma ramp LO:HI");
  noise->add_option("--stripes", n.stripes, "Stripe noise BANDS:AMP, bands comma separated");
  noise->add_option("--seed", n.seed, "Noise seed")->required();
  noise->add_option("IN", n.input)->required();
  noise->add_option("OUT", n.output)->required();

  MetricsArgs m;
  auto* metrics = app.add_subcommand("metrics", "Print a metrics CSV row");
  metrics->add_option("--label", m.label, "Method column value");
  metrics->add_option("--sigma", m.sigma, "Sigma column value");
  metrics->add_flag("--header", m.header, "Print the CSV header first");
  metrics->add_option("CLEAN", m.clean)->required();
  metrics->add_option("TEST", m.test)->required();

  BenchArgs b;
  auto* bench = app.add_subcommand("bench", "Run a (method x sigma) benchmark matrix");
  bench->add_option("--config", b.config, "JSON config")->required();
  bench->add_option("--output", b.output, "Markdown report path (default: stdout)");
  bench->add_option("--csv", b.csv, "CSV report path");

  SelfTestArgs s;
  auto* self_test = app.add_subcommand("self-test", "Run the block-circulant identity checks");
  self_test->add_option("--instances", s.instances, "Random instances per check")->check(CLI::PositiveNumber);
  self_test->add_option("--seed", s.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kArgumentError;
  }

  try {
    if (*denoise) return run_denoise(d, out);
    if (*noise) return run_add_noise(n);
    if (*metrics) return run_metrics(m, out);
    if (*bench) return run_bench_cmd(b, out, err);
    if (*self_test) return run_self_test(s, out);
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kArgumentError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kInvariantError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kArgumentError;
}

}  // namespace tdenoise::cli
