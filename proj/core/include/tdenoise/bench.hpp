#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdenoise/metrics.hpp"
#include "tdenoise/params.hpp"
#include "tdenoise/patch.hpp"

namespace tdenoise {

struct BenchImage {
  std::string name;
  /// A path readable by read_image, or "synthetic:color<size>",
  /// "synthetic:msi<size>" (31 bands), "synthetic:msi<size>x<bands>".
  std::string source;
};

/// JSON form:
///   {"images": ["synthetic:color128", {"name": "x", "path": "x.msi"}],
///    "methods": ["mstsvd", "hosvd4d"], "sigmas": [10, 30],
///    "seed": 1, "threads": 1, "gamma": 1.1, "timings": true,
///    "output": "report.md", "csv": "report.csv"}
struct BenchConfig {
  std::vector<BenchImage> images;
  std::vector<Method> methods;
  std::vector<double> sigmas;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::optional<double> gamma;
  /// With false the report prints "n/a" for times and is byte-stable.
  bool timings = true;
  std::string output;
  std::string csv;

  /// Throws ArgumentError on malformed JSON or invalid fields.
  static BenchConfig from_json(const std::string& text);
};

struct BenchRow {
  std::string image;
  std::string method;  // "noisy" for the unfiltered input
  double sigma = 0.0;
  MetricBlock metrics;
  double seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct BenchAggregate {
  std::string method;
  std::size_t runs = 0;
  MetricBlock mean;
  double seconds = 0.0;
};

struct BenchReport {
  std::vector<double> sigmas;
  std::vector<BenchRow> noisy;
  std::vector<BenchRow> rows;
  std::vector<BenchAggregate> aggregates;  // one per method, config order
  bool timings = true;

  std::string markdown() const;
  std::string csv() const;
};

Image load_bench_image(const std::string& source);

/// Runs every (image, method, sigma); a failing run is recorded and the
/// matrix continues.
BenchReport run_bench(const BenchConfig& cfg);

}  // namespace tdenoise
