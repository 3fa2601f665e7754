#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "tdenoise/random.hpp"
#include "tdenoise/tensor.hpp"

namespace tdenoise::test {

inline RealTensor random_tensor(Shape shape, std::uint64_t seed, double scale = 1.0,
                                double offset = 0.0) {
  RealTensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = offset + scale * standard_normal(seed, i);
  return t;
}

inline ComplexTensor random_complex(Shape shape, std::uint64_t seed) {
  ComplexTensor t(std::move(shape));
  for (std::size_t i = 0; i < t.size(); ++i) {
    t.data()[i] = {standard_normal(seed, 2 * i), standard_normal(seed, 2 * i + 1)};
  }
  return t;
}

inline Matrix<double> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Matrix<double> m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = standard_normal(seed, i);
  return m;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("tdenoise-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace tdenoise::test
