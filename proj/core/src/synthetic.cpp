#include "tdenoise/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tdenoise/random.hpp"

namespace tdenoise::synthetic {

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : seed_(mix64(seed ^ 0x5CE7E5CE7EULL)) {}
  double uniform() { return uniform01(seed_, counter_++); }
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }
  double level() { return std::round(20.0 + 215.0 * uniform()); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Region label map: 0 background, then rectangles and disks painted in order.
template <typename Paint>
void paint_shapes(Draw& draw, std::size_t h, std::size_t w, std::size_t n_rects,
                  std::size_t n_disks, Paint&& paint) {
  const double hd = static_cast<double>(h);
  const double wd = static_cast<double>(w);
  std::size_t label = 1;
  for (std::size_t i = 0; i < n_rects; ++i, ++label) {
    const double r0 = draw.uniform() * hd * 0.8;
    const double c0 = draw.uniform() * wd * 0.8;
    const double rh = (0.15 + 0.35 * draw.uniform()) * hd;
    const double cw = (0.15 + 0.35 * draw.uniform()) * wd;
    for (std::size_t c = 0; c < w; ++c)
      for (std::size_t r = 0; r < h; ++r) {
        const double rr = static_cast<double>(r);
        const double cc = static_cast<double>(c);
        if (rr >= r0 && rr < r0 + rh && cc >= c0 && cc < c0 + cw) paint(r, c, label);
      }
  }
  for (std::size_t i = 0; i < n_disks; ++i, ++label) {
    const double cr = draw.uniform() * hd;
    const double cc = draw.uniform() * wd;
    const double radius = (0.08 + 0.17 * draw.uniform()) * std::min(hd, wd);
    for (std::size_t c = 0; c < w; ++c)
      for (std::size_t r = 0; r < h; ++r) {
        const double dr = static_cast<double>(r) - cr;
        const double dc = static_cast<double>(c) - cc;
        if (dr * dr + dc * dc <= radius * radius) paint(r, c, label);
      }
  }
}

}  // namespace

Image color_scene(std::size_t size, std::uint64_t seed) {
  Draw draw(seed);
  constexpr std::size_t kRects = 6;
  constexpr std::size_t kDisks = 4;
  constexpr std::size_t kLabels = 1 + kRects + kDisks + 2;
  double palette[kLabels][3];
  for (auto& color : palette)
    for (double& v : color) v = draw.level();

  Image img({size, size, 3});
  auto fill = [&](std::size_t r, std::size_t c, std::size_t label) {
    for (std::size_t ch = 0; ch < 3; ++ch) img(r, c, ch) = palette[label][ch];
  };
  for (std::size_t c = 0; c < size; ++c)
    for (std::size_t r = 0; r < size; ++r) fill(r, c, 0);
  paint_shapes(draw, size, size, kRects, kDisks, fill);

  // Bar pattern in the lower-right quadrant: alternating 6-pixel bars.
  for (std::size_t c = size / 2; c < size; ++c)
    for (std::size_t r = 3 * size / 4; r < size; ++r)
      fill(r, c, ((c / 6) % 2 == 0) ? kLabels - 2 : kLabels - 1);
  return img;
}

Image msi_cube(std::size_t height, std::size_t width, std::size_t bands, std::uint64_t seed) {
  Draw draw(seed);
  constexpr std::size_t kRects = 5;
  constexpr std::size_t kDisks = 3;
  constexpr std::size_t kMaterials = 1 + kRects + kDisks;
  std::vector<std::vector<double>> spectra(kMaterials, std::vector<double>(bands));
  for (auto& spectrum : spectra) {
    const double base = 30.0 + 80.0 * draw.uniform();
    const double amp = 40.0 + 100.0 * draw.uniform();
    const double center = draw.uniform();
    const double width = 0.15 + 0.35 * draw.uniform();
    const double slope = 40.0 * (draw.uniform() - 0.5);
    for (std::size_t b = 0; b < bands; ++b) {
      const double lambda = bands > 1 ? static_cast<double>(b) / static_cast<double>(bands - 1) : 0.0;
      const double z = (lambda - center) / width;
      spectrum[b] = base + amp * std::exp(-z * z) + slope * lambda;
    }
  }
  std::vector<std::size_t> labels(height * width, 0);
  paint_shapes(draw, height, width, kRects, kDisks,
               [&](std::size_t r, std::size_t c, std::size_t label) { labels[r + height * c] = label; });

  Image img({height, width, bands});
  for (std::size_t b = 0; b < bands; ++b)
    for (std::size_t c = 0; c < width; ++c)
      for (std::size_t r = 0; r < height; ++r) img(r, c, b) = spectra[labels[r + height * c]][b];
  return img;
}

Image gray_color_scene(std::size_t size, std::uint64_t seed) {
  Image img = color_scene(size, seed);
  for (std::size_t c = 0; c < size; ++c)
    for (std::size_t r = 0; r < size; ++r) {
      img(r, c, 1) = img(r, c, 0);
      img(r, c, 2) = img(r, c, 0);
    }
  return img;
}

}  // namespace tdenoise::synthetic
