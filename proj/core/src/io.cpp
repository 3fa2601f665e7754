#include "tdenoise/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <regex>
#include <sstream>
#include <vector>

namespace tdenoise {

namespace fs = std::filesystem;

namespace {

std::vector<unsigned char> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::vector<unsigned char>& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(const std::vector<unsigned char>& in, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
  return v;
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

// ---- PNM ------------------------------------------------------------------

Image read_pnm(const fs::path& path) {
  const auto bytes = read_bytes(path);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> std::size_t {
    skip_space();
    const std::size_t start = pos;
    std::size_t v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) v = v * 10 + (bytes[pos++] - '0');
    if (pos == start) throw FormatError("malformed PNM header in " + path.string(), start);
    return v;
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw FormatError("not a binary PGM/PPM file: " + path.string(), 0);
  }
  const std::size_t channels = bytes[1] == '6' ? 3 : 1;
  pos = 2;
  const std::size_t w = read_int();
  const std::size_t h = read_int();
  const std::size_t maxval = read_int();
  if (w == 0 || h == 0) throw FormatError("zero PNM dimension in " + path.string(), pos);
  if (maxval == 0 || maxval > 255) {
    throw FormatError("only 8-bit PNM is supported: " + path.string(), pos);
  }
  ++pos;  // single whitespace before the raster
  if (bytes.size() < pos + w * h * channels) {
    throw FormatError("truncated PNM raster in " + path.string(), bytes.size());
  }
  Image img({h, w, channels});
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c)
      for (std::size_t ch = 0; ch < channels; ++ch) img(r, c, ch) = bytes[pos++];
  return img;
}

void write_pnm(const fs::path& path, const Image& img) {
  const std::size_t h = img.extent(1);
  const std::size_t w = img.extent(2);
  const std::size_t channels = img.extent(3);
  if (channels != 1 && channels != 3) {
    throw ArgumentError("PNM output needs 1 or 3 channels, got " + std::to_string(channels));
  }
  std::ostringstream header;
  header << (channels == 3 ? "P6" : "P5") << "\n" << w << " " << h << "\n255\n";
  const std::string hs = header.str();
  std::vector<unsigned char> bytes(hs.begin(), hs.end());
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c)
      for (std::size_t ch = 0; ch < channels; ++ch) bytes.push_back(to_byte(img(r, c, ch)));
  write_bytes(path, bytes);
}

// ---- PNG ------------------------------------------------------------------

Image read_png(const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  const std::string name = path.string();
  if (!fs::exists(path)) throw IoError("cannot open " + name);
  if (!png_image_begin_read_from_file(&image, name.c_str())) {
    throw FormatError("cannot decode PNG " + name + ": " + image.message, 0);
  }
  const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  const std::size_t channels = gray ? 1 : 3;
  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    png_image_free(&image);
    throw FormatError("cannot decode PNG " + name + ": " + image.message, 0);
  }
  const std::size_t h = image.height;
  const std::size_t w = image.width;
  Image img({h, w, channels});
  std::size_t pos = 0;
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c)
      for (std::size_t ch = 0; ch < channels; ++ch) img(r, c, ch) = buffer[pos++];
  return img;
}

void write_png(const fs::path& path, const Image& img) {
  const std::size_t h = img.extent(1);
  const std::size_t w = img.extent(2);
  const std::size_t channels = img.extent(3);
  if (channels != 1 && channels != 3) {
    throw ArgumentError("PNG output needs 1 or 3 channels, got " + std::to_string(channels));
  }
  std::vector<unsigned char> buffer;
  buffer.reserve(h * w * channels);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < w; ++c)
      for (std::size_t ch = 0; ch < channels; ++ch) buffer.push_back(to_byte(img(r, c, ch)));
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0, nullptr)) {
    throw IoError("cannot write PNG " + path.string() + ": " + image.message);
  }
}

Image read_raster(const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return read_png(path);
  if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") return read_pnm(path);
  throw IoError("unsupported image extension '" + ext + "' for " + path.string());
}

}  // namespace

std::uint8_t to_byte(double value) noexcept {
  if (!(value > 0.0)) return 0;
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::floor(value + 0.5));
}

Image read_msi(const fs::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "MSI1", 4) != 0) {
    throw FormatError("bad MSI1 magic in " + path.string(), 0);
  }
  if (bytes.size() < 16) throw FormatError("truncated MSI1 header in " + path.string(), bytes.size());
  const std::size_t h = get_u32(bytes, 4);
  const std::size_t w = get_u32(bytes, 8);
  const std::size_t c = get_u32(bytes, 12);
  if (h == 0) throw FormatError("MSI1 height is zero", 4);
  if (w == 0) throw FormatError("MSI1 width is zero", 8);
  if (c == 0) throw FormatError("MSI1 channel count is zero", 12);
  const std::size_t expected = 16 + 4 * h * w * c;
  if (bytes.size() != expected) {
    throw FormatError("MSI1 payload length " + std::to_string(bytes.size()) + " != expected " +
                          std::to_string(expected) + " for " + std::to_string(h) + "x" +
                          std::to_string(w) + "x" + std::to_string(c),
                      std::min(bytes.size(), expected));
  }
  Image img({h, w, c});
  auto data = img.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t at = 16 + 4 * i;
    const float v = std::bit_cast<float>(get_u32(bytes, at));
    if (!std::isfinite(v)) throw FormatError("non-finite MSI1 sample", at);
    data[i] = v;
  }
  return img;
}

void write_msi(const fs::path& path, const Image& img) {
  if (img.order() != 3) throw ArgumentError("write_msi expects an H x W x C image");
  std::vector<unsigned char> bytes{'M', 'S', 'I', '1'};
  bytes.reserve(16 + 4 * img.size());
  put_u32(bytes, static_cast<std::uint32_t>(img.extent(1)));
  put_u32(bytes, static_cast<std::uint32_t>(img.extent(2)));
  put_u32(bytes, static_cast<std::uint32_t>(img.extent(3)));
  for (double v : img.data()) {
    if (!std::isfinite(v)) throw ArgumentError("write_msi: non-finite sample");
    put_u32(bytes, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  write_bytes(path, bytes);
}

Image read_band_directory(const fs::path& dir) {
  static const std::regex pattern(R"(band_(\d+)\.(png|pgm|ppm|pnm))", std::regex::icase);
  std::map<std::size_t, fs::path> bands;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, m, pattern)) {
      const std::size_t index = std::stoul(m[1].str());
      if (!bands.emplace(index, entry.path()).second) {
        throw FormatError("duplicate band index " + std::to_string(index) + " in " + dir.string(), 0);
      }
    }
  }
  if (bands.empty()) throw IoError("no band_NN rasters in " + dir.string());
  if (bands.rbegin()->first + 1 != bands.size()) {
    throw FormatError("band indices in " + dir.string() + " are not contiguous from 0", 0);
  }
  Image cube;
  std::size_t b = 0;
  for (const auto& [index, path] : bands) {
    const Image band = read_raster(path);
    if (band.extent(3) != 1) throw FormatError("band raster must be grayscale: " + path.string(), 0);
    if (b == 0) cube = Image({band.extent(1), band.extent(2), bands.size()});
    if (band.extent(1) != cube.extent(1) || band.extent(2) != cube.extent(2)) {
      throw FormatError("band size mismatch: " + path.string(), 0);
    }
    const std::size_t plane = band.extent(1) * band.extent(2);
    std::copy(band.data().begin(), band.data().end(), cube.data().begin() + plane * b);
    ++b;
  }
  return cube;
}

void write_band_directory(const fs::path& dir, const Image& img) {
  fs::create_directories(dir);
  const std::size_t bands = img.extent(3);
  const std::size_t plane = img.extent(1) * img.extent(2);
  const int width = bands > 100 ? 3 : 2;
  for (std::size_t b = 0; b < bands; ++b) {
    Image band({img.extent(1), img.extent(2), 1});
    std::copy(img.data().begin() + plane * b, img.data().begin() + plane * (b + 1),
              band.data().begin());
    std::ostringstream name;
    name << "band_" << std::setw(width) << std::setfill('0') << b << ".pgm";
    write_pnm(dir / name.str(), band);
  }
}

Image read_image(const fs::path& path) {
  if (fs::is_directory(path)) return read_band_directory(path);
  if (!fs::exists(path)) throw IoError("no such file: " + path.string());
  if (lower_extension(path) == ".msi") return read_msi(path);
  return read_raster(path);
}

void write_image(const fs::path& path, const Image& img) {
  if (fs::is_directory(path)) {
    write_band_directory(path, img);
    return;
  }
  const std::string ext = lower_extension(path);
  if (ext == ".msi") {
    write_msi(path, img);
  } else if (ext == ".png") {
    write_png(path, img);
  } else if (ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
    write_pnm(path, img);
  } else {
    throw IoError("unsupported output extension '" + ext + "' for " + path.string());
  }
}

std::uint64_t image_hash(const Image& img) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  };
  for (std::size_t e : img.shape()) feed(e);
  for (double v : img.data()) feed(std::bit_cast<std::uint64_t>(v));
  return h;
}

void save_global_basis(const fs::path& path, const GlobalBasis& basis, std::uint64_t key) {
  std::vector<unsigned char> bytes{'G', 'B', 'A', 'S'};
  put_u32(bytes, 1);
  put_u32(bytes, static_cast<std::uint32_t>(basis.patch_size));
  put_u32(bytes, static_cast<std::uint32_t>(basis.n_channels));
  put_u32(bytes, static_cast<std::uint32_t>(basis.retained()));
  put_u64(bytes, key);
  auto put_matrix = [&](const Matrix<Complex>& m) {
    for (const Complex& v : m.data()) {
      put_u64(bytes, std::bit_cast<std::uint64_t>(v.real()));
      put_u64(bytes, std::bit_cast<std::uint64_t>(v.imag()));
    }
  };
  for (std::size_t j = 0; j < basis.retained(); ++j) {
    put_matrix(basis.u_row[j]);
    put_matrix(basis.u_col[j]);
  }
  write_bytes(path, bytes);
}

std::optional<GlobalBasis> load_global_basis(const fs::path& path, std::uint64_t key) {
  if (!fs::exists(path)) return std::nullopt;
  const auto bytes = read_bytes(path);
  constexpr std::size_t kHeader = 28;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "GBAS", 4) != 0) {
    throw FormatError("bad GBAS magic in " + path.string(), 0);
  }
  if (bytes.size() < kHeader) throw FormatError("truncated GBAS header", bytes.size());
  if (get_u32(bytes, 4) != 1) throw FormatError("unsupported GBAS version", 4);
  const std::size_t ps = get_u32(bytes, 8);
  const std::size_t channels = get_u32(bytes, 12);
  const std::size_t slices = get_u32(bytes, 16);
  if (ps == 0) throw FormatError("GBAS patch size is zero", 8);
  if (channels == 0) throw FormatError("GBAS channel count is zero", 12);
  if (slices != retained_slices(channels)) throw FormatError("GBAS slice count mismatch", 16);
  if (get_u64(bytes, 20) != key) return std::nullopt;
  const std::size_t expected = kHeader + slices * 2 * ps * ps * 16;
  if (bytes.size() != expected) {
    throw FormatError("GBAS payload length mismatch", std::min(bytes.size(), expected));
  }
  GlobalBasis basis{ps, channels, {}, {}};
  std::size_t at = kHeader;
  auto get_matrix = [&] {
    Matrix<Complex> m(ps, ps);
    for (Complex& v : m.data()) {
      v = Complex(std::bit_cast<double>(get_u64(bytes, at)), std::bit_cast<double>(get_u64(bytes, at + 8)));
      at += 16;
    }
    return m;
  };
  for (std::size_t j = 0; j < slices; ++j) {
    basis.u_row.push_back(get_matrix());
    basis.u_col.push_back(get_matrix());
  }
  return basis;
}

}  // namespace tdenoise
