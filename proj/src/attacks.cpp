#include "dctbch/attacks.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "dctbch/dct.hpp"
#include "dctbch/errors.hpp"
#include "dctbch/random.hpp"

namespace dctbch {

namespace {

/// Symmetric padding that repeats the edge sample: -1 -> 0, n -> n - 1.
int mirror(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
  return i;
}

template <typename Fn>
Eigen::ArrayXXd for_each_neighbourhood(const Eigen::ArrayXXd& src, Fn&& fn) {
  const int rows = static_cast<int>(src.rows());
  const int cols = static_cast<int>(src.cols());
  Eigen::ArrayXXd out(rows, cols);
  std::array<double, 9> window{};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int w = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) window[w++] = src(mirror(r + dr, rows), mirror(c + dc, cols));
      }
      out(r, c) = fn(window, src(r, c));
    }
  }
  return out;
}

double bilinear(const Eigen::ArrayXXd& src, double y, double x, bool zero_outside) {
  const int rows = static_cast<int>(src.rows());
  const int cols = static_cast<int>(src.cols());
  if (zero_outside && (y < -0.5 || x < -0.5 || y > rows - 0.5 || x > cols - 0.5)) return 0.0;
  y = std::clamp(y, 0.0, rows - 1.0);
  x = std::clamp(x, 0.0, cols - 1.0);
  const int y0 = std::min(static_cast<int>(y), rows - 1);
  const int x0 = std::min(static_cast<int>(x), cols - 1);
  const int y1 = std::min(y0 + 1, rows - 1);
  const int x1 = std::min(x0 + 1, cols - 1);
  const double fy = y - y0;
  const double fx = x - x0;
  return (1 - fy) * ((1 - fx) * src(y0, x0) + fx * src(y0, x1)) + fy * ((1 - fx) * src(y1, x0) + fx * src(y1, x1));
}

constexpr std::array<int, 64> kLumaTable = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,  14, 13, 16, 24,  40,  57,
    69, 56, 14, 17, 22,  29,  51,  87,  80, 62, 18, 22, 37,  56,  68,  109, 103, 77, 24, 35, 55, 64,
    81, 104, 113, 92, 49, 64, 78,  87,  103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("attack parameter " + std::string(what) + " is not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

GrayImage wiener3x3(const GrayImage& img) {
  const Eigen::ArrayXXd src = img.to_array();
  const Eigen::ArrayXXd mean = for_each_neighbourhood(src, [](const std::array<double, 9>& w, double) {
    double s = 0.0;
    for (double v : w) s += v;
    return s / 9.0;
  });
  const Eigen::ArrayXXd var = for_each_neighbourhood(src, [](const std::array<double, 9>& w, double) {
    double s = 0.0;
    double s2 = 0.0;
    for (double v : w) {
      s += v;
      s2 += v * v;
    }
    return std::max(0.0, s2 / 9.0 - (s / 9.0) * (s / 9.0));
  });
  const double noise = var.mean();
  if (noise <= 0.0) return img;
  const Eigen::ArrayXXd gain = (var - noise).max(0.0) / var.max(noise);
  return GrayImage::from_array(mean + gain * (src - mean));
}

GrayImage median3x3(const GrayImage& img) {
  return GrayImage::from_array(for_each_neighbourhood(img.to_array(), [](std::array<double, 9> w, double) {
    std::nth_element(w.begin(), w.begin() + 4, w.end());
    return w[4];
  }));
}

GrayImage gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed) {
  if (!(variance >= 0.0)) throw ConfigError("noise variance must be non-negative");
  const double sd = std::sqrt(variance) * 255.0;
  KeyedRng rng(seed);
  Eigen::ArrayXXd out = img.to_array();
  // Row-major traversal keeps the noise field independent of Eigen's storage order.
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) += sd * rng.normal();
  }
  return GrayImage::from_array(out);
}

std::array<double, 3> gaussian_kernel3(double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian sigma must be positive");
  const double side = std::exp(-1.0 / (2.0 * sigma * sigma));
  const double sum = 1.0 + 2.0 * side;
  return {side / sum, 1.0 / sum, side / sum};
}

GrayImage gaussian_filter(const GrayImage& img, double sigma) {
  const auto k = gaussian_kernel3(sigma);
  const Eigen::ArrayXXd src = img.to_array();
  const int rows = static_cast<int>(src.rows());
  const int cols = static_cast<int>(src.cols());
  Eigen::ArrayXXd horiz(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      horiz(r, c) = k[0] * src(r, mirror(c - 1, cols)) + k[1] * src(r, c) + k[2] * src(r, mirror(c + 1, cols));
    }
  }
  Eigen::ArrayXXd out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out(r, c) = k[0] * horiz(mirror(r - 1, rows), c) + k[1] * horiz(r, c) + k[2] * horiz(mirror(r + 1, rows), c);
    }
  }
  return GrayImage::from_array(out);
}

GrayImage rotate(const GrayImage& img, double degrees) {
  if (!(std::abs(degrees) < 45.0)) throw ConfigError("rotation angle must satisfy |degrees| < 45");
  if (degrees == 0.0) return img;
  const Eigen::ArrayXXd src = img.to_array();
  const double theta = degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cy = (static_cast<double>(src.rows()) - 1.0) / 2.0;
  const double cx = (static_cast<double>(src.cols()) - 1.0) / 2.0;
  Eigen::ArrayXXd out(src.rows(), src.cols());
  for (Eigen::Index r = 0; r < src.rows(); ++r) {
    for (Eigen::Index c = 0; c < src.cols(); ++c) {
      // Inverse map: output pixel (x, y) samples the source at R(-theta)(x, y).
      // Image rows grow downward, so a counter-clockwise turn on screen negates y.
      const double dx = static_cast<double>(c) - cx;
      const double dy = static_cast<double>(r) - cy;
      const double sx = cs * dx - sn * dy + cx;
      const double sy = sn * dx + cs * dy + cy;
      out(r, c) = bilinear(src, sy, sx, true);
    }
  }
  return GrayImage::from_array(out);
}

std::array<int, 64> jpeg_luma_table(int quality) {
  if (quality < 1 || quality > 100) throw ConfigError("JPEG quality must be in [1, 100]");
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::array<int, 64> table{};
  for (std::size_t i = 0; i < 64; ++i) table[i] = std::clamp((kLumaTable[i] * scale + 50) / 100, 1, 255);
  return table;
}

GrayImage jpeg_like(const GrayImage& img, int quality) {
  const auto table = jpeg_luma_table(quality);
  const Eigen::ArrayXXd src = img.to_array();
  const int rows = static_cast<int>(src.rows());
  const int cols = static_cast<int>(src.cols());
  Eigen::ArrayXXd out(rows, cols);
  for (int br = 0; br < rows; br += 8) {
    for (int bc = 0; bc < cols; bc += 8) {
      Block8<double> px;
      for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) px(r, c) = src(std::min(br + r, rows - 1), std::min(bc + c, cols - 1));
      }
      CoeffBlock coeffs = dct2_block(px);
      for (int i = 0; i < 64; ++i) {
        const double q = table[static_cast<std::size_t>(i)];
        coeffs(i / 8, i % 8) = std::round(coeffs(i / 8, i % 8) / q) * q;
      }
      const Block8<double> back = idct2_block(coeffs);
      for (int r = 0; r < 8 && br + r < rows; ++r) {
        for (int c = 0; c < 8 && bc + c < cols; ++c) out(br + r, bc + c) = back(r, c);
      }
    }
  }
  return GrayImage::from_array(out);
}

GrayImage resize_halfback(const GrayImage& img) {
  if (img.width() % 2 != 0 || img.height() % 2 != 0) throw ConfigError("resize_halfback needs even dimensions");
  const Eigen::ArrayXXd src = img.to_array();
  const Eigen::Index hr = src.rows() / 2;
  const Eigen::Index hc = src.cols() / 2;
  // Half-pixel-centre sampling: small pixel (i, j) sits at source (2i + 0.5, 2j + 0.5).
  Eigen::ArrayXXd half(hr, hc);
  for (Eigen::Index r = 0; r < hr; ++r) {
    for (Eigen::Index c = 0; c < hc; ++c) half(r, c) = bilinear(src, 2.0 * r + 0.5, 2.0 * c + 0.5, false);
  }
  // Quantise the intermediate image as a real resize to disk would.
  const Eigen::ArrayXXd small = GrayImage::from_array(half).to_array();
  Eigen::ArrayXXd out(src.rows(), src.cols());
  for (Eigen::Index r = 0; r < src.rows(); ++r) {
    for (Eigen::Index c = 0; c < src.cols(); ++c) out(r, c) = bilinear(small, (r + 0.5) / 2.0 - 0.5, (c + 0.5) / 2.0 - 0.5, false);
  }
  return GrayImage::from_array(out);
}

void AttackSpec::validate() const {
  switch (kind) {
    case Kind::gaussian_noise:
      if (!(variance > 0.0) || variance > 1.0) throw ConfigError("noise variance must be in (0, 1]");
      break;
    case Kind::gaussian_filter:
      if (!(sigma > 0.0) || sigma > 10.0) throw ConfigError("gaussian sigma must be in (0, 10]");
      break;
    case Kind::rotate:
      if (!(std::abs(degrees) < 45.0)) throw ConfigError("rotation angle must satisfy |degrees| < 45");
      break;
    case Kind::jpeg_like:
      if (quality < 1 || quality > 100) throw ConfigError("JPEG quality must be in [1, 100]");
      break;
    default:
      break;
  }
}

AttackSpec parse_attack(std::string_view text) {
  const auto parts = split(trim(text), ':');
  const std::string_view name = parts.front();
  AttackSpec spec;
  bool resize_half = false;

  if (name == "none") {
    spec.kind = AttackSpec::Kind::none;
  } else if (name == "wiener3x3") {
    spec.kind = AttackSpec::Kind::wiener3x3;
  } else if (name == "median3x3") {
    spec.kind = AttackSpec::Kind::median3x3;
  } else if (name == "noise") {
    spec.kind = AttackSpec::Kind::gaussian_noise;
  } else if (name == "gaussian") {
    spec.kind = AttackSpec::Kind::gaussian_filter;
  } else if (name == "rotate") {
    spec.kind = AttackSpec::Kind::rotate;
  } else if (name == "jpeg") {
    spec.kind = AttackSpec::Kind::jpeg_like;
  } else if (name == "resize") {
    spec.kind = AttackSpec::Kind::resize_halfback;
  } else {
    throw ConfigError("unknown attack '" + std::string(name) + "'");
  }

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string_view part = parts[i];
    const std::size_t eq = part.find('=');
    const std::string_view key = part.substr(0, eq);
    const std::string_view value = eq == std::string_view::npos ? std::string_view{} : part.substr(eq + 1);
    using K = AttackSpec::Kind;
    if (spec.kind == K::gaussian_noise && key == "var") {
      spec.variance = parse_number(value, key);
    } else if (spec.kind == K::gaussian_filter && key == "sigma") {
      spec.sigma = parse_number(value, key);
    } else if (spec.kind == K::rotate && key == "deg") {
      spec.degrees = parse_number(value, key);
    } else if (spec.kind == K::rotate && key == "realign" && eq == std::string_view::npos) {
      spec.realign = true;
    } else if (spec.kind == K::jpeg_like && key == "q") {
      const double q = parse_number(value, key);
      if (q != std::floor(q)) throw ConfigError("JPEG quality must be an integer");
      spec.quality = static_cast<int>(std::clamp(q, -1.0, 1000.0));
    } else if (spec.kind == K::resize_halfback && key == "half" && eq == std::string_view::npos) {
      resize_half = true;
    } else {
      throw ConfigError("unexpected parameter '" + std::string(part) + "' for attack '" + std::string(name) + "'");
    }
  }
  if (spec.kind == AttackSpec::Kind::resize_halfback && !resize_half) {
    throw ConfigError("resize supports only 'resize:half'");
  }
  spec.validate();
  return spec;
}

std::string to_string(const AttackSpec& spec) {
  using K = AttackSpec::Kind;
  switch (spec.kind) {
    case K::none:
      return "none";
    case K::wiener3x3:
      return "wiener3x3";
    case K::median3x3:
      return "median3x3";
    case K::gaussian_noise:
      return "noise:var=" + format_number(spec.variance);
    case K::gaussian_filter:
      return "gaussian:sigma=" + format_number(spec.sigma);
    case K::rotate:
      return "rotate:deg=" + format_number(spec.degrees) + (spec.realign ? ":realign" : "");
    case K::jpeg_like:
      return "jpeg:q=" + std::to_string(spec.quality);
    case K::resize_halfback:
      return "resize:half";
  }
  return "none";
}

std::vector<AttackSpec> parse_attack_list(std::string_view text) {
  std::vector<AttackSpec> specs;
  if (trim(text).empty()) return specs;
  for (std::string_view part : split(text, ',')) specs.push_back(parse_attack(part));
  return specs;
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec, std::uint64_t seed) {
  spec.validate();
  using K = AttackSpec::Kind;
  switch (spec.kind) {
    case K::none:
      return img;
    case K::wiener3x3:
      return wiener3x3(img);
    case K::median3x3:
      return median3x3(img);
    case K::gaussian_noise:
      return gaussian_noise(img, spec.variance, seed);
    case K::gaussian_filter:
      return gaussian_filter(img, spec.sigma);
    case K::rotate: {
      GrayImage turned = rotate(img, spec.degrees);
      return spec.realign ? rotate(turned, -spec.degrees) : turned;
    }
    case K::jpeg_like:
      return jpeg_like(img, spec.quality);
    case K::resize_halfback:
      return resize_halfback(img);
  }
  return img;
}

}  // namespace dctbch
