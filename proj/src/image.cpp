#include "dctbch/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "dctbch/errors.hpp"

namespace dctbch {

GrayImage GrayImage::from_array(const Eigen::ArrayXXd& values) {
  PixelMatrix p(values.rows(), values.cols());
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double v = std::round(values(r, c));
      p(r, c) = static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    }
  }
  return GrayImage(std::move(p));
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

  std::string magic() {
    if (bytes_.size() < 2) throw IoError("truncated PNM header");
    pos_ = 2;
    return bytes_.substr(0, 2);
  }

  long number() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
    if (start == pos_) throw IoError("malformed PNM header");
    if (pos_ - start > 9) throw IoError("PNM header value too large");
    return std::stol(bytes_.substr(start, pos_ - start));
  }

  /// Offset of the raster, past the single whitespace byte that ends the header.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw IoError("malformed PNM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage decode_pgm(const std::string& bytes) {
  HeaderReader h(bytes);
  if (h.magic() != "P5") throw IoError("not a binary PGM (P5) file");
  const long width = h.number();
  const long height = h.number();
  const long maxval = h.number();
  if (width <= 0 || height <= 0) throw IoError("PGM has zero size");
  if (maxval != 255) throw IoError("only 8-bit PGM (maxval 255) is supported");
  const std::size_t start = h.raster_start();
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < start + count) throw IoError("truncated PGM raster");

  GrayImage img(static_cast<int>(width), static_cast<int>(height));
  std::copy_n(reinterpret_cast<const std::uint8_t*>(bytes.data() + start), count, img.pixels.data());
  return img;
}

std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::size_t>(img.pixels.size()));
  return out;
}

BitImage decode_pbm(const std::string& bytes) {
  HeaderReader h(bytes);
  if (h.magic() != "P4") throw IoError("not a binary PBM (P4) file");
  const long width = h.number();
  const long height = h.number();
  if (width <= 0 || height <= 0) throw IoError("PBM has zero size");
  const std::size_t start = h.raster_start();
  const auto row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
  if (bytes.size() < start + row_bytes * static_cast<std::size_t>(height)) throw IoError("truncated PBM raster");

  BitImage img{static_cast<int>(width), static_cast<int>(height), {}};
  img.bits.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (long r = 0; r < height; ++r) {
    const auto* row = reinterpret_cast<const std::uint8_t*>(bytes.data() + start + static_cast<std::size_t>(r) * row_bytes);
    for (long c = 0; c < width; ++c) img.bits.push_back((row[c / 8] >> (7 - c % 8)) & 1U);
  }
  return img;
}

std::string encode_pbm(const BitImage& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.bits.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height)) {
    throw ConfigError("encode_pbm: bit count does not match dimensions");
  }
  std::string out = "P4\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
  const auto row_bytes = (static_cast<std::size_t>(img.width) + 7) / 8;
  for (int r = 0; r < img.height; ++r) {
    std::string row(row_bytes, '\0');
    for (int c = 0; c < img.width; ++c) {
      if (img.bits[static_cast<std::size_t>(r) * static_cast<std::size_t>(img.width) + static_cast<std::size_t>(c)] & 1U) {
        row[static_cast<std::size_t>(c / 8)] = static_cast<char>(row[static_cast<std::size_t>(c / 8)] | (0x80 >> (c % 8)));
      }
    }
    out += row;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error writing " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(read_file(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) { write_file(path, encode_pgm(img)); }

BitImage read_pbm(const std::filesystem::path& path) {
  try {
    return decode_pbm(read_file(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_pbm(const std::filesystem::path& path, const BitImage& img) { write_file(path, encode_pbm(img)); }

Bits read_raw_bits(const std::filesystem::path& path) { return decode_raw_bits(read_file(path)); }

Bits decode_raw_bits(std::string_view bytes) {
  Bits bits;
  bits.reserve(bytes.size() * 8);
  for (char ch : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back((static_cast<unsigned char>(ch) >> i) & 1U);
  }
  return bits;
}

void write_raw_bits(const std::filesystem::path& path, const Bits& bits) {
  std::string bytes((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1U) bytes[i / 8] = static_cast<char>(bytes[i / 8] | (0x80 >> (i % 8)));
  }
  write_file(path, bytes);
}

}  // namespace dctbch
