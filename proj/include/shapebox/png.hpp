#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace shapebox {

/// Row-major 8-bit RGB pixels.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  bool operator==(const Image&) const = default;
};

class PngError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-interlaced 8-bit RGB PNG, filter type 0 on every row, zlib level 6.
/// Identical input always yields identical bytes.
std::vector<std::uint8_t> encode_png(const Image& image);

/// Decodes 8-bit RGB, non-interlaced PNGs with any of the five row filters.
Image decode_png(std::span<const std::uint8_t> bytes);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace shapebox
