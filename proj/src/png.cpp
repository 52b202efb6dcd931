#include "shapebox/png.hpp"

#include <zlib.h>

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

namespace shapebox {

namespace {

constexpr std::array<std::uint8_t, 8> kSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return (std::uint32_t{b[at]} << 24) | (std::uint32_t{b[at + 1]} << 16) | (std::uint32_t{b[at + 2]} << 8) |
         std::uint32_t{b[at + 3]};
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4], std::span<const std::uint8_t> data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  const std::size_t start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  const uLong crc = crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.width <= 0 || image.height <= 0) {
    throw PngError("cannot encode a " + std::to_string(image.width) + "x" + std::to_string(image.height) + " image");
  }
  const std::size_t stride = static_cast<std::size_t>(image.width) * 3;
  if (image.rgb.size() != stride * static_cast<std::size_t>(image.height)) {
    throw PngError("pixel buffer size does not match image dimensions");
  }

  std::vector<std::uint8_t> raw;
  raw.reserve((stride + 1) * static_cast<std::size_t>(image.height));
  for (int y = 0; y < image.height; ++y) {
    raw.push_back(0);
    const auto* row = image.rgb.data() + stride * static_cast<std::size_t>(y);
    raw.insert(raw.end(), row, row + stride);
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> packed(packed_size);
  if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK) {
    throw PngError("zlib compression failed");
  }
  packed.resize(packed_size);

  std::vector<std::uint8_t> out(kSignature.begin(), kSignature.end());
  std::vector<std::uint8_t> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(image.width));
  put_u32(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // depth 8, RGB, deflate, adaptive filters, no interlace
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", packed);
  put_chunk(out, "IEND", {});
  return out;
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSignature.size() || !std::equal(kSignature.begin(), kSignature.end(), bytes.begin())) {
    throw PngError("not a PNG stream");
  }
  Image img;
  std::vector<std::uint8_t> packed;
  bool seen_header = false;
  bool seen_end = false;
  std::size_t at = kSignature.size();
  while (at + 12 <= bytes.size() && !seen_end) {
    const std::uint32_t len = get_u32(bytes, at);
    if (at + 12 + len > bytes.size()) throw PngError("truncated chunk");
    const auto type = std::string(reinterpret_cast<const char*>(bytes.data() + at + 4), 4);
    const auto data = bytes.subspan(at + 8, len);
    const uLong crc = crc32(0L, bytes.data() + at + 4, len + 4);
    if (get_u32(bytes, at + 8 + len) != static_cast<std::uint32_t>(crc)) throw PngError("CRC mismatch in " + type);
    if (type == "IHDR") {
      if (len != 13) throw PngError("bad IHDR length");
      img.width = static_cast<int>(get_u32(data, 0));
      img.height = static_cast<int>(get_u32(data, 4));
      if (data[8] != 8 || data[9] != 2 || data[10] != 0 || data[11] != 0 || data[12] != 0) {
        throw PngError("only 8-bit non-interlaced RGB PNGs are supported");
      }
      seen_header = true;
    } else if (type == "IDAT") {
      packed.insert(packed.end(), data.begin(), data.end());
    } else if (type == "IEND") {
      seen_end = true;
    }
    at += 12 + len;
  }
  if (!seen_header || !seen_end) throw PngError("missing IHDR or IEND");
  if (img.width <= 0 || img.height <= 0) throw PngError("zero-sized image");

  const std::size_t stride = static_cast<std::size_t>(img.width) * 3;
  std::vector<std::uint8_t> raw((stride + 1) * static_cast<std::size_t>(img.height));
  uLongf raw_size = static_cast<uLongf>(raw.size());
  if (uncompress(raw.data(), &raw_size, packed.data(), static_cast<uLong>(packed.size())) != Z_OK ||
      raw_size != raw.size()) {
    throw PngError("corrupt image data");
  }

  img.rgb.assign(stride * static_cast<std::size_t>(img.height), 0);
  for (int y = 0; y < img.height; ++y) {
    const std::uint8_t filter = raw[(stride + 1) * static_cast<std::size_t>(y)];
    const std::uint8_t* src = raw.data() + (stride + 1) * static_cast<std::size_t>(y) + 1;
    std::uint8_t* dst = img.rgb.data() + stride * static_cast<std::size_t>(y);
    const std::uint8_t* prev = y > 0 ? dst - stride : nullptr;
    for (std::size_t i = 0; i < stride; ++i) {
      const int a = i >= 3 ? dst[i - 3] : 0;
      const int b = prev ? prev[i] : 0;
      const int c = (prev && i >= 3) ? prev[i - 3] : 0;
      int pred = 0;
      switch (filter) {
        case 0:
          break;
        case 1:
          pred = a;
          break;
        case 2:
          pred = b;
          break;
        case 3:
          pred = (a + b) / 2;
          break;
        case 4:
          pred = paeth(a, b, c);
          break;
        default:
          throw PngError("unknown row filter " + std::to_string(filter));
      }
      dst[i] = static_cast<std::uint8_t>(src[i] + pred);
    }
  }
  return img;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return bytes;
}

}  // namespace shapebox
