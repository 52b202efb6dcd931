#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "shapebox/render.hpp"

namespace shapebox {

/// Tile-stream wire format. Every frame is
///   u32 length (big endian, counts the bytes that follow it)
///   u8  type (0 = tile, 1 = error)
///   payload
/// Tile payloads are x, y, w, h as big-endian u32 followed by a PNG of the
/// tile; error payloads are a UTF-8 JSON object with "error" and "path".
namespace stream {

enum class FrameType : std::uint8_t { kTile = 0, kError = 1 };

struct Frame {
  FrameType type = FrameType::kTile;
  Rect rect;                          // tile frames only
  std::vector<std::uint8_t> payload;  // PNG bytes, or the error document
};

std::string encode_tile_frame(const TileImage& tile);
std::string encode_error_frame(const std::string& message, const std::string& path);

/// Splits a complete stream body into frames; throws std::runtime_error on
/// truncated or malformed input.
std::vector<Frame> decode_frames(std::span<const std::uint8_t> body);

}  // namespace stream

struct ServiceConfig {
  std::string bind_address = "127.0.0.1";
  int port = 8787;                         // 0 picks a free port
  std::size_t threads = 0;                 // render workers, 0 = hardware count
  std::size_t max_jobs = 0;                // simultaneous renders, 0 = worker count
  std::int64_t max_pixels = 4'000'000;     // width × height cap per request
  std::size_t max_body_bytes = 1u << 20;   // request size cap
};

/// HTTP render service: health, one-shot and streamed renders, probes and the
/// preset catalog. One worker pool is shared by all requests.
class RenderService {
 public:
  explicit RenderService(ServiceConfig config);
  ~RenderService();

  RenderService(const RenderService&) = delete;
  RenderService& operator=(const RenderService&) = delete;

  /// Binds the listening socket and returns the bound port.
  int bind();
  /// Serves until stop(); call bind() first.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace shapebox
