#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "reefstitch/error.hpp"

namespace reefstitch {

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

// Dense row-major interleaved RGB raster with intensities normalized to
// [0,1]. Gain and quadratic-map stages may push values out of range; such
// buffers carry unclamped=true until clamp() runs. All pixel math in the
// pipeline happens in this one domain; 8-bit files are divided by 255 on
// load and re-quantized on save.
struct ImageBuffer {
  int width = 0;
  int height = 0;
  bool unclamped = false;
  std::vector<double> data;  // 3 * width * height

  ImageBuffer() = default;

  ImageBuffer(int w, int h, Rgb fill = {}) : width(w), height(h) {
    if (w < 1 || h < 1) {
      fail(ErrorCode::ValidationError, "image dimensions must be at least 1x1");
    }
    data.resize(3 * static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < data.size(); i += 3) {
      data[i] = fill.r;
      data[i + 1] = fill.g;
      data[i + 2] = fill.b;
    }
  }

  std::int64_t pixelCount() const {
    return static_cast<std::int64_t>(width) * height;
  }

  std::size_t index(int x, int y) const {
    return 3 * (static_cast<std::size_t>(y) * width + x);
  }

  bool contains(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }

  Rgb at(int x, int y) const {
    const std::size_t i = index(x, y);
    return {data[i], data[i + 1], data[i + 2]};
  }

  void set(int x, int y, Rgb v) {
    const std::size_t i = index(x, y);
    data[i] = v.r;
    data[i + 1] = v.g;
    data[i + 2] = v.b;
  }

  bool sameSize(const ImageBuffer& o) const {
    return width == o.width && height == o.height;
  }
};

// Maps every intensity to min(1, max(0, v)) and clears the unclamped tag.
// Throws NonFiniteInput on NaN or infinity.
ImageBuffer clamp(const ImageBuffer& img);

}  // namespace reefstitch
