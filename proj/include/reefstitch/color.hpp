#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "reefstitch/geometry.hpp"
#include "reefstitch/image.hpp"

namespace reefstitch {

enum class Channel { R = 0, G = 1, B = 2 };

struct ChannelAccum {
  double sum = 0.0;         // sum of intensities over all pixels
  double sumSquares = 0.0;  // sum of squared intensities
  double maxVal = 0.0;
  Point2 maxPos{0, 0};  // first pixel in row-major order attaining maxVal
  double mean = 0.0;
};

struct ChannelStats {
  std::array<ChannelAccum, 3> channel{};

  const ChannelAccum& operator[](Channel c) const {
    return channel[static_cast<int>(c)];
  }
  ChannelAccum& operator[](Channel c) { return channel[static_cast<int>(c)]; }
};

// Red and blue channel gains; green is the anchor channel and stays fixed.
struct GainPair {
  double alpha = 1.0;  // red gain
  double beta = 1.0;   // blue gain
};

// Coefficients of the per-channel quadratic intensity map
// corrected = mu * v^2 + nu * v for the red and blue channels.
struct QuadraticMapParams {
  double muR = 0.0;
  double vR = 1.0;
  double muB = 0.0;
  double vB = 1.0;
};

struct Histogram {
  int bins = 0;
  std::array<std::vector<std::int64_t>, 3> counts;
};

// Exact sums, sums of squares, maxima and their locations per channel.
// Valid on unclamped buffers too; the [0,1] bounds on the fields only hold
// for clamped input.
ChannelStats computeChannelStats(const ImageBuffer& img);

// alpha = mean_g / mean_r, beta = mean_g / mean_b.
// Throws DegenerateChannel when any involved mean is <= 1e-12.
GainPair grayWorldGains(const ChannelStats& stats);

// Same ratios over channel maxima instead of means.
GainPair retinexGains(const ChannelStats& stats);

// Multiplies red by alpha and blue by beta; green untouched. The result is
// tagged unclamped; callers clamp for display.
ImageBuffer applyGains(const ImageBuffer& img, GainPair g);

// Solves the two 2x2 systems
//   [sum I_c^2  sum I_c ] [mu_c]   [sum I_g ]
//   [max I_c^2  max I_c ] [v_c ] = [max I_g ]   for c in {r, b}
// by Gaussian elimination with partial pivoting. Throws SingularAwbSystem
// when a system determinant is within 1e-12 (relative) of zero, which
// happens for constant and all-zero channels.
QuadraticMapParams solveAwbParams(const ChannelStats& stats);

// Per-pixel quadratic evaluation on red and blue; green is bit-identical to
// the input. Result tagged unclamped.
ImageBuffer applyQuadraticMap(const ImageBuffer& img,
                              const QuadraticMapParams& p);

// The combined white balance: quadratic map from solveAwbParams, clamped
// once at the end. Constraint checks belong on the pre-clamp buffer.
ImageBuffer autoWhiteBalance(const ImageBuffer& img);

// Bin layout: value v lands in floor(v * bins), v = 1 in the top bin.
// Throws BadBinCount for bins < 2.
Histogram computeHistogram(const ImageBuffer& img, int bins);

}  // namespace reefstitch
