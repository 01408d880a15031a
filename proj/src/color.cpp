#include "reefstitch/color.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "reefstitch/linalg.hpp"

namespace reefstitch {

namespace {

constexpr double kDegenerateMean = 1e-12;

const char* channelName(int c) {
  switch (c) {
    case 0: return "red";
    case 1: return "green";
    default: return "blue";
  }
}

}  // namespace

ChannelStats computeChannelStats(const ImageBuffer& img) {
  const int w = img.width;
  const int h = img.height;
  ChannelStats stats;
  for (auto& c : stats.channel) {
    c.maxVal = -std::numeric_limits<double>::infinity();
  }

  // Sequential within a row, pairwise across row totals: deterministic and
  // accurate enough for the 1e-9-relative constraint checks on any frame
  // size this tool sees.
  std::array<std::vector<double>, 3> rowSums;
  std::array<std::vector<double>, 3> rowSquares;
  for (int c = 0; c < 3; ++c) {
    rowSums[c].resize(h);
    rowSquares[c].resize(h);
  }

  for (int y = 0; y < h; ++y) {
    double sum[3] = {0, 0, 0};
    double squares[3] = {0, 0, 0};
    const double* row = img.data.data() + img.index(0, y);
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        const double v = row[3 * x + c];
        sum[c] += v;
        squares[c] += v * v;
        if (v > stats.channel[c].maxVal) {
          stats.channel[c].maxVal = v;
          stats.channel[c].maxPos = {static_cast<double>(x),
                                     static_cast<double>(y)};
        }
      }
    }
    for (int c = 0; c < 3; ++c) {
      rowSums[c][y] = sum[c];
      rowSquares[c][y] = squares[c];
    }
  }

  const double pixels = static_cast<double>(img.pixelCount());
  for (int c = 0; c < 3; ++c) {
    stats.channel[c].sum = pairwiseSum(rowSums[c]);
    stats.channel[c].sumSquares = pairwiseSum(rowSquares[c]);
    stats.channel[c].mean = stats.channel[c].sum / pixels;
  }
  return stats;
}

GainPair grayWorldGains(const ChannelStats& stats) {
  const double meanR = stats[Channel::R].mean;
  const double meanG = stats[Channel::G].mean;
  const double meanB = stats[Channel::B].mean;
  for (int c = 0; c < 3; ++c) {
    if (stats.channel[c].mean <= kDegenerateMean) {
      fail(ErrorCode::DegenerateChannel,
           std::string("gray-world gains undefined: ") + channelName(c) +
               " channel mean is zero");
    }
  }
  return {meanG / meanR, meanG / meanB};
}

GainPair retinexGains(const ChannelStats& stats) {
  for (int c = 0; c < 3; ++c) {
    if (stats.channel[c].maxVal <= kDegenerateMean) {
      fail(ErrorCode::DegenerateChannel,
           std::string("retinex gains undefined: ") + channelName(c) +
               " channel maximum is zero");
    }
  }
  return {stats[Channel::G].maxVal / stats[Channel::R].maxVal,
          stats[Channel::G].maxVal / stats[Channel::B].maxVal};
}

ImageBuffer applyGains(const ImageBuffer& img, GainPair g) {
  ImageBuffer out = img;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    out.data[i] *= g.alpha;
    out.data[i + 2] *= g.beta;
  }
  out.unclamped = true;
  return out;
}

QuadraticMapParams solveAwbParams(const ChannelStats& stats) {
  const ChannelAccum& green = stats[Channel::G];
  QuadraticMapParams params;

  auto solveChannel = [&green](const ChannelAccum& ch, const char* name,
                               double& mu, double& v) {
    std::array<double, 4> a{ch.sumSquares, ch.sum, ch.maxVal * ch.maxVal,
                            ch.maxVal};
    std::array<double, 2> b{green.sum, green.maxVal};
    std::array<double, 2> x{};
    if (!gaussianSolve(2, a, b, x)) {
      fail(ErrorCode::SingularAwbSystem,
           std::string("white-balance system for the ") + name +
               " channel is singular (constant or empty channel)");
    }
    mu = x[0];
    v = x[1];
  };

  solveChannel(stats[Channel::R], "red", params.muR, params.vR);
  solveChannel(stats[Channel::B], "blue", params.muB, params.vB);
  return params;
}

ImageBuffer applyQuadraticMap(const ImageBuffer& img,
                              const QuadraticMapParams& p) {
  ImageBuffer out = img;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    const double r = out.data[i];
    const double b = out.data[i + 2];
    out.data[i] = p.muR * r * r + p.vR * r;
    out.data[i + 2] = p.muB * b * b + p.vB * b;
  }
  out.unclamped = true;
  return out;
}

ImageBuffer autoWhiteBalance(const ImageBuffer& img) {
  return clamp(applyQuadraticMap(img, solveAwbParams(computeChannelStats(img))));
}

Histogram computeHistogram(const ImageBuffer& img, int bins) {
  if (bins < 2) {
    fail(ErrorCode::BadBinCount, "histogram needs at least 2 bins");
  }
  Histogram hist;
  hist.bins = bins;
  for (auto& c : hist.counts) c.assign(bins, 0);
  for (std::size_t i = 0; i < img.data.size(); i += 3) {
    for (int c = 0; c < 3; ++c) {
      int bin = static_cast<int>(std::floor(img.data[i + c] * bins));
      bin = bin < 0 ? 0 : (bin >= bins ? bins - 1 : bin);
      ++hist.counts[c][bin];
    }
  }
  return hist;
}

}  // namespace reefstitch
