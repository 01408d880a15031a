#include "reefstitch/stitch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "reefstitch/rng.hpp"

namespace reefstitch {

namespace {

void requireOddKernel(int kernel) {
  if (kernel < 1 || kernel % 2 == 0) {
    fail(ErrorCode::ValidationError,
         "closing kernel must be an odd positive side length");
  }
}

// Separable running max/min over a clamped window: equivalent to the full
// square-element pass with edge replication.
void morphPass(const std::vector<double>& src, std::vector<double>& dst,
               int width, int height, int stride, int radius, bool dilate) {
  auto better = [dilate](double a, double b) {
    return dilate ? std::max(a, b) : std::min(a, b);
  };
  std::vector<double> tmp(src.size());
  // horizontal
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int lo = std::max(0, x - radius);
      const int hi = std::min(width - 1, x + radius);
      for (int c = 0; c < stride; ++c) {
        double v = src[(static_cast<std::size_t>(y) * width + lo) * stride + c];
        for (int i = lo + 1; i <= hi; ++i) {
          v = better(v, src[(static_cast<std::size_t>(y) * width + i) * stride + c]);
        }
        tmp[(static_cast<std::size_t>(y) * width + x) * stride + c] = v;
      }
    }
  }
  // vertical
  for (int y = 0; y < height; ++y) {
    const int lo = std::max(0, y - radius);
    const int hi = std::min(height - 1, y + radius);
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < stride; ++c) {
        double v = tmp[(static_cast<std::size_t>(lo) * width + x) * stride + c];
        for (int i = lo + 1; i <= hi; ++i) {
          v = better(v, tmp[(static_cast<std::size_t>(i) * width + x) * stride + c]);
        }
        dst[(static_cast<std::size_t>(y) * width + x) * stride + c] = v;
      }
    }
  }
}

}  // namespace

std::int64_t CoverageMask::count() const {
  return std::accumulate(covered.begin(), covered.end(), std::int64_t{0},
                         [](std::int64_t acc, std::uint8_t v) {
                           return acc + (v != 0 ? 1 : 0);
                         });
}

StitchLayout computeLayout(std::span<const FrameSize> frameSizes,
                           std::span<const AffineTransform> transforms,
                           int maxCanvasSide) {
  if (frameSizes.empty() || frameSizes.size() != transforms.size()) {
    fail(ErrorCode::ValidationError,
         "layout needs one transform per frame and at least one frame");
  }

  double minX = 0, minY = 0, maxX = 0, maxY = 0;
  bool first = true;
  int maxFrameW = 0;
  int maxFrameH = 0;
  for (std::size_t i = 0; i < frameSizes.size(); ++i) {
    const AffineTransform& t = transforms[i];
    for (const double v : t.m) {
      if (!std::isfinite(v)) {
        fail(ErrorCode::NonFiniteInput,
             "frame " + std::to_string(i) + " has a non-finite transform");
      }
    }
    if (std::abs(t.det()) <= kSingularDetTol) {
      fail(ErrorCode::SingularTransform,
           "frame " + std::to_string(i) + " has a singular transform");
    }
    const double w = frameSizes[i].width;
    const double h = frameSizes[i].height;
    maxFrameW = std::max(maxFrameW, frameSizes[i].width);
    maxFrameH = std::max(maxFrameH, frameSizes[i].height);
    const Point2 corners[4] = {{0, 0}, {w, 0}, {0, h}, {w, h}};
    for (const Point2& corner : corners) {
      const Point2 q = applyAffine(t, corner);
      if (first) {
        minX = maxX = q.x;
        minY = maxY = q.y;
        first = false;
      } else {
        minX = std::min(minX, q.x);
        maxX = std::max(maxX, q.x);
        minY = std::min(minY, q.y);
        maxY = std::max(maxY, q.y);
      }
    }
  }

  StitchLayout layout;
  layout.offset = {std::max(0.0, std::ceil(-minX)),
                   std::max(0.0, std::ceil(-minY))};
  // cap check stays in doubles: a runaway transform must not overflow int
  const double canvasW =
      std::max<double>(maxFrameW, std::ceil(maxX) + layout.offset.x);
  const double canvasH =
      std::max<double>(maxFrameH, std::ceil(maxY) + layout.offset.y);
  if (canvasW > maxCanvasSide || canvasH > maxCanvasSide) {
    fail(ErrorCode::CanvasTooLarge,
         "stitched canvas " + std::to_string(static_cast<long long>(
             std::min(canvasW, 1e18))) + "x" +
             std::to_string(static_cast<long long>(std::min(canvasH, 1e18))) +
             " exceeds the " + std::to_string(maxCanvasSide) +
             " px per-side cap");
  }
  layout.canvasWidth = static_cast<int>(canvasW);
  layout.canvasHeight = static_cast<int>(canvasH);

  layout.shiftedTransforms.reserve(transforms.size());
  for (const AffineTransform& t : transforms) {
    AffineTransform shifted = t;
    shifted.m[2] += layout.offset.x;
    shifted.m[5] += layout.offset.y;
    layout.shiftedTransforms.push_back(shifted);
  }
  return layout;
}

std::pair<ImageBuffer, CoverageMask> warpFrame(const ImageBuffer& img,
                                               const AffineTransform& t,
                                               int canvasW, int canvasH,
                                               const StitchConfig& cfg) {
  const AffineTransform inv = invertAffine(t);
  ImageBuffer out(canvasW, canvasH);
  CoverageMask mask(canvasW, canvasH);

  const int w = img.width;
  const int h = img.height;
  for (int y = 0; y < canvasH; ++y) {
    for (int x = 0; x < canvasW; ++x) {
      const Point2 p = applyAffine(
          inv, {static_cast<double>(x), static_cast<double>(y)});
      if (cfg.interpolation == Interpolation::Nearest) {
        const int sx = static_cast<int>(std::llround(p.x));
        const int sy = static_cast<int>(std::llround(p.y));
        if (sx >= 0 && sx < w && sy >= 0 && sy < h) {
          out.set(x, y, img.at(sx, sy));
          mask.set(x, y, true);
        }
      } else {
        if (p.x >= 0.0 && p.x <= w - 1.0 && p.y >= 0.0 && p.y <= h - 1.0) {
          const int x0 = static_cast<int>(std::floor(p.x));
          const int y0 = static_cast<int>(std::floor(p.y));
          const int x1 = std::min(x0 + 1, w - 1);
          const int y1 = std::min(y0 + 1, h - 1);
          const double fx = p.x - x0;
          const double fy = p.y - y0;
          const Rgb p00 = img.at(x0, y0);
          const Rgb p10 = img.at(x1, y0);
          const Rgb p01 = img.at(x0, y1);
          const Rgb p11 = img.at(x1, y1);
          auto lerp2 = [fx, fy](double v00, double v10, double v01,
                                double v11) {
            const double top = v00 + fx * (v10 - v00);
            const double bottom = v01 + fx * (v11 - v01);
            return top + fy * (bottom - top);
          };
          out.set(x, y,
                  {lerp2(p00.r, p10.r, p01.r, p11.r),
                   lerp2(p00.g, p10.g, p01.g, p11.g),
                   lerp2(p00.b, p10.b, p01.b, p11.b)});
          mask.set(x, y, true);
        }
      }
    }
  }
  return {std::move(out), std::move(mask)};
}

std::pair<ImageBuffer, CoverageMask> composite(const ImageBuffer& base,
                                               const CoverageMask& baseMask,
                                               const ImageBuffer& warped,
                                               const CoverageMask& warpedMask,
                                               const StitchConfig& cfg) {
  if (!base.sameSize(warped) || !baseMask.sameSize(warpedMask) ||
      base.width != baseMask.width || base.height != baseMask.height) {
    fail(ErrorCode::DimensionMismatch,
         "composite inputs must share canvas dimensions");
  }
  ImageBuffer out = base;
  CoverageMask mask = baseMask;
  for (int y = 0; y < base.height; ++y) {
    for (int x = 0; x < base.width; ++x) {
      if (!warpedMask.at(x, y)) continue;
      const bool overlap = baseMask.at(x, y);
      if (!overlap || cfg.compositeOrder == CompositeOrder::LaterOnTop) {
        out.set(x, y, warped.at(x, y));
      }
      mask.set(x, y, true);
    }
  }
  return {std::move(out), std::move(mask)};
}

ImageBuffer morphologicalClose(const ImageBuffer& img,
                               const StitchConfig& cfg) {
  requireOddKernel(cfg.closingKernel);
  const int radius = cfg.closingKernel / 2;
  if (radius == 0 || cfg.closingIterations <= 0) return img;

  ImageBuffer out = img;
  std::vector<double> scratch(img.data.size());
  for (int it = 0; it < cfg.closingIterations; ++it) {
    morphPass(out.data, scratch, img.width, img.height, 3, radius, true);
    morphPass(scratch, out.data, img.width, img.height, 3, radius, false);
  }
  return out;
}

CoverageMask morphologicalCloseMask(const CoverageMask& mask,
                                    const StitchConfig& cfg) {
  requireOddKernel(cfg.closingKernel);
  const int radius = cfg.closingKernel / 2;
  if (radius == 0 || cfg.closingIterations <= 0) return mask;

  // Zero-pad by the total dilation reach so the off-canvas ring the
  // dilation would occupy is represented explicitly; otherwise the erosion
  // cannot pull a border-touching dilation back and coverage would creep
  // into the void along the canvas edge.
  const int pad = radius * cfg.closingIterations;
  const int pw = mask.width + 2 * pad;
  const int ph = mask.height + 2 * pad;
  std::vector<double> current(static_cast<std::size_t>(pw) * ph, 0.0);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      current[static_cast<std::size_t>(y + pad) * pw + (x + pad)] =
          mask.at(x, y) ? 1.0 : 0.0;
    }
  }
  std::vector<double> scratch(current.size());
  for (int it = 0; it < cfg.closingIterations; ++it) {
    morphPass(current, scratch, pw, ph, 1, radius, true);
    morphPass(scratch, current, pw, ph, 1, radius, false);
  }
  CoverageMask out(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      out.covered[out.index(x, y)] =
          current[static_cast<std::size_t>(y + pad) * pw + (x + pad)] > 0.5
              ? 1
              : 0;
    }
  }
  return out;
}

StitchResult stitchSequence(std::span<const ImageBuffer> frames,
                            std::span<const CorrespondenceSet> correspondences,
                            const RansacConfig& ransacCfg,
                            const StitchConfig& stitchCfg) {
  if (frames.empty()) {
    fail(ErrorCode::ValidationError, "stitching needs at least one frame");
  }

  const int n = static_cast<int>(frames.size());
  std::vector<AffineTransform> transforms(n);
  StitchResult result;
  result.ransacPerFrame.resize(n > 0 ? n - 1 : 0);

  std::vector<const CorrespondenceSet*> sets(n, nullptr);
  for (int i = 1; i < n; ++i) {
    for (const CorrespondenceSet& c : correspondences) {
      if (c.frameIndex == i) {
        sets[i] = &c;
        break;
      }
    }
    if (sets[i] == nullptr) {
      fail(ErrorCode::ValidationError,
           "no correspondences supplied for frame " + std::to_string(i));
    }
  }

  // Estimation runs concurrently; each frame draws from an independent
  // deterministic stream, so scheduling cannot change any result.
  parallelFor(n - 1, [&](int k) {
    const int i = k + 1;
    RansacConfig frameCfg = ransacCfg;
    frameCfg.rngSeed =
        SeededRng::mix(ransacCfg.rngSeed, static_cast<std::uint64_t>(i));
    RansacResult estimate = ransacAffine(sets[i]->pairs, frameCfg);
    transforms[i] = estimate.transform;
    result.ransacPerFrame[k] = std::move(estimate);
  });

  std::vector<FrameSize> sizes(n);
  for (int i = 0; i < n; ++i) {
    sizes[i] = {frames[i].width, frames[i].height};
  }
  result.layout = computeLayout(sizes, transforms, stitchCfg.maxCanvasSide);

  ImageBuffer canvas(result.layout.canvasWidth, result.layout.canvasHeight);
  CoverageMask mask(result.layout.canvasWidth, result.layout.canvasHeight);
  for (int i = 0; i < n; ++i) {
    auto [warped, warpedMask] =
        warpFrame(frames[i], result.layout.shiftedTransforms[i],
                  result.layout.canvasWidth, result.layout.canvasHeight,
                  stitchCfg);
    auto [merged, mergedMask] =
        composite(canvas, mask, warped, warpedMask, stitchCfg);
    canvas = std::move(merged);
    mask = std::move(mergedMask);
  }
  result.coverage = mask;

  // Closing as gap fill: covered pixels keep their composited values
  // bit-identically; black gaps the coverage closing absorbs take the
  // grayscale-closing value; the void outside stays black.
  if (stitchCfg.closingKernel >= 3 && stitchCfg.closingIterations > 0) {
    const ImageBuffer closed = morphologicalClose(canvas, stitchCfg);
    const CoverageMask closedMask = morphologicalCloseMask(mask, stitchCfg);
    for (int y = 0; y < canvas.height; ++y) {
      for (int x = 0; x < canvas.width; ++x) {
        if (!mask.at(x, y) && closedMask.at(x, y)) {
          canvas.set(x, y, closed.at(x, y));
        }
      }
    }
  }

  result.map = std::move(canvas);
  return result;
}

}  // namespace reefstitch
