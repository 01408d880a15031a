#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "reefstitch/geometry.hpp"
#include "reefstitch/image.hpp"
#include "reefstitch/ransac.hpp"

namespace reefstitch {

// Tracks which canvas pixels received content from some frame; everything
// else is void and stays black.
struct CoverageMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> covered;

  CoverageMask() = default;
  CoverageMask(int w, int h)
      : width(w), height(h),
        covered(static_cast<std::size_t>(w) * h, std::uint8_t{0}) {}

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  bool at(int x, int y) const { return covered[index(x, y)] != 0; }
  void set(int x, int y, bool v) { covered[index(x, y)] = v ? 1 : 0; }

  std::int64_t count() const;
  bool sameSize(const CoverageMask& o) const {
    return width == o.width && height == o.height;
  }
};

enum class Interpolation { Nearest, Bilinear };
enum class CompositeOrder { LaterOnTop, EarlierOnTop };

struct StitchConfig {
  Interpolation interpolation = Interpolation::Bilinear;
  int closingKernel = 3;  // odd side of the square structuring element
  int closingIterations = 1;
  CompositeOrder compositeOrder = CompositeOrder::LaterOnTop;
  // Guard against runaway transforms: layouts beyond this per-side extent
  // abort with CanvasTooLarge instead of allocating.
  int maxCanvasSide = 20000;
};

struct FrameSize {
  int width = 0;
  int height = 0;
};

// Maps the four corners (0,0),(w,0),(0,h),(w,h) of every frame through its
// transform, takes the union bounding box, and shifts all transforms by the
// integer padding offset (-min, clamped at zero) so every corner lands in
// [0,canvasW] x [0,canvasH]. Canvas dimensions are ceil'd integers and never
// below the largest input frame.
StitchLayout computeLayout(std::span<const FrameSize> frameSizes,
                           std::span<const AffineTransform> transforms,
                           int maxCanvasSide = 20000);

// Inverse-mapped warp: canvas pixel q samples the source at t^-1(q) when
// that lands inside the frame, and stays black and uncovered otherwise.
std::pair<ImageBuffer, CoverageMask> warpFrame(const ImageBuffer& img,
                                               const AffineTransform& t,
                                               int canvasW, int canvasH,
                                               const StitchConfig& cfg);

std::pair<ImageBuffer, CoverageMask> composite(const ImageBuffer& base,
                                               const CoverageMask& baseMask,
                                               const ImageBuffer& warped,
                                               const CoverageMask& warpedMask,
                                               const StitchConfig& cfg);

// Grayscale closing: channel-wise dilation (max over the square element)
// followed by erosion (min), cfg.closingIterations times, borders handled
// by edge replication.
ImageBuffer morphologicalClose(const ImageBuffer& img,
                               const StitchConfig& cfg);

// Binary closing of a coverage mask with the same structuring element.
CoverageMask morphologicalCloseMask(const CoverageMask& mask,
                                    const StitchConfig& cfg);

struct StitchResult {
  ImageBuffer map;        // final map, seam gaps filled
  CoverageMask coverage;  // union coverage before the closing step
  StitchLayout layout;
  std::vector<RansacResult> ransacPerFrame;  // one entry per frame index >= 1
};

// End-to-end stitching: RANSAC per frame against frame 0, layout, warp,
// iterative composite, then a closing pass that fills the black gaps
// between frame coverages. Covered pixels are untouched by the closing and
// the void outside the closed coverage stays black, so the map of a single
// full-coverage frame is the frame itself.
StitchResult stitchSequence(std::span<const ImageBuffer> frames,
                            std::span<const CorrespondenceSet> correspondences,
                            const RansacConfig& ransacCfg,
                            const StitchConfig& stitchCfg);

}  // namespace reefstitch
