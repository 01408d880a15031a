#pragma once

#include <span>
#include <string>
#include <vector>

#include "reefstitch/geometry.hpp"
#include "reefstitch/image.hpp"

namespace reefstitch {

// One manually labeled fish observation; coordinates are frame-local pixels.
struct FishAnnotation {
  int frameIndex = 0;
  std::string fishId;
  std::string species;
  Point2 head;
  Point2 center;
  Point2 tail;
};

struct TrajectoryPoint {
  int frameIndex = 0;
  Point2 mappedCenter;
};

// Map-space path of one fish, sorted by frameIndex, strictly increasing.
// Gaps are preserved; no interpolation or smoothing.
struct Trajectory {
  std::string fishId;
  std::string species;
  std::vector<TrajectoryPoint> points;
};

// Applies the frame's shifted transform to a frame-local point.
// Throws FrameOutOfRange when the layout has no transform for the frame.
Point2 mapAnnotationPoint(Point2 p, const StitchLayout& layout,
                          int frameIndex);

// Groups by fishId (output sorted by fishId, hence invariant under input
// permutation), maps every center point, sorts by frame. Throws
// InconsistentSpecies or DuplicateObservation on conflicting labels.
std::vector<Trajectory> buildTrajectories(
    std::span<const FishAnnotation> annotations, const StitchLayout& layout);

struct TrajectoryStyle {
  int strokeWidth = 2;
};

// Draws one polyline per fish over a copy of the map. Colors come from a
// fixed palette assigned in sorted fishId order; points outside the canvas
// are clamped to the border.
ImageBuffer renderTrajectoryMap(const ImageBuffer& map,
                                std::span<const Trajectory> trajectories,
                                const TrajectoryStyle& style = {});

}  // namespace reefstitch
