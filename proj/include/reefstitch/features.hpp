#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reefstitch/geometry.hpp"
#include "reefstitch/trajectory.hpp"

namespace reefstitch {

struct NeighborObservation {
  int frameIndex = 0;
  std::string fishId;
  std::string neighborId;
  double distance = 0.0;  // px, to the nearest fish
  double angle = 0.0;     // radians in [0, pi] between the two headings
  std::string neighborSpecies;
};

struct BehaviorFeatureRow {
  std::string fishId;
  std::string species;
  double totalDistance = 0.0;  // px, map space
  double displacement = 0.0;   // px, map space
  // Absent (not zero) for fish observed in a single frame.
  std::optional<double> averageSpeed;  // px/s
  double meanBodyLength = 0.0;         // px, frame-local space
  std::vector<NeighborObservation> neighborObservations;
};

// Which anatomical point the nearest-neighbor distance uses.
enum class NeighborPoint { Center, Head };

// Sum of Euclidean segment lengths; 0 for a single point.
double totalDistance(const Trajectory& traj);

// Beeline from first to last point.
double displacement(const Trajectory& traj);

// totalDistance over elapsed time; frame span divided by fps. Throws
// SinglePoint for one-point trajectories and ZeroDuration when first and
// last frame coincide.
double averageSpeed(const Trajectory& traj, double fps);

// ||head - center|| + ||center - tail||.
double bodyLength(const FishAnnotation& a);

// Unit vector from center through head. Throws UndefinedHeading when the
// two points are closer than 1e-9 px.
Point2 headingDirection(const FishAnnotation& a);

// Nearest-neighbor triplet per fish for one frame of annotations already
// mapped into map coordinates. Distance ties break to the lexicographically
// smallest neighborId; the angle is acos of the clamped heading dot
// product. Throws TooFewFish below 2 fish.
std::vector<NeighborObservation> nearestNeighborFeatures(
    std::span<const FishAnnotation> mappedFrameAnnotations,
    NeighborPoint mode = NeighborPoint::Center);

// One row per fish: path features in map space, body length averaged over
// the fish's frame-local annotations, neighbor observations per frame.
// Rows sorted by fishId, observations by frameIndex.
std::vector<BehaviorFeatureRow> buildFeatureTable(
    std::span<const FishAnnotation> annotations,
    std::span<const Trajectory> trajectories, const StitchLayout& layout,
    double fps, NeighborPoint mode = NeighborPoint::Center);

}  // namespace reefstitch
