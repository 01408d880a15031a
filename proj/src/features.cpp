#include "reefstitch/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace reefstitch {

double totalDistance(const Trajectory& traj) {
  double sum = 0.0;
  for (std::size_t i = 1; i < traj.points.size(); ++i) {
    sum += distance(traj.points[i].mappedCenter,
                    traj.points[i - 1].mappedCenter);
  }
  return sum;
}

double displacement(const Trajectory& traj) {
  if (traj.points.empty()) return 0.0;
  return distance(traj.points.back().mappedCenter,
                  traj.points.front().mappedCenter);
}

double averageSpeed(const Trajectory& traj, double fps) {
  if (fps <= 0.0) {
    fail(ErrorCode::ValidationError, "fps must be positive");
  }
  if (traj.points.size() < 2) {
    fail(ErrorCode::SinglePoint,
         "average speed undefined for a single observation");
  }
  const int span =
      traj.points.back().frameIndex - traj.points.front().frameIndex;
  if (span == 0) {
    fail(ErrorCode::ZeroDuration,
         "trajectory starts and ends in the same frame");
  }
  return totalDistance(traj) / (span / fps);
}

double bodyLength(const FishAnnotation& a) {
  return distance(a.head, a.center) + distance(a.center, a.tail);
}

Point2 headingDirection(const FishAnnotation& a) {
  const Point2 v = a.head - a.center;
  const double n = norm(v);
  if (n <= 1e-9) {
    fail(ErrorCode::UndefinedHeading,
         "fish '" + a.fishId + "' has coincident head and center points");
  }
  return {v.x / n, v.y / n};
}

std::vector<NeighborObservation> nearestNeighborFeatures(
    std::span<const FishAnnotation> mappedFrameAnnotations,
    NeighborPoint mode) {
  const std::size_t n = mappedFrameAnnotations.size();
  if (n < 2) {
    fail(ErrorCode::TooFewFish,
         "nearest-neighbor features need at least 2 fish in a frame");
  }

  auto anchorOf = [mode](const FishAnnotation& a) {
    return mode == NeighborPoint::Center ? a.center : a.head;
  };

  std::vector<Point2> headings(n);
  for (std::size_t i = 0; i < n; ++i) {
    headings[i] = headingDirection(mappedFrameAnnotations[i]);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mappedFrameAnnotations[a].fishId < mappedFrameAnnotations[b].fishId;
  });

  std::vector<NeighborObservation> out;
  out.reserve(n);
  for (const std::size_t i : order) {
    const FishAnnotation& focal = mappedFrameAnnotations[i];
    std::size_t best = n;
    double bestDist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = distance(anchorOf(focal),
                                anchorOf(mappedFrameAnnotations[j]));
      const bool closer =
          best == n || d < bestDist ||
          (d == bestDist && mappedFrameAnnotations[j].fishId <
                                mappedFrameAnnotations[best].fishId);
      if (closer) {
        best = j;
        bestDist = d;
      }
    }
    const double cosine =
        std::clamp(dot(headings[best], headings[i]), -1.0, 1.0);
    out.push_back({focal.frameIndex, focal.fishId,
                   mappedFrameAnnotations[best].fishId, bestDist,
                   std::acos(cosine), mappedFrameAnnotations[best].species});
  }
  return out;
}

std::vector<BehaviorFeatureRow> buildFeatureTable(
    std::span<const FishAnnotation> annotations,
    std::span<const Trajectory> trajectories, const StitchLayout& layout,
    double fps, NeighborPoint mode) {
  // Body length averages use the frame-local labels; a sheared or scaled
  // affine fit must not distort anatomy.
  std::map<std::string, std::pair<double, int>> bodyAccum;
  std::map<int, std::vector<FishAnnotation>> byFrame;
  for (const FishAnnotation& a : annotations) {
    auto& [sum, count] = bodyAccum[a.fishId];
    sum += bodyLength(a);
    ++count;

    FishAnnotation mapped = a;
    mapped.head = mapAnnotationPoint(a.head, layout, a.frameIndex);
    mapped.center = mapAnnotationPoint(a.center, layout, a.frameIndex);
    mapped.tail = mapAnnotationPoint(a.tail, layout, a.frameIndex);
    byFrame[a.frameIndex].push_back(std::move(mapped));
  }

  std::map<std::string, std::vector<NeighborObservation>> neighborsByFish;
  for (const auto& [frameIndex, frameAnnotations] : byFrame) {
    if (frameAnnotations.size() < 2) continue;
    for (NeighborObservation& obs :
         nearestNeighborFeatures(frameAnnotations, mode)) {
      neighborsByFish[obs.fishId].push_back(std::move(obs));
    }
  }

  std::vector<const Trajectory*> order;
  order.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const Trajectory* a, const Trajectory* b) {
              return a->fishId < b->fishId;
            });

  std::vector<BehaviorFeatureRow> rows;
  rows.reserve(order.size());
  for (const Trajectory* traj : order) {
    const auto body = bodyAccum.find(traj->fishId);
    if (body == bodyAccum.end()) {
      fail(ErrorCode::ValidationError,
           "trajectory fish '" + traj->fishId + "' has no annotations");
    }
    BehaviorFeatureRow row;
    row.fishId = traj->fishId;
    row.species = traj->species;
    row.totalDistance = totalDistance(*traj);
    row.displacement = displacement(*traj);
    if (traj->points.size() >= 2) {
      row.averageSpeed = averageSpeed(*traj, fps);
    }
    row.meanBodyLength = body->second.first / body->second.second;
    if (auto it = neighborsByFish.find(traj->fishId);
        it != neighborsByFish.end()) {
      row.neighborObservations = std::move(it->second);
      std::sort(row.neighborObservations.begin(),
                row.neighborObservations.end(),
                [](const NeighborObservation& a, const NeighborObservation& b) {
                  return a.frameIndex < b.frameIndex;
                });
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace reefstitch
