#include "reefstitch/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace reefstitch {

namespace {

// Distinct, high-contrast stroke colors; assignment cycles in sorted
// fishId order so renders are bit-stable.
constexpr Rgb kPalette[] = {
    {1.0, 0.2, 0.2}, {0.2, 1.0, 0.2}, {0.3, 0.5, 1.0}, {1.0, 1.0, 0.2},
    {1.0, 0.4, 1.0}, {0.2, 1.0, 1.0}, {1.0, 0.6, 0.1}, {0.7, 0.3, 1.0},
    {0.5, 1.0, 0.5}, {1.0, 0.8, 0.6}, {0.8, 0.9, 1.0}, {0.6, 0.6, 0.2},
};

void stampSquare(ImageBuffer& img, int cx, int cy, int strokeWidth, Rgb color) {
  const int lo = -((strokeWidth - 1) / 2);
  const int hi = strokeWidth / 2;
  for (int dy = lo; dy <= hi; ++dy) {
    for (int dx = lo; dx <= hi; ++dx) {
      const int x = cx + dx;
      const int y = cy + dy;
      if (img.contains(x, y)) img.set(x, y, color);
    }
  }
}

void drawSegment(ImageBuffer& img, Point2 a, Point2 b, int strokeWidth,
                 Rgb color) {
  const int x0 = static_cast<int>(std::llround(a.x));
  const int y0 = static_cast<int>(std::llround(a.y));
  const int x1 = static_cast<int>(std::llround(b.x));
  const int y1 = static_cast<int>(std::llround(b.y));
  const int steps = std::max(std::abs(x1 - x0), std::abs(y1 - y0));
  if (steps == 0) {
    stampSquare(img, x0, y0, strokeWidth, color);
    return;
  }
  for (int s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    const int x = static_cast<int>(std::llround(x0 + t * (x1 - x0)));
    const int y = static_cast<int>(std::llround(y0 + t * (y1 - y0)));
    stampSquare(img, x, y, strokeWidth, color);
  }
}

Point2 clampToCanvas(Point2 p, const ImageBuffer& img) {
  return {std::clamp(p.x, 0.0, static_cast<double>(img.width - 1)),
          std::clamp(p.y, 0.0, static_cast<double>(img.height - 1))};
}

}  // namespace

Point2 mapAnnotationPoint(Point2 p, const StitchLayout& layout,
                          int frameIndex) {
  if (frameIndex < 0 ||
      frameIndex >= static_cast<int>(layout.shiftedTransforms.size())) {
    fail(ErrorCode::FrameOutOfRange,
         "frame " + std::to_string(frameIndex) +
             " has no transform in the layout (sequence has " +
             std::to_string(layout.shiftedTransforms.size()) + " frames)");
  }
  return applyAffine(layout.shiftedTransforms[frameIndex], p);
}

std::vector<Trajectory> buildTrajectories(
    std::span<const FishAnnotation> annotations, const StitchLayout& layout) {
  std::map<std::string, Trajectory> byFish;
  for (const FishAnnotation& a : annotations) {
    const Point2 mapped = mapAnnotationPoint(a.center, layout, a.frameIndex);
    auto [it, inserted] = byFish.try_emplace(a.fishId);
    Trajectory& traj = it->second;
    if (inserted) {
      traj.fishId = a.fishId;
      traj.species = a.species;
    } else if (traj.species != a.species) {
      fail(ErrorCode::InconsistentSpecies,
           "fish '" + a.fishId + "' labeled both '" + traj.species +
               "' and '" + a.species + "'");
    }
    traj.points.push_back({a.frameIndex, mapped});
  }

  std::vector<Trajectory> out;
  out.reserve(byFish.size());
  for (auto& [id, traj] : byFish) {
    std::sort(traj.points.begin(), traj.points.end(),
              [](const TrajectoryPoint& a, const TrajectoryPoint& b) {
                return a.frameIndex < b.frameIndex;
              });
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
      if (traj.points[i].frameIndex == traj.points[i - 1].frameIndex) {
        fail(ErrorCode::DuplicateObservation,
             "fish '" + id + "' observed twice in frame " +
                 std::to_string(traj.points[i].frameIndex));
      }
    }
    out.push_back(std::move(traj));
  }
  return out;
}

ImageBuffer renderTrajectoryMap(const ImageBuffer& map,
                                std::span<const Trajectory> trajectories,
                                const TrajectoryStyle& style) {
  ImageBuffer out = map;
  std::vector<const Trajectory*> order;
  order.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const Trajectory* a, const Trajectory* b) {
              return a->fishId < b->fishId;
            });

  constexpr int paletteSize = static_cast<int>(std::size(kPalette));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Rgb color = kPalette[i % paletteSize];
    const auto& points = order[i]->points;
    if (points.empty()) continue;
    if (points.size() == 1) {
      const Point2 p = clampToCanvas(points[0].mappedCenter, out);
      stampSquare(out, static_cast<int>(std::llround(p.x)),
                  static_cast<int>(std::llround(p.y)), style.strokeWidth,
                  color);
      continue;
    }
    for (std::size_t s = 1; s < points.size(); ++s) {
      drawSegment(out, clampToCanvas(points[s - 1].mappedCenter, out),
                  clampToCanvas(points[s].mappedCenter, out),
                  style.strokeWidth, color);
    }
  }
  return out;
}

}  // namespace reefstitch
