// Hand-computed fixtures shared by the unit and acceptance suites.
#pragma once

#include <string>
#include <vector>

#include "reefstitch/geometry.hpp"
#include "reefstitch/trajectory.hpp"

namespace reefstitch::testing {

// Two fish observed in frames {0, 3, 6}, identity layout. All expected
// values derived by hand:
//   - both fish travel (0,0)->(3,4)->(6,8) shaped paths: two 3-4-5
//     segments, total distance 10, collinear so displacement 10;
//   - frames 0..6 at 3 fps span 2 s -> average speed 5 px/s;
//   - head/tail sit 5 px from the center along the heading, body length 10;
//   - fish 2 tracks fish 1 at a constant (3,4) offset -> neighbor distance
//     5 in every frame;
//   - headings per frame make the neighbor angle 0, pi/2, pi.
struct TwoFishFixture {
  std::vector<FishAnnotation> annotations;
  StitchLayout layout;
  double fps = 3.0;

  std::string expectedSummaryCsv;
  std::string expectedNeighborsCsv;
};

inline TwoFishFixture twoFishFixture() {
  TwoFishFixture fx;
  fx.layout.canvasWidth = 100;
  fx.layout.canvasHeight = 100;
  for (int i = 0; i < 7; ++i) {
    fx.layout.shiftedTransforms.push_back(AffineTransform::identity());
  }

  const std::string speciesA = "chromis_viridis";
  const std::string speciesB = "dascyllus_reticulatus";

  auto fish = [](int frame, const std::string& id, const std::string& species,
                 Point2 center, Point2 heading) {
    return FishAnnotation{frame,
                          id,
                          species,
                          center + 5.0 * heading,
                          center,
                          center - 5.0 * heading};
  };

  // fish f1: centers (0,0) -> (3,4) -> (6,8); headings (1,0),(0,1),(1,0)
  fx.annotations.push_back(fish(0, "f1", speciesA, {0, 0}, {1, 0}));
  fx.annotations.push_back(fish(3, "f1", speciesA, {3, 4}, {0, 1}));
  fx.annotations.push_back(fish(6, "f1", speciesA, {6, 8}, {1, 0}));
  // fish f2 shadows f1 at +(3,4); headings (1,0),(1,0),(-1,0)
  fx.annotations.push_back(fish(0, "f2", speciesB, {3, 4}, {1, 0}));
  fx.annotations.push_back(fish(3, "f2", speciesB, {6, 8}, {1, 0}));
  fx.annotations.push_back(fish(6, "f2", speciesB, {9, 12}, {-1, 0}));

  fx.expectedSummaryCsv =
      "fish_id,species,total_distance_px,displacement_px,"
      "avg_speed_px_per_s,mean_body_length_px\n"
      "f1,chromis_viridis,10.000000,10.000000,5.000000,10.000000\n"
      "f2,dascyllus_reticulatus,10.000000,10.000000,5.000000,10.000000\n";

  fx.expectedNeighborsCsv =
      "frame_index,fish_id,neighbor_id,neighbor_species,distance_px,angle\n"
      "0,f1,f2,dascyllus_reticulatus,5.000000,0.000000\n"
      "0,f2,f1,chromis_viridis,5.000000,0.000000\n"
      "3,f1,f2,dascyllus_reticulatus,5.000000,1.570796\n"
      "3,f2,f1,chromis_viridis,5.000000,1.570796\n"
      "6,f1,f2,dascyllus_reticulatus,5.000000,3.141593\n"
      "6,f2,f1,chromis_viridis,5.000000,3.141593\n";
  return fx;
}

}  // namespace reefstitch::testing
