#pragma once

#include <cstdint>
#include <vector>

#include "reefstitch/geometry.hpp"
#include "reefstitch/image.hpp"
#include "reefstitch/ransac.hpp"
#include "reefstitch/trajectory.hpp"

namespace reefstitch {

// Per-frame camera jitter ranges; emulates an erratic handheld capture.
struct MotionModel {
  double maxTranslation = 40.0;  // px, each axis, symmetric
  double maxRotation = 0.08;     // radians, symmetric
  double minScale = 1.0;
  double maxScale = 1.0;
  std::uint64_t rngSeed = 1;
};

// Everything an oracle needs: the exact transforms behind the frames, the
// correspondences before/after corruption, fish labels, and the world
// texture the frames were sampled from.
struct GroundTruth {
  std::vector<AffineTransform> transforms;  // frame -> frame 0; [0] identity
  std::vector<CorrespondenceSet> correspondences;  // frames 1..n-1
  std::vector<FishAnnotation> annotations;
  ImageBuffer sourceTexture;
  std::vector<ImageBuffer> frames;
  // Texture coordinates of frame 0's origin: frame i samples the texture at
  // anchor + T_i(p), nearest-rounded.
  Point2 anchor{0, 0};
};

// Deterministic seeded texture: smooth value noise plus per-pixel hash
// noise, all three channels non-constant on any image with >= 2 pixels, so
// the white-balance systems it feeds stay non-singular.
ImageBuffer generateTexture(int width, int height, std::uint64_t seed);

// Frames sampled from the texture through seeded per-frame transforms drawn
// from `model` (T_0 = identity). Correspondence grids are mapped exactly,
// then a seeded outlierFraction of pairs is displaced by >= 60 px (20x the
// default RANSAC epsilon) and Gaussian noise of noiseSigma is added to the
// rest. Throws FrameOutsideTexture when a frame corner leaves the texture.
GroundTruth generateSequence(const ImageBuffer& texture,
                             const MotionModel& model, int frameW, int frameH,
                             int nFrames, double outlierFraction,
                             double noiseSigma);

// Same, with caller-chosen ground-truth transforms (transforms[0] must be
// the identity).
GroundTruth generateSequenceWithTransforms(
    const ImageBuffer& texture, std::vector<AffineTransform> transforms,
    int frameW, int frameH, double outlierFraction, double noiseSigma,
    std::uint64_t seed);

// Smooth random-walk center paths with per-fish constant head/tail offsets
// (so body length is constant along a track and head != center always),
// stable ids and species labels. Coordinates stay inside frameW x frameH.
std::vector<FishAnnotation> generateFishTracks(int nFish, int nFrames,
                                               int frameW, int frameH,
                                               std::uint64_t motionSeed);

}  // namespace reefstitch
