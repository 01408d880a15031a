#include "reefstitch/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "reefstitch/rng.hpp"

namespace reefstitch {

namespace {

// Displacement applied to corrupted correspondence pairs: 20x the default
// RANSAC epsilon, so outliers are cleanly separable in mask assertions.
constexpr double kOutlierShift = 60.0;

constexpr const char* kSpecies[] = {
    "dascyllus_reticulatus",
    "chromis_viridis",
    "pomacentrus_moluccensis",
};

double hash01(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
              std::uint64_t c) {
  std::uint64_t z = SeededRng::mix(seed, (a << 40) ^ (b << 18) ^ c);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// Lattice value noise, cell size 8 px.
double valueNoise(std::uint64_t seed, int channel, int x, int y) {
  constexpr int cell = 8;
  const int cx = x / cell;
  const int cy = y / cell;
  const double fx = smoothstep(static_cast<double>(x % cell) / cell);
  const double fy = smoothstep(static_cast<double>(y % cell) / cell);
  const double v00 = hash01(seed, channel, cx, cy);
  const double v10 = hash01(seed, channel, cx + 1, cy);
  const double v01 = hash01(seed, channel, cx, cy + 1);
  const double v11 = hash01(seed, channel, cx + 1, cy + 1);
  const double top = v00 + fx * (v10 - v00);
  const double bottom = v01 + fx * (v11 - v01);
  return top + fy * (bottom - top);
}

int nearestIndex(double v) { return static_cast<int>(std::llround(v)); }

void requireInsideTexture(const ImageBuffer& texture, Point2 anchor,
                          const AffineTransform& t, int frameW, int frameH,
                          int frameIndex) {
  const Point2 corners[4] = {{0, 0},
                             {static_cast<double>(frameW), 0},
                             {0, static_cast<double>(frameH)},
                             {static_cast<double>(frameW),
                              static_cast<double>(frameH)}};
  for (const Point2& corner : corners) {
    const Point2 q = anchor + applyAffine(t, corner);
    if (q.x < 0.0 || q.x > texture.width - 1.0 || q.y < 0.0 ||
        q.y > texture.height - 1.0) {
      fail(ErrorCode::FrameOutsideTexture,
           "frame " + std::to_string(frameIndex) +
               " leaves the texture; enlarge the texture or shrink the "
               "motion ranges");
    }
  }
}

}  // namespace

ImageBuffer generateTexture(int width, int height, std::uint64_t seed) {
  ImageBuffer img(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      Rgb px;
      // Smooth base plus per-pixel hash detail: non-constant channels on
      // any >= 2 pixel image, and enough high-frequency content for
      // pixel-level stitching checks.
      px.r = 0.55 * valueNoise(seed, 0, x, y) + 0.45 * hash01(seed, 3, x, y);
      px.g = 0.55 * valueNoise(seed, 1, x, y) + 0.45 * hash01(seed, 4, x, y);
      px.b = 0.55 * valueNoise(seed, 2, x, y) + 0.45 * hash01(seed, 5, x, y);
      img.set(x, y, px);
    }
  }
  return img;
}

GroundTruth generateSequenceWithTransforms(
    const ImageBuffer& texture, std::vector<AffineTransform> transforms,
    int frameW, int frameH, double outlierFraction, double noiseSigma,
    std::uint64_t seed) {
  if (transforms.empty()) {
    fail(ErrorCode::ValidationError, "sequence needs at least one frame");
  }

  GroundTruth gt;
  gt.sourceTexture = texture;
  gt.anchor = {std::floor((texture.width - frameW) / 2.0),
               std::floor((texture.height - frameH) / 2.0)};
  if (gt.anchor.x < 0 || gt.anchor.y < 0) {
    fail(ErrorCode::FrameOutsideTexture,
         "texture is smaller than the requested frame size");
  }

  const int nFrames = static_cast<int>(transforms.size());
  gt.frames.reserve(nFrames);
  for (int i = 0; i < nFrames; ++i) {
    requireInsideTexture(texture, gt.anchor, transforms[i], frameW, frameH, i);
    ImageBuffer frame(frameW, frameH);
    for (int y = 0; y < frameH; ++y) {
      for (int x = 0; x < frameW; ++x) {
        const Point2 q =
            gt.anchor + applyAffine(transforms[i],
                                    {static_cast<double>(x),
                                     static_cast<double>(y)});
        frame.set(x, y, texture.at(nearestIndex(q.x), nearestIndex(q.y)));
      }
    }
    gt.frames.push_back(std::move(frame));
  }

  // Exact grid correspondences per frame, then seeded corruption.
  constexpr int kGrid = 5;
  const double marginX = std::max(4.0, frameW * 0.05);
  const double marginY = std::max(4.0, frameH * 0.05);
  for (int i = 1; i < nFrames; ++i) {
    CorrespondenceSet set;
    set.frameIndex = i;
    for (int gy = 0; gy < kGrid; ++gy) {
      for (int gx = 0; gx < kGrid; ++gx) {
        const Point2 src{
            marginX + gx * (frameW - 2 * marginX) / (kGrid - 1),
            marginY + gy * (frameH - 2 * marginY) / (kGrid - 1)};
        set.pairs.push_back({src, applyAffine(transforms[i], src)});
      }
    }

    SeededRng rng(SeededRng::mix(seed, static_cast<std::uint64_t>(i)));
    const int total = static_cast<int>(set.pairs.size());
    const int nOutliers =
        static_cast<int>(std::llround(outlierFraction * total));
    std::vector<int> indices(total);
    for (int k = 0; k < total; ++k) indices[k] = k;
    for (int k = total - 1; k > 0; --k) {
      std::swap(indices[k],
                indices[rng.nextBelow(static_cast<std::uint64_t>(k) + 1)]);
    }
    for (int k = 0; k < nOutliers; ++k) {
      const double magnitude = kOutlierShift * (1.0 + rng.nextUnit());
      const double angle = 2.0 * std::numbers::pi * rng.nextUnit();
      Point2& ref = set.pairs[indices[k]].reference;
      ref.x += magnitude * std::cos(angle);
      ref.y += magnitude * std::sin(angle);
    }
    if (noiseSigma > 0.0) {
      for (int k = nOutliers; k < total; ++k) {
        Point2& ref = set.pairs[indices[k]].reference;
        ref.x += noiseSigma * rng.nextGaussian();
        ref.y += noiseSigma * rng.nextGaussian();
      }
    }
    gt.correspondences.push_back(std::move(set));
  }

  gt.transforms = std::move(transforms);
  gt.annotations =
      generateFishTracks(2, nFrames, frameW, frameH, SeededRng::mix(seed, 0xF1));
  return gt;
}

GroundTruth generateSequence(const ImageBuffer& texture,
                             const MotionModel& model, int frameW, int frameH,
                             int nFrames, double outlierFraction,
                             double noiseSigma) {
  if (nFrames < 1) {
    fail(ErrorCode::ValidationError, "sequence needs at least one frame");
  }
  SeededRng rng(model.rngSeed);
  const Point2 center{frameW / 2.0, frameH / 2.0};
  std::vector<AffineTransform> transforms;
  transforms.reserve(nFrames);
  transforms.push_back(AffineTransform::identity());
  for (int i = 1; i < nFrames; ++i) {
    const double tx = rng.nextIn(-model.maxTranslation, model.maxTranslation);
    const double ty = rng.nextIn(-model.maxTranslation, model.maxTranslation);
    const double rot = rng.nextIn(-model.maxRotation, model.maxRotation);
    const double scale = rng.nextIn(model.minScale, model.maxScale);
    transforms.push_back(composeAffine(
        AffineTransform::translation(tx, ty),
        AffineTransform::rotationScaleAbout(center, rot, scale)));
  }
  return generateSequenceWithTransforms(texture, std::move(transforms), frameW,
                                        frameH, outlierFraction, noiseSigma,
                                        SeededRng::mix(model.rngSeed, 0x5EED));
}

std::vector<FishAnnotation> generateFishTracks(int nFish, int nFrames,
                                               int frameW, int frameH,
                                               std::uint64_t motionSeed) {
  if (nFish < 1 || nFrames < 1) {
    fail(ErrorCode::ValidationError, "fish tracks need nFish, nFrames >= 1");
  }

  std::vector<FishAnnotation> annotations;
  annotations.reserve(static_cast<std::size_t>(nFish) * nFrames);
  const double margin =
      std::max(8.0, 0.1 * std::min(frameW, frameH));

  for (int f = 0; f < nFish; ++f) {
    SeededRng rng(SeededRng::mix(motionSeed, static_cast<std::uint64_t>(f)));
    char id[16];
    std::snprintf(id, sizeof(id), "fish_%02d", f);
    const std::string species = kSpecies[f % std::size(kSpecies)];

    Point2 pos{rng.nextIn(margin, frameW - margin),
               rng.nextIn(margin, frameH - margin)};
    double heading = rng.nextIn(0.0, 2.0 * std::numbers::pi);
    const double speed = rng.nextIn(2.0, 8.0);
    const double headLen = rng.nextIn(5.0, 12.0);
    const double tailLen = headLen * rng.nextIn(0.8, 1.2);

    for (int frame = 0; frame < nFrames; ++frame) {
      const Point2 dir{std::cos(heading), std::sin(heading)};
      annotations.push_back({frame, id, species, pos + headLen * dir, pos,
                             pos - tailLen * dir});
      heading += 0.15 * rng.nextGaussian();
      pos = pos + speed * Point2{std::cos(heading), std::sin(heading)};
      if (pos.x < margin || pos.x > frameW - margin) {
        heading = std::numbers::pi - heading;
        pos.x = std::clamp(pos.x, margin, frameW - margin);
      }
      if (pos.y < margin || pos.y > frameH - margin) {
        heading = -heading;
        pos.y = std::clamp(pos.y, margin, frameH - margin);
      }
    }
  }
  return annotations;
}

}  // namespace reefstitch
