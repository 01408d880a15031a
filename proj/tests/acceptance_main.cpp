// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "reefstitch/color.hpp"
#include "reefstitch/features.hpp"
#include "reefstitch/io.hpp"
#include "reefstitch/pipeline.hpp"
#include "reefstitch/rng.hpp"
#include "reefstitch/stitch.hpp"
#include "reefstitch/synth.hpp"
#include "reefstitch/trajectory.hpp"
#include "support/fixtures.hpp"

using namespace reefstitch;
using namespace reefstitch::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name, bool pass,
               const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double relDiff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
  return std::abs(a - b) / scale;
}

double maxEntryDiff(const AffineTransform& a, const AffineTransform& b) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
  }
  return worst;
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

std::string readFileBytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------
// 1. White-balance constraint suite.

void criterion1() {
  Timer timer;
  bool pass = true;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const ImageBuffer img = generateTexture(96, 72, seed);
    const ChannelStats before = computeChannelStats(img);
    const ImageBuffer mapped = applyQuadraticMap(img, solveAwbParams(before));
    const ChannelStats after = computeChannelStats(mapped);

    const double checks[4] = {
        relDiff(after[Channel::R].sum, before[Channel::G].sum),
        relDiff(after[Channel::B].sum, before[Channel::G].sum),
        relDiff(mapped
                    .at(static_cast<int>(before[Channel::R].maxPos.x),
                        static_cast<int>(before[Channel::R].maxPos.y))
                    .r,
                before[Channel::G].maxVal),
        relDiff(mapped
                    .at(static_cast<int>(before[Channel::B].maxPos.x),
                        static_cast<int>(before[Channel::B].maxPos.y))
                    .b,
                before[Channel::G].maxVal)};
    for (const double c : checks) {
      worst = std::max(worst, c);
      pass = pass && c < 1e-9;
    }
  }
  const double elapsed = timer.seconds();
  pass = pass && elapsed < 10.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "50 textures, worst relative residual %.3g, %.2f s", worst,
                elapsed);
  criterion(1, "white-balance sum and max constraints within 1e-9", pass,
            detail);
}

// ---------------------------------------------------------------------
// 2. Gray-world / Retinex suite.

void criterion2() {
  bool pass = true;
  double worst = 0.0;
  for (std::uint64_t seed = 60; seed < 85; ++seed) {
    const ImageBuffer img = generateTexture(80, 60, seed);
    const ChannelStats stats = computeChannelStats(img);

    const ChannelStats gw =
        computeChannelStats(applyGains(img, grayWorldGains(stats)));
    const ChannelStats rx =
        computeChannelStats(applyGains(img, retinexGains(stats)));
    const double checks[4] = {
        relDiff(gw[Channel::R].mean, gw[Channel::G].mean),
        relDiff(gw[Channel::B].mean, gw[Channel::G].mean),
        relDiff(rx[Channel::R].maxVal, rx[Channel::G].maxVal),
        relDiff(rx[Channel::B].maxVal, rx[Channel::G].maxVal)};
    for (const double c : checks) {
      worst = std::max(worst, c);
      pass = pass && c < 1e-9;
    }

    // exact covariance under power-of-two channel scaling
    const GainPair baseGw = grayWorldGains(stats);
    const GainPair baseRx = retinexGains(stats);
    for (const double k : {0.5, 2.0}) {
      ImageBuffer scaledR = img;
      ImageBuffer scaledB = img;
      for (std::size_t i = 0; i < img.data.size(); i += 3) {
        scaledR.data[i] *= k;
        scaledB.data[i + 2] *= k;
      }
      const GainPair gwR = grayWorldGains(computeChannelStats(scaledR));
      const GainPair rxR = retinexGains(computeChannelStats(scaledR));
      const GainPair gwB = grayWorldGains(computeChannelStats(scaledB));
      pass = pass && gwR.alpha == baseGw.alpha / k && gwR.beta == baseGw.beta &&
             rxR.alpha == baseRx.alpha / k && gwB.beta == baseGw.beta / k &&
             gwB.alpha == baseGw.alpha;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "25 textures, worst relative disparity %.3g, covariance exact",
                worst);
  criterion(2, "gray-world means and retinex maxima equalized", pass, detail);
}

// ---------------------------------------------------------------------
// 3. RANSAC recovery.

void criterion3() {
  Timer timer;
  constexpr int kTrials = 100;
  constexpr int kPoints = 20;
  constexpr int kOutliers = 6;  // 30%

  int exactRecoveries = 0;
  int noisyRecoveries = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    SeededRng rng(SeededRng::mix(0xACCE9, trial));
    const AffineTransform truth = composeAffine(
        AffineTransform::translation(rng.nextIn(-120, 120),
                                     rng.nextIn(-120, 120)),
        AffineTransform::rotationScaleAbout({320, 240}, rng.nextIn(-0.3, 0.3),
                                            rng.nextIn(0.9, 1.12)));
    std::vector<PointPair> clean(kPoints);
    for (int i = 0; i < kPoints; ++i) {
      const Point2 s{rng.nextIn(0, 640), rng.nextIn(0, 480)};
      clean[i] = {s, applyAffine(truth, s)};
    }
    std::vector<int> order(kPoints);
    for (int i = 0; i < kPoints; ++i) order[i] = i;
    for (int i = kPoints - 1; i > 0; --i) {
      std::swap(order[i], order[rng.nextBelow(i + 1)]);
    }

    std::vector<bool> isOutlier(kPoints, false);
    std::vector<PointPair> exact = clean;
    for (int k = 0; k < kOutliers; ++k) {
      const int idx = order[k];
      isOutlier[idx] = true;
      const double magnitude = 60.0 * (1.0 + rng.nextUnit());
      const double angle = 2.0 * std::numbers::pi * rng.nextUnit();
      exact[idx].reference.x += magnitude * std::cos(angle);
      exact[idx].reference.y += magnitude * std::sin(angle);
    }

    RansacConfig cfg;
    cfg.rngSeed = SeededRng::mix(0xB0A7, trial);

    // sigma = 0: exact transform and exact mask
    const RansacResult zero = ransacAffine(exact, cfg);
    bool maskExact = true;
    for (int i = 0; i < kPoints; ++i) {
      maskExact = maskExact && zero.inlierMask[i] == !isOutlier[i];
    }
    if (maskExact && maxEntryDiff(zero.transform, truth) < 1e-6) {
      ++exactRecoveries;
    }

    // sigma = 0.5 px: every clean pair within epsilon of the model
    std::vector<PointPair> noisy = exact;
    for (int i = 0; i < kPoints; ++i) {
      if (isOutlier[i]) continue;
      noisy[i].reference.x += 0.5 * rng.nextGaussian();
      noisy[i].reference.y += 0.5 * rng.nextGaussian();
    }
    const RansacResult noisyResult = ransacAffine(noisy, cfg);
    double worstClean = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      if (isOutlier[i]) continue;
      worstClean =
          std::max(worstClean, residual(noisyResult.transform, noisy[i]));
    }
    if (worstClean < cfg.epsilon) ++noisyRecoveries;
  }

  const double elapsed = timer.seconds();
  const bool pass =
      exactRecoveries >= 99 && noisyRecoveries >= 95 && elapsed < 30.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "exact %d/100 (need 99), noisy %d/100 (need 95), %.2f s",
                exactRecoveries, noisyRecoveries, elapsed);
  criterion(3, "RANSAC recovery under 30% gross outliers", pass, detail);
}

// ---------------------------------------------------------------------
// 4. Zero-noise stitching oracle.

// Independent re-derivation of the stitched content: per canvas pixel, the
// last frame (painter's order) whose inverse-mapped nearest sample lands
// inside the frame, with the inverse computed inline from the transforms.
bool verifyPixels(const GroundTruth& gt, const StitchResult& result,
                  const std::vector<AffineTransform>& transforms,
                  std::string& why) {
  const int w = result.layout.canvasWidth;
  const int h = result.layout.canvasHeight;
  const Point2 off = result.layout.offset;
  const int frameW = gt.frames[0].width;
  const int frameH = gt.frames[0].height;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int top = -1;
      int sx = 0, sy = 0;
      for (std::size_t i = 0; i < transforms.size(); ++i) {
        const auto& m = transforms[i].m;
        const double det = m[0] * m[4] - m[1] * m[3];
        const double qx = x - (m[2] + off.x);
        const double qy = y - (m[5] + off.y);
        const double px = (m[4] * qx - m[1] * qy) / det;
        const double py = (-m[3] * qx + m[0] * qy) / det;
        const int rx = static_cast<int>(std::llround(px));
        const int ry = static_cast<int>(std::llround(py));
        if (rx >= 0 && rx < frameW && ry >= 0 && ry < frameH) {
          top = static_cast<int>(i);
          sx = rx;
          sy = ry;
        }
      }
      const bool covered = top >= 0;
      if (covered != result.coverage.at(x, y)) {
        why = "coverage mismatch at " + std::to_string(x) + "," +
              std::to_string(y);
        return false;
      }
      if (!covered) continue;
      const Rgb want = gt.frames[top].at(sx, sy);
      const Rgb got = result.map.at(x, y);
      if (got.r != want.r || got.g != want.g || got.b != want.b) {
        why = "pixel mismatch at " + std::to_string(x) + "," +
              std::to_string(y);
        return false;
      }
    }
  }
  return true;
}

void criterion4() {
  bool pass = true;
  std::string detail;

  StitchConfig scfg;
  scfg.interpolation = Interpolation::Nearest;

  // (a) full motion model: translation <= 50 px, rotation <= 10 deg
  {
    const ImageBuffer texture = generateTexture(520, 460, 404);
    MotionModel model;
    model.maxTranslation = 50.0;
    model.maxRotation = 0.17;
    model.rngSeed = 11;
    const GroundTruth gt =
        generateSequence(texture, model, 320, 240, 15, 0.0, 0.0);
    const StitchResult result =
        stitchSequence(gt.frames, gt.correspondences, RansacConfig{}, scfg);

    // transforms recovered from the zero-noise correspondences
    double worstTransform = 0.0;
    std::vector<AffineTransform> estimated;
    estimated.push_back(AffineTransform::identity());
    for (std::size_t i = 0; i < result.ransacPerFrame.size(); ++i) {
      worstTransform = std::max(
          worstTransform, maxEntryDiff(result.ransacPerFrame[i].transform,
                                       gt.transforms[i + 1]));
      estimated.push_back(result.ransacPerFrame[i].transform);
    }
    pass = pass && worstTransform < 1e-6;

    // layout containment within 0.5 px
    for (std::size_t i = 0; i < gt.frames.size(); ++i) {
      const Point2 corners[4] = {{0, 0}, {320, 0}, {0, 240}, {320, 240}};
      for (const Point2& c : corners) {
        const Point2 q = applyAffine(result.layout.shiftedTransforms[i], c);
        pass = pass && q.x >= -0.5 && q.x <= result.layout.canvasWidth + 0.5 &&
               q.y >= -0.5 && q.y <= result.layout.canvasHeight + 0.5;
      }
    }

    std::string why;
    const bool pixelsOk = verifyPixels(gt, result, estimated, why);
    pass = pass && pixelsOk;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "rot+trans: transform err %.2g, pixels %s",
                  worstTransform, pixelsOk ? "exact" : why.c_str());
    detail = buf;
  }

  // (b) integer translations: the map literally reproduces the texture
  {
    const ImageBuffer texture = generateTexture(460, 400, 405);
    SeededRng rng(606);
    std::vector<AffineTransform> transforms;
    transforms.push_back(AffineTransform::identity());
    for (int i = 1; i < 15; ++i) {
      transforms.push_back(AffineTransform::translation(
          static_cast<double>(rng.nextBelow(101)) - 50.0,
          static_cast<double>(rng.nextBelow(101)) - 50.0));
    }
    const GroundTruth gt = generateSequenceWithTransforms(
        texture, transforms, 320, 240, 0.0, 0.0, 607);
    const StitchResult result =
        stitchSequence(gt.frames, gt.correspondences, RansacConfig{}, scfg);

    bool exact = true;
    for (int y = 0; y < result.layout.canvasHeight && exact; ++y) {
      for (int x = 0; x < result.layout.canvasWidth && exact; ++x) {
        if (!result.coverage.at(x, y)) continue;
        const int tx =
            static_cast<int>(gt.anchor.x + x - result.layout.offset.x);
        const int ty =
            static_cast<int>(gt.anchor.y + y - result.layout.offset.y);
        const Rgb want = texture.at(tx, ty);
        const Rgb got = result.map.at(x, y);
        exact = got.r == want.r && got.g == want.g && got.b == want.b;
      }
    }
    pass = pass && exact;
    detail += exact ? "; translations: texture reproduced exactly"
                    : "; translations: texture mismatch";
  }

  criterion(4, "zero-noise 15-frame stitching is pixel-exact", pass, detail);
}

// ---------------------------------------------------------------------
// 5. Morphological closing.

void criterion5() {
  bool pass = true;

  StitchConfig cfg;
  cfg.closingKernel = 3;
  cfg.closingIterations = 1;

  ImageBuffer seam(7, 7, {1, 1, 1});
  seam.set(3, 3, {0, 0, 0});
  const ImageBuffer filled = morphologicalClose(seam, cfg);
  for (const double v : filled.data) pass = pass && v == 1.0;

  int idempotent = 0;
  int extensive = 0;
  for (std::uint64_t seed = 500; seed < 520; ++seed) {
    const ImageBuffer img = generateTexture(33, 27, seed);
    const ImageBuffer once = morphologicalClose(img, cfg);
    const ImageBuffer twice = morphologicalClose(once, cfg);
    if (once.data == twice.data) ++idempotent;
    bool grewEverywhere = true;
    for (std::size_t i = 0; i < img.data.size(); ++i) {
      grewEverywhere = grewEverywhere && once.data[i] >= img.data[i];
    }
    if (grewEverywhere) ++extensive;
  }
  pass = pass && idempotent == 20 && extensive == 20;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "seam filled, idempotent %d/20, extensive %d/20", idempotent,
                extensive);
  criterion(5, "closing fills seams, idempotent and extensive", pass, detail);
}

// ---------------------------------------------------------------------
// 6. Trajectory re-projection.

void criterion6() {
  bool pass = true;

  SeededRng rng(0x6A11);
  StitchLayout layout;
  layout.canvasWidth = 2000;
  layout.canvasHeight = 2000;
  for (int i = 0; i < 10; ++i) {
    layout.shiftedTransforms.push_back(composeAffine(
        AffineTransform::translation(rng.nextIn(-300, 300),
                                     rng.nextIn(-300, 300)),
        AffineTransform::rotationScaleAbout({160, 120}, rng.nextIn(-0.6, 0.6),
                                            rng.nextIn(0.8, 1.25))));
  }
  double worstRoundTrip = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int frame = static_cast<int>(rng.nextBelow(10));
    const Point2 p{rng.nextIn(-640, 640), rng.nextIn(-480, 480)};
    const Point2 mapped = mapAnnotationPoint(p, layout, frame);
    const Point2 back =
        applyAffine(invertAffine(layout.shiftedTransforms[frame]), mapped);
    worstRoundTrip = std::max(
        {worstRoundTrip, std::abs(back.x - p.x), std::abs(back.y - p.y)});
  }
  pass = pass && worstRoundTrip < 1e-6;

  // one global rigid motion preserves segment lengths
  const std::vector<FishAnnotation> tracks =
      generateFishTracks(3, 15, 320, 240, 0x6A12);
  StitchLayout rigid;
  rigid.canvasWidth = 2000;
  rigid.canvasHeight = 2000;
  const AffineTransform motion = composeAffine(
      AffineTransform::translation(123.25, -48.5),
      AffineTransform::rotationScaleAbout({31, 7}, 0.41, 1.0));
  for (int i = 0; i < 15; ++i) rigid.shiftedTransforms.push_back(motion);

  double worstLength = 0.0;
  const std::vector<Trajectory> mapped = buildTrajectories(tracks, rigid);
  for (const Trajectory& traj : mapped) {
    std::vector<Point2> raw;
    for (const FishAnnotation& a : tracks) {
      if (a.fishId == traj.fishId) raw.push_back(a.center);
    }
    for (std::size_t s = 1; s < raw.size(); ++s) {
      const double rawLen = distance(raw[s], raw[s - 1]);
      const double mappedLen = distance(traj.points[s].mappedCenter,
                                        traj.points[s - 1].mappedCenter);
      worstLength = std::max(
          worstLength, std::abs(rawLen - mappedLen) / std::max(1.0, rawLen));
    }
  }
  pass = pass && worstLength < 1e-9;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "round-trip worst %.3g px (1000 pts), rigid length drift %.3g",
                worstRoundTrip, worstLength);
  criterion(6, "re-projection round-trip and rigid length preservation", pass,
            detail);
}

// ---------------------------------------------------------------------
// 7. Feature oracle.

void criterion7(const fs::path& workDir) {
  bool pass = true;

  const TwoFishFixture fx = twoFishFixture();
  const std::vector<Trajectory> trajectories =
      buildTrajectories(fx.annotations, fx.layout);
  const std::vector<BehaviorFeatureRow> rows =
      buildFeatureTable(fx.annotations, trajectories, fx.layout, fx.fps);
  fs::create_directories(workDir);
  writeFeatureTable(rows, workDir / "fixture_", false);

  const bool summaryExact =
      readFileBytes(workDir / "fixture_summary.csv") == fx.expectedSummaryCsv;
  const bool neighborsExact =
      readFileBytes(workDir / "fixture_neighbors.csv") ==
      fx.expectedNeighborsCsv;
  pass = pass && summaryExact && neighborsExact;

  // property suite: 1000 random instances
  SeededRng rng(0x7EA7);
  int held = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Trajectory traj;
    traj.fishId = "f";
    int frame = 0;
    const int count = 1 + static_cast<int>(rng.nextBelow(9));
    for (int i = 0; i < count; ++i) {
      traj.points.push_back(
          {frame, {rng.nextIn(-200, 200), rng.nextIn(-200, 200)}});
      frame += 1 + static_cast<int>(rng.nextBelow(4));
    }
    const bool distanceOk =
        totalDistance(traj) >=
        displacement(traj) - 1e-9 * std::max(1.0, displacement(traj));

    const FishAnnotation fish{0,
                              "f",
                              "s",
                              {rng.nextIn(-50, 50), rng.nextIn(-50, 50)},
                              {rng.nextIn(-50, 50), rng.nextIn(-50, 50)},
                              {rng.nextIn(-50, 50), rng.nextIn(-50, 50)}};
    const bool bodyOk =
        bodyLength(fish) >= distance(fish.head, fish.tail) - 1e-12;

    auto swimmer = [&](const std::string& id) {
      const Point2 c{rng.nextIn(-80, 80), rng.nextIn(-80, 80)};
      const double phi = rng.nextIn(0, 2 * std::numbers::pi);
      const Point2 dir{std::cos(phi), std::sin(phi)};
      return FishAnnotation{0, id, "s", c + 6.0 * dir, c, c - 6.0 * dir};
    };
    const std::vector<FishAnnotation> frameFish = {swimmer("a"), swimmer("b"),
                                                   swimmer("c")};
    bool angleOk = true;
    for (const NeighborObservation& o : nearestNeighborFeatures(frameFish)) {
      angleOk = angleOk && o.angle >= 0.0 && o.angle <= std::numbers::pi &&
                std::isfinite(o.angle);
    }
    if (distanceOk && bodyOk && angleOk) ++held;
  }
  pass = pass && held == 1000;

  char detail[160];
  std::snprintf(detail, sizeof(detail), "fixture files %s, properties %d/1000",
                summaryExact && neighborsExact ? "byte-exact" : "MISMATCH",
                held);
  criterion(7, "hand-computed feature fixture and property suite", pass,
            detail);
}

// ---------------------------------------------------------------------
// 8 + 9. End-to-end pipeline timing and determinism.

void writeSynthInputs(const fs::path& dir, const GroundTruth& gt) {
  fs::create_directories(dir / "frames");
  for (std::size_t i = 0; i < gt.frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.ppm", i);
    saveImage(gt.frames[i], dir / "frames" / name);
  }
  std::ofstream corr(dir / "correspondences.csv");
  corr << "frame_index,src_x,src_y,ref_x,ref_y\n";
  char buf[256];
  for (const CorrespondenceSet& set : gt.correspondences) {
    for (const PointPair& p : set.pairs) {
      std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.6f\n",
                    set.frameIndex, p.source.x, p.source.y, p.reference.x,
                    p.reference.y);
      corr << buf;
    }
  }
  std::ofstream annot(dir / "annotations.csv");
  annot << "frame_index,fish_id,species,head_x,head_y,center_x,center_y,"
           "tail_x,tail_y\n";
  for (const FishAnnotation& a : gt.annotations) {
    std::snprintf(buf, sizeof(buf), "%d,%s,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  a.frameIndex, a.fishId.c_str(), a.species.c_str(), a.head.x,
                  a.head.y, a.center.x, a.center.y, a.tail.x, a.tail.y);
    annot << buf;
  }
}

void criteria8and9(const fs::path& workDir) {
  const fs::path inputs = workDir / "inputs";
  const ImageBuffer texture = generateTexture(800, 640, 808);
  MotionModel model;
  model.maxTranslation = 40.0;
  model.maxRotation = 0.08;
  model.rngSeed = 88;
  GroundTruth gt = generateSequence(texture, model, 640, 480, 15, 0.0, 0.0);
  gt.annotations = generateFishTracks(3, 15, 640, 480, 89);
  writeSynthInputs(inputs, gt);

  PipelineConfig cfg;  // survey defaults: 3 fps, eps 3, tau 0.8

  Timer timer;
  const RunReport report =
      runPipeline(inputs / "frames", inputs / "correspondences.csv",
                  inputs / "annotations.csv", workDir / "run_a", cfg);
  const double elapsed = timer.seconds();

  const bool healthy = report.allConverged() && !report.anyFallback();
  {
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "15 frames of 640x480 in %.2f s (bound 5 s), %s", elapsed,
                  healthy ? "all frames converged, no fallbacks"
                          : "UNHEALTHY RUN");
    criterion(8, "end-to-end pipeline at survey scale",
              elapsed < 5.0 && healthy, detail);
  }

  runPipeline(inputs / "frames", inputs / "correspondences.csv",
              inputs / "annotations.csv", workDir / "run_b", cfg);
  bool identical = true;
  std::string mismatch = "none";
  for (const char* name : {"map.ppm", "trajectory_map.ppm", "layout.json",
                           "features_summary.csv", "features_neighbors.csv"}) {
    const std::string a = readFileBytes(workDir / "run_a" / name);
    const std::string b = readFileBytes(workDir / "run_b" / name);
    if (a.empty() || a != b) {
      identical = false;
      mismatch = name;
    }
  }
  {
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "maps, tables, layout byte-identical across runs "
                  "(first mismatch: %s)",
                  mismatch.c_str());
    criterion(9, "pipeline determinism", identical, detail);
  }
}

}  // namespace

int main() {
  const fs::path workDir = fs::temp_directory_path() / "reefstitch_acceptance";
  std::error_code ec;
  fs::remove_all(workDir, ec);
  fs::create_directories(workDir);

  try {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7(workDir / "features");
    criteria8and9(workDir);
  } catch (const Error& e) {
    std::printf("[FAIL] unexpected error: %s: %s\n", errorCodeName(e.code()),
                e.what());
    ++g_failures;
  } catch (const std::exception& e) {
    std::printf("[FAIL] unexpected exception: %s\n", e.what());
    ++g_failures;
  }

  std::printf("%s: %d criterion(s) failed\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures);
  fs::remove_all(workDir, ec);
  return g_failures;
}
