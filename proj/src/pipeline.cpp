#include "reefstitch/pipeline.hpp"

#include <chrono>
#include <iostream>

#include "parallel.hpp"
#include "reefstitch/color.hpp"
#include "reefstitch/trajectory.hpp"

namespace reefstitch {

namespace {

double millisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

ImageBuffer correctFrame(const ImageBuffer& img, AwbFallback fallback,
                         std::string* methodUsed) {
  const ChannelStats stats = computeChannelStats(img);
  try {
    const QuadraticMapParams params = solveAwbParams(stats);
    if (methodUsed) *methodUsed = "awb";
    return clamp(applyQuadraticMap(img, params));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SingularAwbSystem) throw;
  }
  if (fallback == AwbFallback::GrayWorld) {
    try {
      const GainPair gains = grayWorldGains(stats);
      if (methodUsed) *methodUsed = "grayworld";
      return clamp(applyGains(img, gains));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateChannel) throw;
    }
  }
  if (methodUsed) *methodUsed = "passthrough";
  return img;
}

std::vector<std::string> runCorrectDir(const std::filesystem::path& inDir,
                                       const std::filesystem::path& outDir,
                                       AwbFallback fallback) {
  const std::vector<std::filesystem::path> files = listFrameFiles(inDir);
  std::filesystem::create_directories(outDir);
  std::vector<std::string> methods(files.size());
  parallelFor(static_cast<int>(files.size()), [&](int i) {
    const ImageBuffer frame = loadImage(files[i]);
    const ImageBuffer corrected = correctFrame(frame, fallback, &methods[i]);
    saveImage(corrected, outDir / files[i].filename());
  });
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (methods[i] != "awb") {
      std::cerr << "warning: frame " << files[i].filename().string()
                << " corrected via " << methods[i] << "\n";
    }
  }
  return methods;
}

RunReport runPipeline(const std::filesystem::path& framesDir,
                      const std::filesystem::path& correspondencesCsv,
                      const std::filesystem::path& annotationsCsv,
                      const std::filesystem::path& outDir,
                      const PipelineConfig& cfg) {
  std::filesystem::create_directories(outDir);
  RunReport report;

  auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::filesystem::path> frameFiles =
      listFrameFiles(framesDir);
  report.corrections =
      runCorrectDir(framesDir, outDir / "corrected", cfg.awbFallback);
  report.correctMillis = millisSince(t0);

  t0 = std::chrono::steady_clock::now();
  // load exactly the frames corrected above; the output directory may hold
  // stale files from an earlier, longer run
  std::vector<ImageBuffer> frames(frameFiles.size());
  parallelFor(static_cast<int>(frameFiles.size()), [&](int i) {
    frames[i] = loadImage(outDir / "corrected" / frameFiles[i].filename());
  });

  const std::vector<CorrespondenceSet> correspondences =
      loadCorrespondences(correspondencesCsv);
  StitchResult stitched =
      stitchSequence(frames, correspondences, cfg.ransac, cfg.stitch);
  saveImage(stitched.map, outDir / "map.ppm");
  writeLayout(stitched.layout, outDir / "layout.json");
  report.stitchMillis = millisSince(t0);
  report.canvasWidth = stitched.layout.canvasWidth;
  report.canvasHeight = stitched.layout.canvasHeight;

  for (std::size_t i = 0; i < stitched.ransacPerFrame.size(); ++i) {
    const RansacResult& r = stitched.ransacPerFrame[i];
    RunReport::FrameEntry entry;
    entry.frameIndex = static_cast<int>(i) + 1;
    entry.converged = r.converged;
    entry.inlierCount = r.inlierCount;
    entry.totalPairs = static_cast<int>(r.inlierMask.size());
    entry.iterationsUsed = r.iterationsUsed;
    double sum = 0.0;
    double maxResidual = 0.0;
    int inliers = 0;
    const CorrespondenceSet* set = nullptr;
    for (const CorrespondenceSet& c : correspondences) {
      if (c.frameIndex == entry.frameIndex) set = &c;
    }
    if (set != nullptr) {
      for (std::size_t p = 0; p < set->pairs.size(); ++p) {
        if (!r.inlierMask[p]) continue;
        const double res = residual(r.transform, set->pairs[p]);
        sum += res;
        maxResidual = std::max(maxResidual, res);
        ++inliers;
      }
    }
    entry.meanInlierResidual = inliers > 0 ? sum / inliers : 0.0;
    entry.maxInlierResidual = maxResidual;
    if (!entry.converged) {
      std::cerr << "warning: frame " << entry.frameIndex
                << " did not reach the inlier threshold; best model used\n";
    }
    report.frames.push_back(entry);
  }

  t0 = std::chrono::steady_clock::now();
  const AnnotationLoadResult loaded = loadAnnotations(annotationsCsv);
  for (const std::string& warning : loaded.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  const std::vector<Trajectory> trajectories =
      buildTrajectories(loaded.annotations, stitched.layout);
  const ImageBuffer overlay =
      renderTrajectoryMap(stitched.map, trajectories, cfg.trajectoryStyle);
  saveImage(overlay, outDir / "trajectory_map.ppm");
  report.trajectoryMillis = millisSince(t0);

  t0 = std::chrono::steady_clock::now();
  const std::vector<BehaviorFeatureRow> rows =
      buildFeatureTable(loaded.annotations, trajectories, stitched.layout,
                        cfg.fps, cfg.neighborPoint);
  writeFeatureTable(rows, outDir / "features_", cfg.anglesInDegrees);
  report.featuresMillis = millisSince(t0);

  writeReport(report, outDir / "report.json");
  return report;
}

}  // namespace reefstitch
