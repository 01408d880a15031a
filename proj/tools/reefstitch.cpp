// reefstitch: batch pre-processing for handheld underwater survey video.
// Corrects frame colors, stitches frames into one scene map from manually
// labeled keypoints, re-projects fish annotations into map coordinates, and
// emits per-fish shoaling feature tables.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reefstitch/io.hpp"
#include "reefstitch/pipeline.hpp"
#include "reefstitch/rng.hpp"
#include "reefstitch/synth.hpp"
#include "reefstitch/trajectory.hpp"

namespace fs = std::filesystem;
using namespace reefstitch;

namespace {

struct CommonFlags {
  PipelineConfig cfg;
  std::string fallback = "grayworld";
  std::string interp = "bilinear";
  std::string compositeOrder = "later-on-top";
  std::string neighborPoint = "center";
};

void addRansacFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--ransac-eps", flags.cfg.ransac.epsilon,
                  "inlier residual tolerance in px")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--ransac-tau", flags.cfg.ransac.tau,
                  "inlier fraction threshold in (0,1]")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();
  cmd->add_option("--ransac-iters", flags.cfg.ransac.maxIterations,
                  "maximum RANSAC iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", flags.cfg.ransac.rngSeed, "RNG seed")
      ->capture_default_str();
}

void addStitchFlags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--interp", flags.interp, "warp interpolation")
      ->check(CLI::IsMember({"nearest", "bilinear"}))
      ->capture_default_str();
  cmd->add_option("--close-kernel", flags.cfg.stitch.closingKernel,
                  "closing structuring element side (odd)")
      ->capture_default_str();
  cmd->add_option("--close-iters", flags.cfg.stitch.closingIterations,
                  "closing iterations (0 disables)")
      ->capture_default_str();
  cmd->add_option("--composite-order", flags.compositeOrder,
                  "overlap winner")
      ->check(CLI::IsMember({"later-on-top", "earlier-on-top"}))
      ->capture_default_str();
  cmd->add_option("--max-canvas", flags.cfg.stitch.maxCanvasSide,
                  "abort beyond this canvas side in px")
      ->capture_default_str();
}

void resolveEnums(CommonFlags& flags) {
  flags.cfg.awbFallback = flags.fallback == "passthrough"
                              ? AwbFallback::Passthrough
                              : AwbFallback::GrayWorld;
  flags.cfg.stitch.interpolation = flags.interp == "nearest"
                                       ? Interpolation::Nearest
                                       : Interpolation::Bilinear;
  flags.cfg.stitch.compositeOrder = flags.compositeOrder == "earlier-on-top"
                                        ? CompositeOrder::EarlierOnTop
                                        : CompositeOrder::LaterOnTop;
  flags.cfg.neighborPoint = flags.neighborPoint == "head"
                                ? NeighborPoint::Head
                                : NeighborPoint::Center;
}

int runStitch(const std::string& framesDir, const std::string& corrCsv,
              const std::string& outMap, const CommonFlags& flags) {
  const std::vector<fs::path> files = listFrameFiles(framesDir);
  std::vector<ImageBuffer> frames;
  frames.reserve(files.size());
  for (const fs::path& f : files) frames.push_back(loadImage(f));

  std::vector<CorrespondenceSet> correspondences;
  if (frames.size() > 1 || fs::exists(corrCsv)) {
    correspondences = loadCorrespondences(corrCsv);
  }
  const StitchResult result = stitchSequence(frames, correspondences,
                                             flags.cfg.ransac,
                                             flags.cfg.stitch);
  saveImage(result.map, outMap);
  writeLayout(result.layout, outMap + ".layout.json");

  RunReport report;
  report.canvasWidth = result.layout.canvasWidth;
  report.canvasHeight = result.layout.canvasHeight;
  for (std::size_t i = 0; i < result.ransacPerFrame.size(); ++i) {
    const RansacResult& r = result.ransacPerFrame[i];
    report.frames.push_back({static_cast<int>(i) + 1, r.converged,
                             r.inlierCount,
                             static_cast<int>(r.inlierMask.size()),
                             r.iterationsUsed, 0.0, 0.0});
    if (!r.converged) {
      std::cerr << "warning: frame " << i + 1
                << " did not reach the inlier threshold\n";
    }
  }
  writeReport(report, outMap + ".report.json");
  std::cout << "map " << result.layout.canvasWidth << "x"
            << result.layout.canvasHeight << " -> " << outMap << "\n";
  return 0;
}

int runSynth(const std::string& outDir, int nFrames, int nFish,
             double outliers, double noise, std::uint64_t seed, int frameW,
             int frameH, double maxTranslation, double maxRotation) {
  MotionModel model;
  model.maxTranslation = maxTranslation;
  model.maxRotation = maxRotation;
  model.rngSeed = seed;

  const double halfDiag = std::hypot(frameW, frameH) / 2.0;
  const int pad = static_cast<int>(
      std::ceil(maxTranslation + halfDiag * maxRotation + 8.0));
  const ImageBuffer texture =
      generateTexture(frameW + 2 * pad, frameH + 2 * pad, seed);

  GroundTruth gt = generateSequence(texture, model, frameW, frameH, nFrames,
                                    outliers, noise);
  gt.annotations = generateFishTracks(nFish, nFrames, frameW, frameH,
                                      SeededRng::mix(seed, 0xF1));

  const fs::path out(outDir);
  fs::create_directories(out / "frames");
  saveImage(gt.sourceTexture, out / "texture.ppm");
  for (std::size_t i = 0; i < gt.frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.ppm", i);
    saveImage(gt.frames[i], out / "frames" / name);
  }

  std::ofstream corr(out / "correspondences.csv");
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
  corr.close();

  std::ofstream annot(out / "annotations.csv");
  annot << "frame_index,fish_id,species,head_x,head_y,center_x,center_y,"
           "tail_x,tail_y\n";
  for (const FishAnnotation& a : gt.annotations) {
    std::snprintf(buf, sizeof(buf),
                  "%d,%s,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", a.frameIndex,
                  a.fishId.c_str(), a.species.c_str(), a.head.x, a.head.y,
                  a.center.x, a.center.y, a.tail.x, a.tail.y);
    annot << buf;
  }
  annot.close();

  std::cout << nFrames << " frames, " << nFish << " fish -> " << outDir
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Underwater survey frame correction, stitching, and shoaling "
               "feature extraction"};
  app.require_subcommand(1);
  CommonFlags flags;

  // correct
  std::string inDir, outDir;
  CLI::App* correct =
      app.add_subcommand("correct", "white-balance every frame in a directory");
  correct->add_option("in-dir", inDir, "directory of .ppm frames")->required();
  correct->add_option("out-dir", outDir, "output directory")->required();
  correct->add_option("--fallback", flags.fallback,
                      "when the AWB system is singular")
      ->check(CLI::IsMember({"grayworld", "passthrough"}))
      ->capture_default_str();

  // stitch
  std::string framesDir, corrCsv, outMap;
  CLI::App* stitch =
      app.add_subcommand("stitch", "stitch frames into a scene map");
  stitch->add_option("frames-dir", framesDir, "directory of .ppm frames")
      ->required();
  stitch->add_option("correspondences", corrCsv, "keypoint CSV")->required();
  stitch->add_option("out-map", outMap, "output map .ppm")->required();
  addRansacFlags(stitch, flags);
  addStitchFlags(stitch, flags);

  // trajectories
  std::string mapPath, layoutPath, annotCsv, outImage;
  CLI::App* traj = app.add_subcommand(
      "trajectories", "overlay per-fish trajectories on the map");
  traj->add_option("map", mapPath, "stitched map .ppm")->required();
  traj->add_option("layout", layoutPath, "layout sidecar JSON")->required();
  traj->add_option("annotations", annotCsv, "fish annotation CSV")->required();
  traj->add_option("out-image", outImage, "output overlay .ppm")->required();
  int strokeWidth = 2;
  traj->add_option("--stroke", strokeWidth, "polyline width in px")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // features
  std::string outPrefix;
  CLI::App* features = app.add_subcommand(
      "features", "compute the shoaling feature tables");
  features->add_option("layout", layoutPath, "layout sidecar JSON")->required();
  features->add_option("annotations", annotCsv, "fish annotation CSV")
      ->required();
  features->add_option("out-prefix", outPrefix,
                       "prefix for <prefix>summary.csv / <prefix>neighbors.csv")
      ->required();
  features->add_option("--fps", flags.cfg.fps, "frame extraction rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  features->add_flag("--degrees", flags.cfg.anglesInDegrees,
                     "emit angles in degrees instead of radians");
  features->add_option("--neighbor-point", flags.neighborPoint,
                       "anatomical point for neighbor distances")
      ->check(CLI::IsMember({"center", "head"}))
      ->capture_default_str();

  // pipeline
  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "correct, stitch, map trajectories, and extract features");
  pipeline->add_option("frames-dir", framesDir, "directory of .ppm frames")
      ->required();
  pipeline->add_option("correspondences", corrCsv, "keypoint CSV")->required();
  pipeline->add_option("annotations", annotCsv, "fish annotation CSV")
      ->required();
  pipeline->add_option("out-dir", outDir, "output directory")->required();
  pipeline->add_option("--fps", flags.cfg.fps, "frame extraction rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pipeline->add_flag("--degrees", flags.cfg.anglesInDegrees,
                     "emit angles in degrees");
  pipeline->add_option("--neighbor-point", flags.neighborPoint, "")
      ->check(CLI::IsMember({"center", "head"}));
  pipeline->add_option("--fallback", flags.fallback, "")
      ->check(CLI::IsMember({"grayworld", "passthrough"}));
  addRansacFlags(pipeline, flags);
  addStitchFlags(pipeline, flags);

  // synth
  int nFrames = 15, nFish = 2, frameW = 640, frameH = 480;
  double outliers = 0.0, noise = 0.0;
  double maxTranslation = 40.0, maxRotation = 0.08;
  std::uint64_t seed = 1;
  CLI::App* synth = app.add_subcommand(
      "synth", "generate a synthetic sequence with ground-truth labels");
  synth->add_option("out-dir", outDir, "output directory")->required();
  synth->add_option("--frames", nFrames, "")->capture_default_str();
  synth->add_option("--fish", nFish, "")->capture_default_str();
  synth->add_option("--outliers", outliers, "outlier fraction in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--noise", noise, "correspondence noise sigma in px")
      ->capture_default_str();
  synth->add_option("--seed", seed, "")->capture_default_str();
  synth->add_option("--width", frameW, "frame width")->capture_default_str();
  synth->add_option("--height", frameH, "frame height")->capture_default_str();
  synth->add_option("--max-translation", maxTranslation, "px")
      ->capture_default_str();
  synth->add_option("--max-rotation", maxRotation, "radians")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  resolveEnums(flags);
  try {
    if (correct->parsed()) {
      runCorrectDir(inDir, outDir, flags.cfg.awbFallback);
      std::cout << "corrected frames -> " << outDir << "\n";
      return 0;
    }
    if (stitch->parsed()) {
      return runStitch(framesDir, corrCsv, outMap, flags);
    }
    if (traj->parsed()) {
      const ImageBuffer map = loadImage(mapPath);
      const StitchLayout layout = loadLayout(layoutPath);
      const AnnotationLoadResult loaded = loadAnnotations(annotCsv);
      for (const std::string& w : loaded.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      const std::vector<Trajectory> trajectories =
          buildTrajectories(loaded.annotations, layout);
      TrajectoryStyle style;
      style.strokeWidth = strokeWidth;
      saveImage(renderTrajectoryMap(map, trajectories, style), outImage);
      std::cout << trajectories.size() << " trajectories -> " << outImage
                << "\n";
      return 0;
    }
    if (features->parsed()) {
      const StitchLayout layout = loadLayout(layoutPath);
      const AnnotationLoadResult loaded = loadAnnotations(annotCsv);
      for (const std::string& w : loaded.warnings) {
        std::cerr << "warning: " << w << "\n";
      }
      const std::vector<Trajectory> trajectories =
          buildTrajectories(loaded.annotations, layout);
      const std::vector<BehaviorFeatureRow> rows =
          buildFeatureTable(loaded.annotations, trajectories, layout,
                            flags.cfg.fps, flags.cfg.neighborPoint);
      writeFeatureTable(rows, outPrefix, flags.cfg.anglesInDegrees);
      std::cout << rows.size() << " fish -> " << outPrefix << "{summary,neighbors}.csv\n";
      return 0;
    }
    if (pipeline->parsed()) {
      const RunReport report =
          runPipeline(framesDir, corrCsv, annotCsv, outDir, flags.cfg);
      std::cout << "pipeline done: canvas " << report.canvasWidth << "x"
                << report.canvasHeight << ", "
                << (report.allConverged() ? "all frames converged"
                                          : "some frames did not converge")
                << " -> " << outDir << "\n";
      return 0;
    }
    if (synth->parsed()) {
      return runSynth(outDir, nFrames, nFish, outliers, noise, seed, frameW,
                      frameH, maxTranslation, maxRotation);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << errorCodeName(e.code()) << ": " << e.what()
              << "\n";
    return exitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
