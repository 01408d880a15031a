#pragma once

#include <filesystem>
#include <string>

#include "reefstitch/features.hpp"
#include "reefstitch/io.hpp"
#include "reefstitch/ransac.hpp"
#include "reefstitch/stitch.hpp"

namespace reefstitch {

// What to do with a frame whose white-balance system is singular.
enum class AwbFallback { GrayWorld, Passthrough };

struct PipelineConfig {
  double fps = 3.0;  // frame extraction rate the time base is built on
  RansacConfig ransac;
  StitchConfig stitch;
  AwbFallback awbFallback = AwbFallback::GrayWorld;
  bool anglesInDegrees = false;
  NeighborPoint neighborPoint = NeighborPoint::Center;
  TrajectoryStyle trajectoryStyle;
};

// White-balances one frame, falling back per `fallback` when the AWB system
// is singular. `methodUsed` (optional) receives awb|grayworld|passthrough.
ImageBuffer correctFrame(const ImageBuffer& img, AwbFallback fallback,
                         std::string* methodUsed = nullptr);

// Corrects every frame of inDir into outDir (same filenames), frames
// processed concurrently (REEFSTITCH_THREADS caps the workers). Returns the
// per-frame method used, frame order.
std::vector<std::string> runCorrectDir(const std::filesystem::path& inDir,
                                       const std::filesystem::path& outDir,
                                       AwbFallback fallback);

// Full batch flow: correct -> stitch -> trajectory overlay -> feature
// tables. Writes into outDir: corrected/, map.ppm, layout.json,
// trajectory_map.ppm, features_summary.csv, features_neighbors.csv,
// report.json. Returns the report.
RunReport runPipeline(const std::filesystem::path& framesDir,
                      const std::filesystem::path& correspondencesCsv,
                      const std::filesystem::path& annotationsCsv,
                      const std::filesystem::path& outDir,
                      const PipelineConfig& cfg);

}  // namespace reefstitch
