#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "reefstitch/features.hpp"
#include "reefstitch/geometry.hpp"
#include "reefstitch/image.hpp"
#include "reefstitch/ransac.hpp"
#include "reefstitch/trajectory.hpp"

namespace reefstitch {

// Portable pixmap, 8-bit RGB. Reads P6 and P3, writes P6. Load divides by
// 255; save multiplies by 255 with round-half-up, so quantized images
// round-trip bit-identically.
ImageBuffer loadImage(const std::filesystem::path& path);
void saveImage(const ImageBuffer& img, const std::filesystem::path& path);

// CSV with header frame_index,src_x,src_y,ref_x,ref_y. Rows grouped by
// frame index (ascending), row order preserved within a group. Parse
// failures name the offending line.
std::vector<CorrespondenceSet> loadCorrespondences(
    const std::filesystem::path& path);

struct AnnotationLoadResult {
  std::vector<FishAnnotation> annotations;
  // One entry per skipped row (head == center within 1e-9).
  std::vector<std::string> warnings;
};

// CSV with header frame_index,fish_id,species,head_x,head_y,center_x,
// center_y,tail_x,tail_y. Duplicate (fish_id, frame_index) rows raise
// DuplicateObservation; rows with undefined heading are skipped with a
// warning.
AnnotationLoadResult loadAnnotations(const std::filesystem::path& path);

// Writes <prefix>summary.csv (one row per fish) and <prefix>neighbors.csv
// (one row per neighbor observation, sorted by frame then fish). All reals
// fixed 6-decimal; absent speed serialized as an empty field; angles in
// radians unless degrees is set.
void writeFeatureTable(std::span<const BehaviorFeatureRow> rows,
                       const std::filesystem::path& prefix, bool degrees);

// JSON sidecar with full-precision shifted transforms; write-then-read
// reproduces every entry exactly.
void writeLayout(const StitchLayout& layout,
                 const std::filesystem::path& path);
StitchLayout loadLayout(const std::filesystem::path& path);

struct RunReport {
  struct FrameEntry {
    int frameIndex = 0;
    bool converged = true;
    int inlierCount = 0;
    int totalPairs = 0;
    int iterationsUsed = 0;
    double meanInlierResidual = 0.0;
    double maxInlierResidual = 0.0;
  };
  std::vector<FrameEntry> frames;          // frames with estimated transforms
  std::vector<std::string> corrections;    // per frame: awb|grayworld|passthrough
  int canvasWidth = 0;
  int canvasHeight = 0;
  double correctMillis = 0.0;
  double stitchMillis = 0.0;
  double trajectoryMillis = 0.0;
  double featuresMillis = 0.0;

  bool allConverged() const;
  bool anyFallback() const;
};

void writeReport(const RunReport& report, const std::filesystem::path& path);

// Regular *.ppm files in the directory, sorted by filename; the sorted
// position is the frame index. Throws when the directory is missing or
// holds no frames.
std::vector<std::filesystem::path> listFrameFiles(
    const std::filesystem::path& dir);

}  // namespace reefstitch
