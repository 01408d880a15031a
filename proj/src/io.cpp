#include "reefstitch/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace reefstitch {

namespace {

using nlohmann::json;

std::string pathStr(const std::filesystem::path& p) { return p.string(); }

// --- pixmap helpers ---------------------------------------------------

// Reads the next PPM header token, skipping whitespace and '#' comments.
std::string nextPnmToken(std::istream& in) {
  std::string token;
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = in.get();
    } else if (std::isspace(ch)) {
      ch = in.get();
    } else {
      break;
    }
  }
  while (ch != EOF && !std::isspace(ch)) {
    token.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  return token;
}

int parsePnmInt(std::istream& in, const std::filesystem::path& path,
                const char* what) {
  const std::string token = nextPnmToken(in);
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(ErrorCode::CorruptFile,
         "invalid " + std::string(what) + " in " + pathStr(path));
  }
  return value;
}

// --- csv helpers ------------------------------------------------------

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::vector<std::string> splitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

class CsvReader {
 public:
  CsvReader(const std::filesystem::path& path,
            const std::vector<std::string>& requiredColumns)
      : path_(path), in_(path) {
    if (!in_) {
      fail(ErrorCode::IoError, "cannot open " + pathStr(path));
    }
    std::string header;
    if (!std::getline(in_, header)) {
      fail(ErrorCode::ParseError, "missing header row in " + pathStr(path));
    }
    const std::vector<std::string> names = splitCsv(header);
    for (std::size_t i = 0; i < names.size(); ++i) column_[names[i]] = i;
    for (const std::string& name : requiredColumns) {
      if (!column_.count(name)) {
        fail(ErrorCode::MissingColumn,
             pathStr(path) + " is missing required column '" + name + "'");
      }
    }
    line_ = 1;
  }

  bool nextRow() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (trim(line).empty()) continue;
      fields_ = splitCsv(line);
      return true;
    }
    return false;
  }

  int lineNumber() const { return line_; }

  const std::string& field(const std::string& name) const {
    const std::size_t idx = column_.at(name);
    if (idx >= fields_.size()) {
      fail(ErrorCode::ParseError,
           pathStr(path_) + " line " + std::to_string(line_) +
               ": missing value for column '" + name + "'");
    }
    return fields_[idx];
  }

  double realField(const std::string& name) const {
    const std::string& raw = field(name);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size() ||
        !std::isfinite(value)) {
      fail(ErrorCode::ParseError,
           pathStr(path_) + " line " + std::to_string(line_) +
               ": '" + raw + "' is not a valid real for column '" + name + "'");
    }
    return value;
  }

  int intField(const std::string& name) const {
    const std::string& raw = field(name);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size()) {
      fail(ErrorCode::ParseError,
           pathStr(path_) + " line " + std::to_string(line_) +
               ": '" + raw + "' is not a valid integer for column '" + name +
               "'");
    }
    return value;
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::map<std::string, std::size_t> column_;
  std::vector<std::string> fields_;
  int line_ = 0;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

ImageBuffer loadImage(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::IoError, "cannot open image " + pathStr(path));
  }
  const std::string magic = nextPnmToken(in);
  if (magic != "P6" && magic != "P3") {
    fail(ErrorCode::UnsupportedFormat,
         pathStr(path) + " is not a P6/P3 portable pixmap");
  }
  const int width = parsePnmInt(in, path, "width");
  const int height = parsePnmInt(in, path, "height");
  const int maxval = parsePnmInt(in, path, "maxval");
  if (width < 1 || height < 1) {
    fail(ErrorCode::CorruptFile, "bad dimensions in " + pathStr(path));
  }
  if (maxval != 255) {
    fail(ErrorCode::UnsupportedFormat,
         pathStr(path) + ": only 8-bit pixmaps (maxval 255) are supported");
  }

  ImageBuffer img(width, height);
  const std::size_t samples = img.data.size();
  if (magic == "P6") {
    // nextPnmToken already consumed the single whitespace after maxval
    std::vector<unsigned char> bytes(samples);
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(samples));
    if (static_cast<std::size_t>(in.gcount()) != samples) {
      fail(ErrorCode::CorruptFile,
           pathStr(path) + " is truncated (expected " +
               std::to_string(samples) + " samples)");
    }
    for (std::size_t i = 0; i < samples; ++i) img.data[i] = bytes[i] / 255.0;
  } else {
    for (std::size_t i = 0; i < samples; ++i) {
      const int v = parsePnmInt(in, path, "sample");
      if (v < 0 || v > 255) {
        fail(ErrorCode::CorruptFile,
             pathStr(path) + " holds a sample outside [0,255]");
      }
      img.data[i] = v / 255.0;
    }
  }
  return img;
}

void saveImage(const ImageBuffer& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::IoError, "cannot write image " + pathStr(path));
  }
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> bytes(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    // round half up; clamp defensively for unclamped buffers
    const int v = static_cast<int>(std::floor(img.data[i] * 255.0 + 0.5));
    bytes[i] = static_cast<unsigned char>(std::clamp(v, 0, 255));
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    fail(ErrorCode::IoError, "write failed for " + pathStr(path));
  }
}

std::vector<CorrespondenceSet> loadCorrespondences(
    const std::filesystem::path& path) {
  CsvReader reader(path, {"frame_index", "src_x", "src_y", "ref_x", "ref_y"});
  std::map<int, CorrespondenceSet> byFrame;
  while (reader.nextRow()) {
    const int frame = reader.intField("frame_index");
    if (frame < 1) {
      fail(ErrorCode::ParseError,
           pathStr(path) + " line " + std::to_string(reader.lineNumber()) +
               ": frame_index must be >= 1 (frame 0 is the reference)");
    }
    auto [it, inserted] = byFrame.try_emplace(frame);
    if (inserted) it->second.frameIndex = frame;
    it->second.pairs.push_back(
        {{reader.realField("src_x"), reader.realField("src_y")},
         {reader.realField("ref_x"), reader.realField("ref_y")}});
  }
  std::vector<CorrespondenceSet> out;
  out.reserve(byFrame.size());
  for (auto& [frame, set] : byFrame) out.push_back(std::move(set));
  return out;
}

AnnotationLoadResult loadAnnotations(const std::filesystem::path& path) {
  CsvReader reader(path,
                   {"frame_index", "fish_id", "species", "head_x", "head_y",
                    "center_x", "center_y", "tail_x", "tail_y"});
  AnnotationLoadResult result;
  std::map<std::pair<std::string, int>, int> seen;
  while (reader.nextRow()) {
    FishAnnotation a;
    a.frameIndex = reader.intField("frame_index");
    if (a.frameIndex < 0) {
      fail(ErrorCode::ParseError,
           pathStr(path) + " line " + std::to_string(reader.lineNumber()) +
               ": frame_index must be >= 0");
    }
    a.fishId = reader.field("fish_id");
    a.species = reader.field("species");
    a.head = {reader.realField("head_x"), reader.realField("head_y")};
    a.center = {reader.realField("center_x"), reader.realField("center_y")};
    a.tail = {reader.realField("tail_x"), reader.realField("tail_y")};

    if (distance(a.head, a.center) <= 1e-9) {
      result.warnings.push_back(
          pathStr(path) + " line " + std::to_string(reader.lineNumber()) +
          ": fish '" + a.fishId + "' has head == center; row skipped");
      continue;
    }
    const auto key = std::make_pair(a.fishId, a.frameIndex);
    if (auto it = seen.find(key); it != seen.end()) {
      fail(ErrorCode::DuplicateObservation,
           pathStr(path) + " line " + std::to_string(reader.lineNumber()) +
               ": fish '" + a.fishId + "' already observed in frame " +
               std::to_string(a.frameIndex) + " (line " +
               std::to_string(it->second) + ")");
    }
    seen.emplace(key, reader.lineNumber());
    result.annotations.push_back(std::move(a));
  }
  return result;
}

void writeFeatureTable(std::span<const BehaviorFeatureRow> rows,
                       const std::filesystem::path& prefix, bool degrees) {
  const std::filesystem::path summaryPath =
      prefix.string() + "summary.csv";
  const std::filesystem::path neighborsPath =
      prefix.string() + "neighbors.csv";

  std::ofstream summary(summaryPath);
  if (!summary) {
    fail(ErrorCode::IoError, "cannot write " + pathStr(summaryPath));
  }
  summary << "fish_id,species,total_distance_px,displacement_px,"
             "avg_speed_px_per_s,mean_body_length_px\n";
  for (const BehaviorFeatureRow& row : rows) {
    summary << row.fishId << ',' << row.species << ','
            << fixed6(row.totalDistance) << ',' << fixed6(row.displacement)
            << ','
            << (row.averageSpeed ? fixed6(*row.averageSpeed) : std::string())
            << ',' << fixed6(row.meanBodyLength) << '\n';
  }
  if (!summary) {
    fail(ErrorCode::IoError, "write failed for " + pathStr(summaryPath));
  }

  std::vector<const NeighborObservation*> observations;
  for (const BehaviorFeatureRow& row : rows) {
    for (const NeighborObservation& obs : row.neighborObservations) {
      observations.push_back(&obs);
    }
  }
  std::sort(observations.begin(), observations.end(),
            [](const NeighborObservation* a, const NeighborObservation* b) {
              return std::tie(a->frameIndex, a->fishId) <
                     std::tie(b->frameIndex, b->fishId);
            });

  std::ofstream neighbors(neighborsPath);
  if (!neighbors) {
    fail(ErrorCode::IoError, "cannot write " + pathStr(neighborsPath));
  }
  neighbors << "frame_index,fish_id,neighbor_id,neighbor_species,distance_px,"
               "angle\n";
  const double angleScale = degrees ? 180.0 / std::numbers::pi : 1.0;
  for (const NeighborObservation* obs : observations) {
    neighbors << obs->frameIndex << ',' << obs->fishId << ','
              << obs->neighborId << ',' << obs->neighborSpecies << ','
              << fixed6(obs->distance) << ',' << fixed6(obs->angle * angleScale)
              << '\n';
  }
  if (!neighbors) {
    fail(ErrorCode::IoError, "write failed for " + pathStr(neighborsPath));
  }
}

void writeLayout(const StitchLayout& layout,
                 const std::filesystem::path& path) {
  json doc;
  doc["canvas_width"] = layout.canvasWidth;
  doc["canvas_height"] = layout.canvasHeight;
  doc["offset"] = {{"x", layout.offset.x}, {"y", layout.offset.y}};
  json transforms = json::array();
  for (const AffineTransform& t : layout.shiftedTransforms) {
    transforms.push_back({t.m[0], t.m[1], t.m[2], t.m[3], t.m[4], t.m[5]});
  }
  doc["shifted_transforms"] = std::move(transforms);

  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::IoError, "cannot write layout " + pathStr(path));
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    fail(ErrorCode::IoError, "write failed for " + pathStr(path));
  }
}

StitchLayout loadLayout(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::IoError, "cannot open layout " + pathStr(path));
  }
  json doc;
  try {
    in >> doc;
    StitchLayout layout;
    layout.canvasWidth = doc.at("canvas_width").get<int>();
    layout.canvasHeight = doc.at("canvas_height").get<int>();
    layout.offset = {doc.at("offset").at("x").get<double>(),
                     doc.at("offset").at("y").get<double>()};
    for (const json& row : doc.at("shifted_transforms")) {
      if (row.size() != 6) {
        fail(ErrorCode::ParseError,
             pathStr(path) + ": transform rows must hold 6 entries");
      }
      AffineTransform t;
      for (int i = 0; i < 6; ++i) t.m[i] = row.at(i).get<double>();
      layout.shiftedTransforms.push_back(t);
    }
    return layout;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError,
         pathStr(path) + " is not a valid layout sidecar: " + e.what());
  }
}

bool RunReport::allConverged() const {
  return std::all_of(frames.begin(), frames.end(),
                     [](const FrameEntry& f) { return f.converged; });
}

bool RunReport::anyFallback() const {
  return std::any_of(corrections.begin(), corrections.end(),
                     [](const std::string& m) { return m != "awb"; });
}

void writeReport(const RunReport& report, const std::filesystem::path& path) {
  json doc;
  json frames = json::array();
  for (const RunReport::FrameEntry& f : report.frames) {
    frames.push_back({{"frame_index", f.frameIndex},
                      {"converged", f.converged},
                      {"inlier_count", f.inlierCount},
                      {"total_pairs", f.totalPairs},
                      {"iterations_used", f.iterationsUsed},
                      {"mean_inlier_residual_px", f.meanInlierResidual},
                      {"max_inlier_residual_px", f.maxInlierResidual}});
  }
  doc["frames"] = std::move(frames);
  doc["corrections"] = report.corrections;
  doc["canvas"] = {{"width", report.canvasWidth},
                   {"height", report.canvasHeight}};
  doc["timings_ms"] = {{"correct", report.correctMillis},
                       {"stitch", report.stitchMillis},
                       {"trajectories", report.trajectoryMillis},
                       {"features", report.featuresMillis}};

  std::ofstream out(path);
  if (!out) {
    fail(ErrorCode::IoError, "cannot write report " + pathStr(path));
  }
  out << doc.dump(2) << '\n';
}

std::vector<std::filesystem::path> listFrameFiles(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    fail(ErrorCode::IoError,
         "frames directory not found: " + pathStr(dir));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".ppm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const std::filesystem::path& a, const std::filesystem::path& b) {
              return a.filename().string() < b.filename().string();
            });
  if (files.empty()) {
    fail(ErrorCode::ValidationError,
         "no .ppm frames found in " + pathStr(dir));
  }
  return files;
}

}  // namespace reefstitch
