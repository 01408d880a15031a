#include "reefstitch/ransac.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "reefstitch/linalg.hpp"
#include "reefstitch/rng.hpp"

namespace reefstitch {

namespace {

// |(b - a) x (c - a)|: zero iff the three points are collinear.
double parallelogramArea(Point2 a, Point2 b, Point2 c) {
  return std::abs(cross(b - a, c - a));
}

constexpr double kSampleAreaTol = 1e-6;  // px^2
constexpr int kSampleRetries = 100;

// Floyd's algorithm: a uniform 3-subset of [0, n).
std::array<int, 3> drawTriple(SeededRng& rng, int n) {
  std::array<int, 3> out{};
  int count = 0;
  for (int j = n - 3; j < n; ++j) {
    const int t = static_cast<int>(rng.nextBelow(j + 1));
    bool seen = false;
    for (int k = 0; k < count; ++k) seen = seen || out[k] == t;
    out[count++] = seen ? j : t;
  }
  return out;
}

std::vector<bool> classify(const AffineTransform& t,
                           std::span<const PointPair> pairs, double epsilon,
                           int& inlierCount) {
  std::vector<bool> mask(pairs.size());
  inlierCount = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const bool in = residual(t, pairs[i]) < epsilon;
    mask[i] = in;
    inlierCount += in ? 1 : 0;
  }
  return mask;
}

AffineTransform fitSubset(std::span<const PointPair> pairs,
                          const std::vector<bool>& mask) {
  std::vector<PointPair> subset;
  subset.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask[i]) subset.push_back(pairs[i]);
  }
  return fitAffineLeastSquares(subset);
}

}  // namespace

AffineTransform fitAffineLeastSquares(std::span<const PointPair> pairs) {
  const std::size_t n = pairs.size();
  if (n < 3) {
    fail(ErrorCode::DegenerateConfiguration,
         "affine fit needs at least 3 point pairs");
  }

  // Centroid-centered normal equations; centering decouples the translation
  // and keeps the 2x2 scatter system well conditioned.
  Point2 srcMean{0, 0};
  Point2 refMean{0, 0};
  for (const PointPair& p : pairs) {
    srcMean = srcMean + p.source;
    refMean = refMean + p.reference;
  }
  srcMean = (1.0 / static_cast<double>(n)) * srcMean;
  refMean = (1.0 / static_cast<double>(n)) * refMean;

  double sxx = 0, sxy = 0, syy = 0;
  double bx0 = 0, bx1 = 0, by0 = 0, by1 = 0;
  for (const PointPair& p : pairs) {
    const Point2 s = p.source - srcMean;
    const Point2 r = p.reference - refMean;
    sxx += s.x * s.x;
    sxy += s.x * s.y;
    syy += s.y * s.y;
    bx0 += s.x * r.x;
    bx1 += s.y * r.x;
    by0 += s.x * r.y;
    by1 += s.y * r.y;
  }

  auto solveRow = [&](double r0, double r1, double& u, double& v) {
    std::array<double, 4> a{sxx, sxy, sxy, syy};
    std::array<double, 2> b{r0, r1};
    std::array<double, 2> x{};
    if (!gaussianSolve(2, a, b, x)) {
      fail(ErrorCode::DegenerateConfiguration,
           "affine fit is degenerate: source points are collinear");
    }
    u = x[0];
    v = x[1];
  };

  AffineTransform t;
  solveRow(bx0, bx1, t.m[0], t.m[1]);
  solveRow(by0, by1, t.m[3], t.m[4]);
  t.m[2] = refMean.x - (t.m[0] * srcMean.x + t.m[1] * srcMean.y);
  t.m[5] = refMean.y - (t.m[3] * srcMean.x + t.m[4] * srcMean.y);
  return t;
}

double residual(const AffineTransform& t, const PointPair& pair) {
  return distance(applyAffine(t, pair.source), pair.reference);
}

RansacResult ransacAffine(std::span<const PointPair> pairs,
                          const RansacConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || !(cfg.tau > 0.0 && cfg.tau <= 1.0) ||
      cfg.maxIterations < 1) {
    fail(ErrorCode::ValidationError,
         "RANSAC config needs epsilon > 0, tau in (0,1], maxIterations >= 1");
  }
  const int n = static_cast<int>(pairs.size());
  if (n < 3) {
    fail(ErrorCode::DegenerateConfiguration,
         "RANSAC needs at least 3 correspondences");
  }

  AffineTransform bestModel;
  std::vector<bool> bestMask;
  int bestCount = -1;
  int iterationsUsed = cfg.maxIterations;
  bool converged = false;

  for (int iter = 0; iter < cfg.maxIterations; ++iter) {
    SeededRng rng(SeededRng::mix(cfg.rngSeed, static_cast<std::uint64_t>(iter)));

    bool fitted = false;
    AffineTransform model;
    for (int attempt = 0; attempt < kSampleRetries && !fitted; ++attempt) {
      const std::array<int, 3> idx = drawTriple(rng, n);
      const std::array<PointPair, 3> sample{pairs[idx[0]], pairs[idx[1]],
                                            pairs[idx[2]]};
      if (parallelogramArea(sample[0].source, sample[1].source,
                            sample[2].source) <= kSampleAreaTol) {
        continue;
      }
      try {
        model = fitAffineLeastSquares(sample);
        fitted = true;
      } catch (const Error&) {
        // near-degenerate triple that slipped past the area test
      }
    }
    if (!fitted) {
      fail(ErrorCode::NoValidSample,
           "no non-collinear minimal sample found within the retry budget");
    }

    int count = 0;
    std::vector<bool> mask = classify(model, pairs, cfg.epsilon, count);
    if (count > bestCount) {
      bestCount = count;
      bestMask = std::move(mask);
      bestModel = model;
    }

    if (static_cast<double>(bestCount) / n >= cfg.tau) {
      iterationsUsed = iter + 1;
      converged = true;
      break;
    }
  }

  RansacResult result;
  result.bestMinimalInlierCount = bestCount;
  result.iterationsUsed = iterationsUsed;
  result.converged = converged;
  // Refit on the consensus set, then recompute the mask once from the refit
  // transform so the returned mask is self-consistent. No further passes.
  result.transform =
      bestCount >= 3 ? fitSubset(pairs, bestMask) : bestModel;
  result.inlierMask =
      classify(result.transform, pairs, cfg.epsilon, result.inlierCount);
  return result;
}

}  // namespace reefstitch
