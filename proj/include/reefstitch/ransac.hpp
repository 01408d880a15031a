#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reefstitch/geometry.hpp"

namespace reefstitch {

struct PointPair {
  Point2 source;     // current-frame coordinates
  Point2 reference;  // initial-frame coordinates
};

struct CorrespondenceSet {
  int frameIndex = 1;  // frame 0 is the reference and never carries a set
  std::vector<PointPair> pairs;
};

struct RansacConfig {
  double epsilon = 3.0;  // inlier residual tolerance, px
  double tau = 0.8;      // inlier fraction that triggers refit-and-stop
  int maxIterations = 1000;
  std::uint64_t rngSeed = 1;
};

struct RansacResult {
  AffineTransform transform;
  std::vector<bool> inlierMask;  // recomputed once from the final transform
  int inlierCount = 0;
  int iterationsUsed = 0;
  bool converged = false;  // tau threshold met before maxIterations ran out
  // Consensus of the best minimal-sample model before the refit; the final
  // refit never reports fewer inliers than this.
  int bestMinimalInlierCount = 0;
};

// Least-squares affine minimizing sum ||M*source - reference||^2 via
// centroid-centered normal equations. Exact (residuals <= 1e-9 px) for 3
// non-collinear pairs. Throws DegenerateConfiguration for fewer than 3
// pairs or collinear sources.
AffineTransform fitAffineLeastSquares(std::span<const PointPair> pairs);

// Euclidean distance ||M*source - reference|| in pixels.
double residual(const AffineTransform& t, const PointPair& pair);

// Minimal sample size is 3: an affine has 6 degrees of freedom. Sampled
// triples whose parallelogram area is <= 1e-6 px^2 are redrawn, up to 100
// draws per iteration (NoValidSample once exhausted). Fully deterministic
// given cfg.rngSeed; the iteration -> sample mapping is a pure function of
// (seed, iteration index). Non-convergence is not an error: the best model
// found is returned with converged = false.
RansacResult ransacAffine(std::span<const PointPair> pairs,
                          const RansacConfig& cfg);

}  // namespace reefstitch
