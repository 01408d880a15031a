#pragma once

#include <span>

namespace reefstitch {

// Gaussian elimination with partial pivoting on a small dense system
// A x = b (A is n*n row-major; A and b are consumed). Returns false when the
// best available pivot falls below relTol times the largest |entry| of the
// original matrix; callers translate that into their own singularity error.
bool gaussianSolve(int n, std::span<double> a, std::span<double> b,
                   std::span<double> x, double relTol = 1e-12);

// Deterministic pairwise reduction; accumulation error stays O(log n) in
// ulps, which the 1e-9-relative white-balance constraint checks rely on.
double pairwiseSum(std::span<const double> values);

}  // namespace reefstitch
