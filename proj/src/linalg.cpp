#include "reefstitch/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace reefstitch {

bool gaussianSolve(int n, std::span<double> a, std::span<double> b,
                   std::span<double> x, double relTol) {
  double maxEntry = 0.0;
  for (int i = 0; i < n * n; ++i) maxEntry = std::max(maxEntry, std::abs(a[i]));
  if (maxEntry == 0.0) return false;

  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[pivot * n + k])) pivot = i;
    }
    if (std::abs(a[pivot * n + k]) <= relTol * maxEntry) return false;
    if (pivot != k) {
      for (int j = k; j < n; ++j) std::swap(a[pivot * n + j], a[k * n + j]);
      std::swap(b[pivot], b[k]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      a[i * n + k] = 0.0;
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }

  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return true;
}

double pairwiseSum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwiseSum(values.first(half)) + pairwiseSum(values.subspan(half));
}

}  // namespace reefstitch
