#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "reefstitch/error.hpp"

namespace reefstitch {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// 2x3 row-major affine [a b tx; c d ty] acting on column vectors [x y 1]^T.
// Convention throughout: x is column (rightward), y is row (downward),
// origin at the top-left pixel center.
struct AffineTransform {
  std::array<double, 6> m{1, 0, 0, 0, 1, 0};

  static AffineTransform identity() { return {}; }

  static AffineTransform translation(double dx, double dy) {
    return {{1, 0, dx, 0, 1, dy}};
  }

  // Rotation by `radians` and uniform scaling about `pivot`.
  static AffineTransform rotationScaleAbout(Point2 pivot, double radians,
                                            double scale);

  double det() const { return m[0] * m[4] - m[1] * m[3]; }
};

// Linear parts with |det| at or below this are treated as non-invertible.
inline constexpr double kSingularDetTol = 1e-9;

Point2 applyAffine(const AffineTransform& t, Point2 p);

// Throws SingularTransform when |det| <= kSingularDetTol.
AffineTransform invertAffine(const AffineTransform& t);

// outer applied after inner: result(p) = outer(inner(p)).
AffineTransform composeAffine(const AffineTransform& outer,
                              const AffineTransform& inner);

// Canvas geometry shared by the stitcher and trajectory re-projection:
// integer canvas extent, the padding shift applied to every transform, and
// one shifted frame->canvas transform per frame.
struct StitchLayout {
  int canvasWidth = 0;
  int canvasHeight = 0;
  Point2 offset{0, 0};
  std::vector<AffineTransform> shiftedTransforms;
};

}  // namespace reefstitch
