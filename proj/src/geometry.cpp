#include "reefstitch/geometry.hpp"

#include <cmath>

namespace reefstitch {

AffineTransform AffineTransform::rotationScaleAbout(Point2 pivot,
                                                    double radians,
                                                    double scale) {
  const double c = scale * std::cos(radians);
  const double s = scale * std::sin(radians);
  // p -> R*(p - pivot) + pivot
  return {{c, -s, pivot.x - c * pivot.x + s * pivot.y,
           s, c, pivot.y - s * pivot.x - c * pivot.y}};
}

Point2 applyAffine(const AffineTransform& t, Point2 p) {
  return {t.m[0] * p.x + t.m[1] * p.y + t.m[2],
          t.m[3] * p.x + t.m[4] * p.y + t.m[5]};
}

AffineTransform invertAffine(const AffineTransform& t) {
  const double det = t.det();
  if (std::abs(det) <= kSingularDetTol) {
    fail(ErrorCode::SingularTransform,
         "affine transform is singular (|det| <= 1e-9)");
  }
  const double ia = t.m[4] / det;
  const double ib = -t.m[1] / det;
  const double ic = -t.m[3] / det;
  const double id = t.m[0] / det;
  return {{ia, ib, -(ia * t.m[2] + ib * t.m[5]),
           ic, id, -(ic * t.m[2] + id * t.m[5])}};
}

AffineTransform composeAffine(const AffineTransform& outer,
                              const AffineTransform& inner) {
  const auto& o = outer.m;
  const auto& i = inner.m;
  return {{o[0] * i[0] + o[1] * i[3],
           o[0] * i[1] + o[1] * i[4],
           o[0] * i[2] + o[1] * i[5] + o[2],
           o[3] * i[0] + o[4] * i[3],
           o[3] * i[1] + o[4] * i[4],
           o[3] * i[2] + o[4] * i[5] + o[5]}};
}

}  // namespace reefstitch
