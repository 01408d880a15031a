#include "reefstitch/image.hpp"

#include <cmath>

namespace reefstitch {

ImageBuffer clamp(const ImageBuffer& img) {
  ImageBuffer out = img;
  for (double& v : out.data) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::NonFiniteInput,
           "image contains a NaN or infinite intensity");
    }
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
  out.unclamped = false;
  return out;
}

}  // namespace reefstitch
