#include "texshape/trials/bonus.hpp"

#include <algorithm>
#include <cmath>

#include "texshape/error.hpp"

namespace texshape::trials {

double performance_bonus(double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw Error(Errc::invalid_argument, "accuracy must lie in [0, 1]");
  }
  // Each started 5 % step above 50 % earns 0.5, so anything above 95 % gets
  // the full 5.0. The guard keeps exact step boundaries (0.55) in the lower step.
  const double steps = std::ceil((accuracy * 100.0 - 50.0) / 5.0 - 1e-9);
  return std::clamp(steps * 0.5, 0.0, 5.0);
}

}  // namespace texshape::trials
