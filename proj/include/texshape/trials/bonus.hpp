#pragma once

namespace texshape::trials {

// Lab bookkeeping, not a scientific output: nothing at or below 50 %
// accuracy, 0.5 per started 5 % step above that, full 5.0 above 95 %.
double performance_bonus(double accuracy);

}  // namespace texshape::trials
