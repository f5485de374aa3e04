#pragma once

#include "situp/spectral.hpp"

namespace situp {

// Average peak-to-correlation energy of a response map:
//   (max - min)^2 / mean((f - min)^2)
// A flat map (max == min) scores 0.
double apce(const RealGrid& f);

}  // namespace situp
