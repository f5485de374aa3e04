#include "situp/apce.hpp"

#include "situp/error.hpp"

#include <algorithm>

namespace situp {

double apce(const RealGrid& f)
{
    if (f.data.empty()) {
        throw Error(ErrorCode::DimensionMismatch, "apce of an empty grid");
    }
    const auto [lo, hi] = std::minmax_element(f.data.begin(), f.data.end());
    const double fmin = *lo;
    const double fmax = *hi;
    if (fmax == fmin) {
        return 0.0;
    }
    double energy = 0.0;
    for (double v : f.data) {
        const double d = v - fmin;
        energy += d * d;
    }
    const double range = fmax - fmin;
    return range * range * static_cast<double>(f.size()) / energy;
}

}  // namespace situp
