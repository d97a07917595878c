#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace dwsim::detail {

// sin(2 pi f t_i + phase) at t_i = t0 + i / fs. The grid and the sensor both use
// this expression so a locked sensor multiplies by bit-identical carrier values.
inline double carrier(double f, double phase, double t0, std::size_t i, double fs) {
    const double t = t0 + static_cast<double>(i) / fs;
    return std::sin(2.0 * std::numbers::pi * f * t + phase);
}

}  // namespace dwsim::detail
