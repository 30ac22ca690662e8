#pragma once

#include <numbers>

namespace magfb::constants {

// CODATA 2018 exact values.
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Ordinary frequency (Hz) to angular frequency (rad/s).
constexpr double angular(double hz) { return two_pi * hz; }

}  // namespace magfb::constants
