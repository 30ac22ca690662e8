#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "magfb/sweep.hpp"

namespace magfb {

inline constexpr const char* kHeader1D =
    "axis,pair,E_N,S_AtoB,S_BtoA,S_asym,classification,stable";
inline constexpr const char* kHeader2D = "x,y,pair,quantity,value";

// 12 significant digits, shortest of fixed/scientific.
std::string format_number(double value);

// Single point: the 1D schema with an empty axis column, three rows.
void write_point_csv(std::ostream& os, const PointResult& point);

// 1D sweeps use kHeader1D; 2D sweeps the long format kHeader2D with
// quantities E_N, S_AtoB, S_BtoA, S_asym, stable. Unstable points leave the
// measure fields empty.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

void emit_csv(const SweepResult& result, const std::filesystem::path& path);
void emit_csv(const PointResult& point, const std::filesystem::path& path);

// Plain comma-split reader (no quoting) for the files written above.
std::vector<std::vector<std::string>> read_csv(std::istream& is);

}  // namespace magfb
