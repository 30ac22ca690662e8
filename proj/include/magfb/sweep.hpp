#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magfb/dynamics.hpp"
#include "magfb/measures.hpp"
#include "magfb/model.hpp"

namespace magfb {

enum class Parameter { delta_a, delta_b_tilde, tau, beta, T, xi, g_gb_eff };

std::string_view to_string(Parameter p);
// Throws ConfigError for unknown names.
Parameter parse_parameter(std::string_view name);

double get_parameter(const SystemParams& params, Parameter p);
void set_parameter(SystemParams& params, Parameter p, double value);

// Display unit of an axis: shown value = internal value / factor.
struct AxisUnit {
  std::string name;
  double factor = 1.0;
};

AxisUnit default_unit(Parameter p, const SystemParams& params);

// Linear grid from start to stop inclusive, in internal units.
struct AxisSpec {
  Parameter parameter = Parameter::tau;
  double start = 0.0;
  double stop = 1.0;
  int points = 101;
  AxisUnit unit;

  void validate() const;
  double value(int index) const;
  double display_value(int index) const { return value(index) / unit.factor; }
};

enum class PointStatus { ok, unstable, numerical_failure };

struct PointResult {
  PointStatus status = PointStatus::ok;
  StabilityReport stability;
  // Present only for ok points.
  std::optional<std::array<CorrelationReport, 3>> reports;
  std::optional<SteadyCovariance> covariance;
  double min_symplectic = 0.0;
  bool physical = false;
  std::string message;
};

struct EvaluateOptions {
  NegativityForm negativity = NegativityForm::standard;
};

// parameters -> rates -> drift/diffusion -> Lyapunov -> measures.
PointResult evaluate_point(const SystemParams& params,
                           const EvaluateOptions& options = {});

struct SweepResult {
  std::vector<AxisSpec> axes;
  // Row-major: the last axis varies fastest.
  std::vector<PointResult> records;

  std::size_t index(int i, int j = 0) const;
};

// threads <= 1 evaluates serially; results never depend on the count.
SweepResult sweep(const SystemParams& base, const std::vector<AxisSpec>& axes,
                  int threads = 1, const EvaluateOptions& options = {});

inline constexpr int kDefaultGridPoints = 101;

struct FigurePreset {
  std::string name;
  SystemParams base;
  std::vector<AxisSpec> axes;
  bool steering = false;
};

inline constexpr std::array<std::string_view, 6> kPresetNames = {
    "fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig5"};

// Caption overrides are applied on top of `defaults`.
FigurePreset figure_preset(std::string_view name,
                           const SystemParams& defaults = {},
                           int points = kDefaultGridPoints);

}  // namespace magfb
