#include "magfb/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "magfb/errors.hpp"

namespace magfb {

namespace {

constexpr std::array<std::pair<Parameter, std::string_view>, 7> kParameterNames = {{
    {Parameter::delta_a, "delta_a"},
    {Parameter::delta_b_tilde, "delta_b_tilde"},
    {Parameter::tau, "tau"},
    {Parameter::beta, "beta"},
    {Parameter::T, "T"},
    {Parameter::xi, "xi"},
    {Parameter::g_gb_eff, "g_gb_eff"},
}};

}  // namespace

std::string_view to_string(Parameter p) {
  for (const auto& [param, name] : kParameterNames) {
    if (param == p) return name;
  }
  return "?";
}

Parameter parse_parameter(std::string_view name) {
  for (const auto& [param, n] : kParameterNames) {
    if (n == name) return param;
  }
  throw ConfigError("unknown sweep parameter '" + std::string(name) +
                    "' (expected delta_a, delta_b_tilde, tau, beta, T, xi, "
                    "g_gb_eff)");
}

double get_parameter(const SystemParams& p, Parameter which) {
  switch (which) {
    case Parameter::delta_a: return p.delta_a;
    case Parameter::delta_b_tilde: return p.delta_b_tilde;
    case Parameter::tau: return p.tau;
    case Parameter::beta: return p.beta;
    case Parameter::T: return p.T;
    case Parameter::xi: return p.xi;
    case Parameter::g_gb_eff: return p.g_gb_eff;
  }
  return 0.0;
}

void set_parameter(SystemParams& p, Parameter which, double value) {
  switch (which) {
    case Parameter::delta_a: p.delta_a = value; break;
    case Parameter::delta_b_tilde: p.delta_b_tilde = value; break;
    case Parameter::tau: p.tau = value; break;
    case Parameter::beta: p.beta = value; break;
    case Parameter::T: p.T = value; break;
    case Parameter::xi: p.xi = value; break;
    case Parameter::g_gb_eff: p.g_gb_eff = value; break;
  }
}

AxisUnit default_unit(Parameter which, const SystemParams& p) {
  switch (which) {
    case Parameter::delta_a:
    case Parameter::delta_b_tilde: return {"wm", p.omega_m};
    case Parameter::tau: return {"", 1.0};
    case Parameter::beta: return {"pi", constants::pi};
    case Parameter::T: return {"K", 1.0};
    case Parameter::xi:
    case Parameter::g_gb_eff: return {"MHz", constants::angular(1e6)};
  }
  return {"", 1.0};
}

void AxisSpec::validate() const {
  if (points < 2) {
    throw ConfigError("axis " + std::string(to_string(parameter)) +
                      ": at least 2 points required");
  }
  if (!std::isfinite(start) || !std::isfinite(stop) || start == stop) {
    throw ConfigError("axis " + std::string(to_string(parameter)) +
                      ": start and stop must be finite and distinct");
  }
  if (!(unit.factor > 0.0)) {
    throw ConfigError("axis " + std::string(to_string(parameter)) +
                      ": display unit factor must be positive");
  }
}

double AxisSpec::value(int index) const {
  if (index == points - 1) return stop;
  const double t = static_cast<double>(index) / static_cast<double>(points - 1);
  return start + t * (stop - start);
}

PointResult evaluate_point(const SystemParams& params,
                           const EvaluateOptions& options) {
  validate(params);
  PointResult out;
  const FeedbackRates rates = feedback_rates(params);
  const DriftMatrix L = build_drift(params, rates, params.g_gb_eff);
  const DiffusionMatrix K =
      build_diffusion(params, rates, thermal_occupancies(params));

  try {
    out.stability = check_stability(L);
  } catch (const NumericalError& e) {
    out.status = PointStatus::numerical_failure;
    out.message = e.what();
    return out;
  }
  if (!out.stability.stable) {
    out.status = PointStatus::unstable;
    char buf[96];
    std::snprintf(buf, sizeof buf, "unstable: max Re(lambda) = %.6e rad/s",
                  out.stability.max_real_part);
    out.message = buf;
    return out;
  }

  try {
    const SteadyCovariance V = solve_lyapunov(L, K);
    const auto nu = symplectic_eigenvalues(Eigen::MatrixXd(V.entries));
    out.min_symplectic = nu.front();
    out.physical = out.min_symplectic >= 0.5 - kPhysicalityTol;
    std::array<CorrelationReport, 3> reports;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
      reports[k] = correlation_report(extract_pair(V, kPairs[k]), options.negativity);
    }
    out.reports = reports;
    out.covariance = V;
  } catch (const Error& e) {
    out.status = PointStatus::numerical_failure;
    out.message = e.what();
    out.reports.reset();
  }
  return out;
}

std::size_t SweepResult::index(int i, int j) const {
  if (axes.size() < 2) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(axes[1].points) +
         static_cast<std::size_t>(j);
}

SweepResult sweep(const SystemParams& base, const std::vector<AxisSpec>& axes,
                  int threads, const EvaluateOptions& options) {
  if (axes.empty() || axes.size() > 2) {
    throw ConfigError("sweep: one or two axes required");
  }
  for (const AxisSpec& a : axes) a.validate();
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
    throw ConfigError("sweep: axis parameters must be distinct");
  }
  validate(base);

  SweepResult result;
  result.axes = axes;
  const std::size_t nx = static_cast<std::size_t>(axes[0].points);
  const std::size_t ny = axes.size() == 2 ? static_cast<std::size_t>(axes[1].points) : 1;
  const std::size_t total = nx * ny;
  result.records.resize(total);

  // Validate every grid point up front so workers never throw.
  std::vector<SystemParams> grid(total, base);
  for (std::size_t k = 0; k < total; ++k) {
    set_parameter(grid[k], axes[0].parameter, axes[0].value(static_cast<int>(k / ny)));
    if (axes.size() == 2) {
      set_parameter(grid[k], axes[1].parameter, axes[1].value(static_cast<int>(k % ny)));
    }
    try {
      validate(grid[k]);
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "sweep: grid point " << k << " is invalid: " << e.what();
      throw ConfigError(os.str());
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      result.records[k] = evaluate_point(grid[k], options);
    }
  };
  const int n_workers = std::max(1, threads);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  }
  return result;
}

FigurePreset figure_preset(std::string_view name, const SystemParams& defaults,
                           int points) {
  using constants::angular;
  FigurePreset preset;
  preset.name = std::string(name);
  SystemParams p = defaults;
  const double wm = p.omega_m;

  auto axis = [&](Parameter which, double start, double stop) {
    return AxisSpec{which, start, stop, points, default_unit(which, p)};
  };
  // Operating point shared by fig3 through fig5.
  auto operating_point = [&] {
    p.delta_a = -wm;
    p.delta_b_tilde = 0.9 * wm;
    p.xi = p.gamma_a;
    p.beta = constants::pi;
  };

  if (name == "fig2") {
    p.tau = 0.9;
    p.beta = constants::pi;
    p.T = 0.01;
    p.xi = p.gamma_a;
    preset.axes = {axis(Parameter::delta_a, -2.0 * wm, 0.0),
                   axis(Parameter::delta_b_tilde, 0.0, 2.0 * wm)};
  } else if (name == "fig3") {
    operating_point();
    // τ = 1 makes ψ = 0; the axis stops just short of it.
    preset.axes = {axis(Parameter::tau, 0.0, 0.999),
                   axis(Parameter::beta, 0.0, 2.0 * constants::pi)};
  } else if (name == "fig4a") {
    operating_point();
    p.g_gb_eff = angular(4.8e6);
    p.tau = 0.98;
    preset.axes = {axis(Parameter::T, 0.0, 4.0)};
  } else if (name == "fig4b") {
    operating_point();
    p.g_gb_eff = angular(4.8e6);
    p.tau = 0.4;
    p.T = 0.01;
    preset.axes = {axis(Parameter::xi, 0.0, angular(2e6))};
  } else if (name == "fig4c") {
    operating_point();
    p.g_gb_eff = angular(4.8e6);
    p.T = 0.01;
    preset.axes = {axis(Parameter::tau, 0.0, 0.999)};
  } else if (name == "fig5") {
    operating_point();
    p.g_gb_eff = angular(4.8e6);
    p.tau = 0.98;
    preset.axes = {axis(Parameter::T, 0.0, 4.0)};
    preset.steering = true;
  } else {
    throw ConfigError("unknown figure preset '" + std::string(name) +
                      "' (expected fig2, fig3, fig4a, fig4b, fig4c, fig5)");
  }
  preset.base = p;
  return preset;
}

}  // namespace magfb
