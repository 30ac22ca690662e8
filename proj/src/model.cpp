#include "magfb/model.hpp"

#include <cmath>
#include <sstream>

#include "magfb/errors.hpp"

namespace magfb {

namespace {

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

void require_non_negative(double value, const char* name) {
  require_finite(value, name);
  if (value < 0.0) {
    throw DomainError(std::string(name) + " must be non-negative");
  }
}

// Mode frequencies set the thermal occupancies, so zero is not allowed.
void require_positive(double value, const char* name) {
  require_finite(value, name);
  if (!(value > 0.0)) {
    throw DomainError(std::string(name) + " must be positive");
  }
}

void require_unit_interval(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    std::ostringstream os;
    os << "tau must lie in [0, 1], got " << tau;
    throw DomainError(os.str());
  }
}

}  // namespace

void validate(const SystemParams& p) {
  require_positive(p.omega_a, "omega_a");
  require_positive(p.omega_b, "omega_b");
  require_positive(p.omega_m, "omega_m");
  require_non_negative(p.gamma_a, "gamma_a");
  require_non_negative(p.gamma_b, "gamma_b");
  require_non_negative(p.gamma_m, "gamma_m");
  require_non_negative(p.g_ga, "g_ga");
  require_non_negative(p.g_gb_eff, "g_gb_eff");
  require_non_negative(p.xi, "xi");
  require_non_negative(p.T, "T");
  require_finite(p.delta_a, "delta_a");
  require_finite(p.delta_b_tilde, "delta_b_tilde");
  require_finite(p.beta, "beta");
  require_unit_interval(p.tau);
}

std::optional<std::string> quality_factor_warning(const SystemParams& p) {
  if (p.gamma_m == 0.0) return std::nullopt;
  const double quality = p.omega_m / p.gamma_m;
  if (quality >= kMinMechanicalQuality) return std::nullopt;
  std::ostringstream os;
  os << "mechanical quality factor omega_m/gamma_m = " << quality
     << " is below " << kMinMechanicalQuality
     << "; the Markovian noise model is not justified";
  return os.str();
}

double thermal_occupancy(double omega, double T) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("thermal_occupancy: frequency must be positive");
  }
  if (!(T >= 0.0)) {
    throw DomainError("thermal_occupancy: temperature must be non-negative");
  }
  if (T == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_boltzmann * T);
  // e^{-x}/(1 - e^{-x}) stays finite for large x and accurate for small x.
  return std::exp(-x) / -std::expm1(-x);
}

FeedbackRates feedback_rates(double gamma_a, double delta_a, double tau,
                             double beta) {
  require_unit_interval(tau);
  FeedbackRates r;
  r.gamma_fb = gamma_a * (1.0 - 2.0 * tau * std::cos(beta));
  r.delta_fb = delta_a + 2.0 * gamma_a * tau * std::sin(beta);
  r.psi = std::sqrt(1.0 - tau * tau);
  // |1 − τe^{iβ}|² = 1 + τ² − 2τ cos β
  const double loop = 1.0 + tau * tau - 2.0 * tau * std::cos(beta);
  r.noise_factor = (1.0 - tau * tau) * std::max(loop, 0.0);
  return r;
}

double spin_count(const DriveParams& d) {
  if (!(d.sphere_diameter > 0.0)) {
    throw DomainError("sphere_diameter must be positive");
  }
  if (!(d.rho_spin > 0.0)) {
    throw DomainError("rho_spin must be positive");
  }
  const double d3 = d.sphere_diameter * d.sphere_diameter * d.sphere_diameter;
  return d.rho_spin * (constants::pi / 6.0) * d3;
}

double rabi_frequency(const DriveParams& d) {
  // B₀ = 0 is the undriven limit; only negative fields are rejected.
  if (!(d.b0 >= 0.0) || !std::isfinite(d.b0)) {
    throw DomainError("drive field b0 must be non-negative");
  }
  return std::sqrt(5.0) / 4.0 * d.kappa_gyro * std::sqrt(spin_count(d)) * d.b0;
}

double effective_coupling(double g_gb_single, std::complex<double> b_mean) {
  return std::abs(std::complex<double>(0.0, std::sqrt(2.0) * g_gb_single) *
                  b_mean);
}

SteadyState steady_state(const SystemParams& p, const DriveParams& drive,
                         SteadyStateMode mode) {
  using namespace std::complex_literals;
  validate(p);
  const FeedbackRates r = feedback_rates(p);
  const double omega = rabi_frequency(drive);
  const double cavity_drive = drive.cavity_drive_amp;
  const double g = p.g_ga;

  std::complex<double> b;
  if (mode == SteadyStateMode::exact) {
    // b (iΔ̃_b + γ_b) = Ω − i g a,  a (iΔ_fb + γ_fb) = −i g b − iψℰ
    const std::complex<double> da = 1i * r.delta_fb + r.gamma_fb;
    const std::complex<double> db = 1i * p.delta_b_tilde + p.gamma_b;
    const std::complex<double> det = da * db + g * g;
    if (std::abs(det) == 0.0) {
      throw DegenerateError("steady_state: singular mean-field system");
    }
    b = (omega * da - g * r.psi * cavity_drive) / det;
  } else {
    const double denom = g * g - p.delta_b_tilde * r.delta_fb;
    const double scale = std::max(g * g, std::abs(p.delta_b_tilde * r.delta_fb));
    if (std::abs(denom) <= 1e-12 * scale) {
      throw DegenerateError(
          "steady_state: g_Ga^2 = delta_b_tilde * delta_fb, approximate form "
          "is singular");
    }
    b = (1i * omega * r.delta_fb - g * r.psi * cavity_drive) / denom;
  }

  SteadyState s;
  s.b_mean = b;
  const std::complex<double> da = 1i * r.delta_fb + r.gamma_fb;
  s.a_mean = (std::abs(da) > 0.0)
                 ? -(1i * g * b + 1i * r.psi * cavity_drive) / da
                 : std::complex<double>{};
  s.x_mean = -(drive.g_gb_single / p.omega_m) * std::norm(b);
  s.g_eff = effective_coupling(drive.g_gb_single, b);
  return s;
}

}  // namespace magfb
