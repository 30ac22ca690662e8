#pragma once

#include <complex>
#include <optional>
#include <string>

#include "magfb/constants.hpp"

namespace magfb {

// How the cavity diffusion entries are formed.
//   feedback: γ_a ψ²|1 − τe^{iβ}|² (2n_a + 1)
//   balanced: γ_fb (2n_a + 1), i.e. matched to the feedback-modified damping
enum class CavityNoise { feedback, balanced };

// Physical parameters of the three-mode system. Every rate and frequency is
// an angular quantity in rad/s; T is in kelvin.
struct SystemParams {
  double omega_a = constants::angular(10e9);
  double omega_b = constants::angular(10e9);
  double omega_m = constants::angular(10e6);
  double gamma_a = constants::angular(1e6);
  double gamma_b = constants::angular(1e6);
  double gamma_m = constants::angular(100.0);
  double g_ga = constants::angular(3.2e6);
  double g_gb_eff = constants::angular(3.2e6);
  double xi = constants::angular(1e6);
  double delta_a = -constants::angular(10e6);
  double delta_b_tilde = 0.9 * constants::angular(10e6);
  double T = 0.01;
  double tau = 0.9;
  double beta = constants::pi;
  CavityNoise cavity_noise = CavityNoise::feedback;
};

// Throws DomainError when a field breaks its invariants.
void validate(const SystemParams& params);

// Returns a message when ω_m/γ_m is below the Markovian threshold.
std::optional<std::string> quality_factor_warning(const SystemParams& params);

inline constexpr double kMinMechanicalQuality = 100.0;

// Magnon drive chain used to derive the effective magnomechanical coupling.
struct DriveParams {
  double b0 = 3.9e-5;                            // T
  double sphere_diameter = 250e-6;               // m
  double rho_spin = 4.22e27;                     // m^-3
  double kappa_gyro = constants::angular(28e9);  // rad/s per T
  double cavity_drive_amp = 0.0;                 // rad/s
  double g_gb_single = constants::angular(0.2);  // rad/s
};

struct FeedbackRates {
  double gamma_fb = 0.0;
  double delta_fb = 0.0;
  double psi = 1.0;
  double noise_factor = 1.0;  // ψ²|1 − τe^{iβ}|²
};

struct SteadyState {
  std::complex<double> a_mean;
  std::complex<double> b_mean;
  double x_mean = 0.0;
  double g_eff = 0.0;
};

enum class SteadyStateMode { exact, approximate };

// Bose-Einstein occupancy 1/(exp(ħω/k_B T) − 1). Zero at T = 0.
double thermal_occupancy(double omega, double T);

FeedbackRates feedback_rates(double gamma_a, double delta_a, double tau,
                             double beta);

inline FeedbackRates feedback_rates(const SystemParams& p) {
  return feedback_rates(p.gamma_a, p.delta_a, p.tau, p.beta);
}

// Total spin count of the sphere, ρ·(π/6)·d³.
double spin_count(const DriveParams& drive);

// Ω = (√5/4) κ √N B₀.
double rabi_frequency(const DriveParams& drive);

// |i√2 g b| with the phase rotated into the magnon reference.
double effective_coupling(double g_gb_single, std::complex<double> b_mean);

SteadyState steady_state(const SystemParams& params, const DriveParams& drive,
                         SteadyStateMode mode = SteadyStateMode::exact);

}  // namespace magfb
