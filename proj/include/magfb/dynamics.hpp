#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <string_view>

#include <Eigen/Dense>

#include "magfb/model.hpp"

namespace magfb {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Quadrature ordering used by every 6x6 matrix: (X_a, Y_a, X_b, Y_b, x, y).
namespace quad {
inline constexpr int Xa = 0, Ya = 1, Xb = 2, Yb = 3, x = 4, y = 5;
}

struct DriftMatrix {
  Matrix6 entries;
};

// Diagonal noise matrix; stored dense so it composes with the solver.
struct DiffusionMatrix {
  Matrix6 entries;
};

struct SteadyCovariance {
  Matrix6 entries;
};

struct StabilityReport {
  double max_real_part = 0.0;
  std::array<std::complex<double>, 6> eigenvalues{};
  bool stable = false;
};

struct Occupancies {
  double n_a = 0.0;
  double n_b = 0.0;
  double n_m = 0.0;
};

Occupancies thermal_occupancies(const SystemParams& params);

// Linearized drift matrix. g_eff is the (real) effective magnomechanical
// coupling |G̃_Gb|.
DriftMatrix build_drift(const SystemParams& params, const FeedbackRates& rates,
                        double g_eff);

DiffusionMatrix build_diffusion(const SystemParams& params,
                                const FeedbackRates& rates,
                                const Occupancies& n);

// A matrix is stable when its largest eigenvalue real part is below
// -kStabilityMargin * ||L||_inf.
inline constexpr double kStabilityMargin = 1e-9;

StabilityReport check_stability(const Eigen::MatrixXd& L);
inline StabilityReport check_stability(const DriftMatrix& L) {
  return check_stability(Eigen::MatrixXd(L.entries));
}

// Solves L V + V Lᵀ + K = 0 through the n²-unknown vectorized system
// (I ⊗ L + L ⊗ I) vec(V) = −vec(K) and symmetrizes the result. Refuses
// unstable L with StabilityError.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& L,
                               const Eigen::MatrixXd& K);

SteadyCovariance solve_lyapunov(const DriftMatrix& L, const DiffusionMatrix& K);

// ||L V + V Lᵀ + K||_F
double lyapunov_residual(const Eigen::MatrixXd& L, const Eigen::MatrixXd& V,
                         const Eigen::MatrixXd& K);

// Row-major plain-text dump with 17 significant digits, preceded by
// "# <name>".
void write_matrix(std::ostream& os, std::string_view name,
                  const Eigen::MatrixXd& m);

}  // namespace magfb
