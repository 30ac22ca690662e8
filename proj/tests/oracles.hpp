#pragma once

// Reference computations used only by tests. Nothing here calls into the
// library's numerical paths.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

// CODATA 2018, repeated here so the constants table is itself under test.
inline constexpr long double kHbar = 1.054571817e-34L;
inline constexpr long double kBoltzmann = 1.380649e-23L;
inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

// Direct Bose-Einstein evaluation in extended precision.
inline double bose_einstein(double omega, double T) {
  const long double x = kHbar * static_cast<long double>(omega) /
                        (kBoltzmann * static_cast<long double>(T));
  return static_cast<double>(1.0L / std::expm1(x));
}

inline Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    om(2 * k, 2 * k + 1) = 1.0;
    om(2 * k + 1, 2 * k) = -1.0;
  }
  return om;
}

// Symplectic spectrum from the real eigenvalues -ν² of (Ωσ)², each of which
// appears twice.
inline std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& sigma) {
  const int modes = static_cast<int>(sigma.rows() / 2);
  const Eigen::MatrixXd w = symplectic_form(modes) * sigma;
  Eigen::EigenSolver<Eigen::MatrixXd> es(w * w, false);
  std::vector<double> sq;
  for (int i = 0; i < es.eigenvalues().size(); ++i) sq.push_back(-es.eigenvalues()[i].real());
  std::sort(sq.begin(), sq.end());
  std::vector<double> out;
  for (int k = 0; k < modes; ++k) out.push_back(std::sqrt(std::max(0.0, 0.5 * (sq[2 * k] + sq[2 * k + 1]))));
  return out;
}

// E_N from the explicitly partially transposed state (Y of the second mode
// flipped).
inline double log_negativity_brute(const Eigen::Matrix4d& sigma) {
  Eigen::Matrix4d p = Eigen::Matrix4d::Identity();
  p(3, 3) = -1.0;
  const Eigen::Matrix4d pt = p * sigma * p;
  const double nu = symplectic_spectrum(pt).front();
  return std::max(0.0, -std::log(2.0 * nu));
}

// One-mode steering formula for a 1+1 state: ½ ln(det A / (4 det σ)).
inline double steering_one_mode(const Eigen::Matrix4d& sigma) {
  const double det_a = sigma.block<2, 2>(0, 0).determinant();
  return std::max(0.0, 0.5 * std::log(det_a / (4.0 * sigma.determinant())));
}

// Two-mode squeezed vacuum, vacuum variance 1/2.
inline Eigen::Matrix4d tmsv(double r) {
  const double c = 0.5 * std::cosh(2.0 * r);
  const double s = 0.5 * std::sinh(2.0 * r);
  Eigen::Matrix4d m;
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return m;
}

inline Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

// Random symplectic matrix on `modes` modes: local rotations and squeezers
// interleaved with beam splitters between neighbouring modes.
inline Eigen::MatrixXd random_symplectic(int modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * static_cast<double>(kPi));
  std::uniform_real_distribution<double> squeeze(-0.8, 0.8);
  const int dim = 2 * modes;
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(dim, dim);
  for (int layer = 0; layer < 3; ++layer) {
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(dim, dim);
    for (int k = 0; k < modes; ++k) {
      const double r = squeeze(rng);
      Eigen::Matrix2d sq = Eigen::Vector2d(std::exp(r), std::exp(-r)).asDiagonal();
      local.block<2, 2>(2 * k, 2 * k) = rotation(angle(rng)) * sq * rotation(angle(rng));
    }
    S = local * S;
    for (int k = 0; k + 1 < modes; ++k) {
      const double t = angle(rng);
      Eigen::MatrixXd bs = Eigen::MatrixXd::Identity(dim, dim);
      const Eigen::Matrix2d I2 = Eigen::Matrix2d::Identity();
      bs.block<2, 2>(2 * k, 2 * k) = std::cos(t) * I2;
      bs.block<2, 2>(2 * k, 2 * k + 2) = std::sin(t) * I2;
      bs.block<2, 2>(2 * k + 2, 2 * k) = -std::sin(t) * I2;
      bs.block<2, 2>(2 * k + 2, 2 * k + 2) = std::cos(t) * I2;
      S = bs * S;
    }
  }
  return S;
}

// Physical state S·diag(ν)·Sᵀ with every ν >= 1/2.
inline Eigen::MatrixXd random_physical_cm(int modes, std::mt19937_64& rng,
                                          double max_excess = 2.0) {
  std::uniform_real_distribution<double> excess(0.0, max_excess);
  Eigen::VectorXd d(2 * modes);
  for (int k = 0; k < modes; ++k) d(2 * k) = d(2 * k + 1) = 0.5 + excess(rng);
  const Eigen::MatrixXd S = random_symplectic(modes, rng);
  Eigen::MatrixXd sigma = S * d.asDiagonal() * S.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

}  // namespace oracle
