#include "magfb/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "magfb/errors.hpp"

namespace magfb {

namespace {

int first_row(Mode m) {
  switch (m) {
    case Mode::photon: return quad::Xa;
    case Mode::magnon: return quad::Xb;
    case Mode::phonon: return quad::x;
  }
  return 0;
}

// Tiny negative values from rounding are clipped, larger ones are errors.
constexpr double kClipTol = 1e-12;

}  // namespace

std::string_view short_name(Mode m) {
  switch (m) {
    case Mode::photon: return "a";
    case Mode::magnon: return "b";
    case Mode::phonon: return "m";
  }
  return "?";
}

std::string pair_label(ModePair pair) {
  return std::string(short_name(pair.first)) + std::string(short_name(pair.second));
}

Matrix4 TwoModeCM::assembled() const {
  Matrix4 s;
  s << A, C, C.transpose(), B;
  return s;
}

TwoModeCM TwoModeCM::swapped() const {
  return {B, A, C.transpose(), {pair.second, pair.first}};
}

TwoModeCM extract_pair(const SteadyCovariance& V, ModePair pair) {
  if (pair.first == pair.second) {
    throw DomainError("extract_pair: the two modes must differ");
  }
  const int i = first_row(pair.first);
  const int j = first_row(pair.second);
  return {V.entries.block<2, 2>(i, i), V.entries.block<2, 2>(j, j),
          V.entries.block<2, 2>(i, j), pair};
}

TwoModeCM make_two_mode(const Matrix4& sigma, ModePair pair) {
  return {sigma.block<2, 2>(0, 0), sigma.block<2, 2>(2, 2),
          sigma.block<2, 2>(0, 2), pair};
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
  const Eigen::Index dim = sigma.rows();
  if (sigma.cols() != dim || dim % 2 != 0 || dim < 2 || dim > 6) {
    throw DomainError("symplectic_eigenvalues: expected a 2n x 2n matrix, n <= 3");
  }
  const double scale = std::max(sigma.cwiseAbs().maxCoeff(), 1e-300);
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("symplectic_eigenvalues: matrix is not symmetric");
  }
  const Eigen::Index n = dim / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < n; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  // Eigenvalues of Ωσ come in pairs ±iν.
  Eigen::EigenSolver<Eigen::MatrixXd> solver(omega * sigma, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symplectic_eigenvalues: eigen iteration did not converge");
  }
  std::vector<double> moduli;
  moduli.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) moduli.push_back(std::abs(solver.eigenvalues()[i]));
  std::sort(moduli.begin(), moduli.end());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(2 * k);
    out.push_back(0.5 * (moduli[i] + moduli[i + 1]));
  }
  return out;
}

bool is_physical(const Eigen::MatrixXd& sigma) {
  const auto nu = symplectic_eigenvalues(sigma);
  return nu.front() >= 0.5 - kPhysicalityTol;
}

double min_pt_symplectic_eigenvalue(const TwoModeCM& cm, NegativityForm form) {
  const double det_c_weight = form == NegativityForm::standard ? 2.0 : 1.0;
  const double sigma_tilde =
      cm.A.determinant() + cm.B.determinant() - det_c_weight * cm.C.determinant();
  const double det_sigma = cm.assembled().determinant();
  double disc = sigma_tilde * sigma_tilde - 4.0 * det_sigma;
  if (disc < 0.0) {
    if (disc < -kClipTol * std::max(1.0, sigma_tilde * sigma_tilde)) {
      std::ostringstream os;
      os << "log_negativity: negative discriminant " << disc;
      throw NumericalError(os.str());
    }
    disc = 0.0;
  }
  const double lambda_sq = 0.5 * (sigma_tilde - std::sqrt(disc));
  if (!(lambda_sq > 0.0)) {
    throw NumericalError(
        "log_negativity: partially transposed state has no positive spectrum");
  }
  return std::sqrt(lambda_sq);
}

double log_negativity(const TwoModeCM& cm, NegativityForm form) {
  const double lambda = min_pt_symplectic_eigenvalue(cm, form);
  return std::max(0.0, -std::log(2.0 * lambda));
}

double gaussian_steering(const TwoModeCM& cm, Direction direction) {
  const TwoModeCM& s = direction == Direction::AtoB ? cm : cm.swapped();
  if (!(std::abs(s.A.determinant()) > 1e-300)) {
    throw DegenerateError("gaussian_steering: conditioning block is singular");
  }
  Matrix2 schur = s.B - s.C.transpose() * s.A.inverse() * s.C;
  schur = 0.5 * (schur + schur.transpose());
  double total = 0.0;
  for (double nu : symplectic_eigenvalues(schur)) {
    if (2.0 * nu < 1.0) total -= std::log(2.0 * nu);
  }
  return std::max(0.0, total);
}

double steering_asymmetry(double s_ab, double s_ba) {
  return std::abs(s_ab - s_ba);
}

SteeringClass classify_steering(double e_n, double s_ab, double s_ba) {
  if (e_n <= kZeroThreshold) return SteeringClass::separable_unsteerable;
  const bool ab = s_ab > kZeroThreshold;
  const bool ba = s_ba > kZeroThreshold;
  if (ab && ba) return SteeringClass::two_way;
  if (ab) return SteeringClass::one_way_AtoB;
  if (ba) return SteeringClass::one_way_BtoA;
  return SteeringClass::no_way;
}

std::string_view to_string(SteeringClass c) {
  switch (c) {
    case SteeringClass::no_way: return "no-way";
    case SteeringClass::one_way_AtoB: return "one-way-AtoB";
    case SteeringClass::one_way_BtoA: return "one-way-BtoA";
    case SteeringClass::two_way: return "two-way";
    case SteeringClass::separable_unsteerable: return "separable-unsteerable";
  }
  return "?";
}

CorrelationReport correlation_report(const TwoModeCM& cm, NegativityForm form) {
  CorrelationReport r;
  r.pair = cm.pair;
  r.e_n = log_negativity(cm, form);
  r.s_ab = gaussian_steering(cm, Direction::AtoB);
  r.s_ba = gaussian_steering(cm, Direction::BtoA);
  r.s_asym = steering_asymmetry(r.s_ab, r.s_ba);
  r.classification = classify_steering(r.e_n, r.s_ab, r.s_ba);
  r.physical = is_physical(Eigen::MatrixXd(cm.assembled()));
  return r;
}

}  // namespace magfb
