#include "magfb/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "magfb/errors.hpp"

namespace magfb {

Occupancies thermal_occupancies(const SystemParams& p) {
  return {thermal_occupancy(p.omega_a, p.T), thermal_occupancy(p.omega_b, p.T),
          thermal_occupancy(p.omega_m, p.T)};
}

DriftMatrix build_drift(const SystemParams& p, const FeedbackRates& r,
                        double g_eff) {
  using namespace quad;
  Matrix6 L = Matrix6::Zero();

  L(Xa, Xa) = -r.gamma_fb;
  L(Xa, Ya) = r.delta_fb;
  L(Ya, Xa) = -r.delta_fb;
  L(Ya, Ya) = -r.gamma_fb;

  L(Xa, Yb) = p.g_ga;
  L(Ya, Xb) = -p.g_ga;
  L(Xb, Ya) = p.g_ga;
  L(Yb, Xa) = -p.g_ga;

  // Kerr squeezing enters as ±ξ on the magnon diagonal.
  L(Xb, Xb) = -p.gamma_b + p.xi;
  L(Xb, Yb) = p.delta_b_tilde;
  L(Yb, Xb) = -p.delta_b_tilde;
  L(Yb, Yb) = -p.gamma_b - p.xi;

  L(Xb, x) = -g_eff;
  L(y, Yb) = g_eff;

  L(x, y) = p.omega_m;
  L(y, x) = -p.omega_m;
  L(y, y) = -p.gamma_m;
  return {L};
}

DiffusionMatrix build_diffusion(const SystemParams& p, const FeedbackRates& r,
                                const Occupancies& n) {
  if (n.n_a < 0.0 || n.n_b < 0.0 || n.n_m < 0.0) {
    throw DomainError("build_diffusion: occupancies must be non-negative");
  }
  const double cavity_rate = p.cavity_noise == CavityNoise::feedback
                                 ? p.gamma_a * r.noise_factor
                                 : std::max(r.gamma_fb, 0.0);
  Eigen::Matrix<double, 6, 1> d;
  d << cavity_rate * (2.0 * n.n_a + 1.0), cavity_rate * (2.0 * n.n_a + 1.0),
      p.gamma_b * (2.0 * n.n_b + 1.0), p.gamma_b * (2.0 * n.n_b + 1.0), 0.0,
      p.gamma_m * (2.0 * n.n_m + 1.0);
  return {Matrix6(d.asDiagonal())};
}

StabilityReport check_stability(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols()) {
    throw DomainError("check_stability: matrix must be square");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(L, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("check_stability: eigenvalue iteration did not converge");
  }
  const Eigen::VectorXcd ev = solver.eigenvalues();

  StabilityReport report;
  report.max_real_part = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    report.max_real_part = std::max(report.max_real_part, ev[i].real());
    if (i < static_cast<Eigen::Index>(report.eigenvalues.size())) {
      report.eigenvalues[static_cast<std::size_t>(i)] = ev[i];
    }
  }
  const double norm_inf = L.cwiseAbs().rowwise().sum().maxCoeff();
  report.stable = report.max_real_part < -kStabilityMargin * norm_inf;
  return report;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& L,
                               const Eigen::MatrixXd& K) {
  const Eigen::Index n = L.rows();
  if (L.cols() != n || K.rows() != n || K.cols() != n) {
    throw DomainError("solve_lyapunov: L and K must be square and equal size");
  }
  const StabilityReport report = check_stability(L);
  if (!report.stable) {
    std::ostringstream os;
    os << "solve_lyapunov: drift matrix is not stable (max Re = "
       << report.max_real_part << ")";
    throw StabilityError(os.str());
  }

  // Column-major vec: vec(LV) = (I ⊗ L) vec V, vec(V Lᵀ) = (L ⊗ I) vec V.
  const Eigen::Index n2 = n * n;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n2, n2);
  for (Eigen::Index j = 0; j < n; ++j) {
    M.block(j * n, j * n, n, n) += L;
    for (Eigen::Index i = 0; i < n; ++i) {
      M.block(i * n, j * n, n, n).diagonal().array() += L(i, j);
    }
  }
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(K.data(), n2);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) {
    throw DegenerateError("solve_lyapunov: vectorized system is singular");
  }
  Eigen::VectorXd v = lu.solve(rhs);
  // One refinement step tightens the residual for badly scaled rates.
  v += lu.solve(rhs - M * v);

  Eigen::MatrixXd V = Eigen::Map<Eigen::MatrixXd>(v.data(), n, n);
  return 0.5 * (V + V.transpose());
}

SteadyCovariance solve_lyapunov(const DriftMatrix& L, const DiffusionMatrix& K) {
  return {Matrix6(solve_lyapunov(Eigen::MatrixXd(L.entries),
                                 Eigen::MatrixXd(K.entries)))};
}

double lyapunov_residual(const Eigen::MatrixXd& L, const Eigen::MatrixXd& V,
                         const Eigen::MatrixXd& K) {
  return (L * V + V * L.transpose() + K).norm();
}

void write_matrix(std::ostream& os, std::string_view name,
                  const Eigen::MatrixXd& m) {
  os << "# " << name << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.16e", m(i, j));
      os << (j ? " " : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace magfb
