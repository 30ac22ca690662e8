#include <doctest.h>

#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "magfb/dynamics.hpp"
#include "magfb/errors.hpp"
#include "magfb/measures.hpp"
#include "oracles.hpp"

using namespace magfb;
using constants::angular;
using constants::pi;

namespace {

// Structural zeros of the linearized drift matrix (0-based).
constexpr std::array<std::pair<int, int>, 19> kZeros = {{
    {0, 2}, {0, 4}, {0, 5},
    {1, 3}, {1, 4}, {1, 5},
    {2, 0}, {2, 5},
    {3, 1}, {3, 4}, {3, 5},
    {4, 0}, {4, 1}, {4, 2}, {4, 3}, {4, 4},
    {5, 0}, {5, 1}, {5, 2},
}};

SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p;
  p.gamma_a = angular(2e6 * u(rng));
  p.gamma_b = angular(2e6 * u(rng));
  p.gamma_m = angular(1e3 * u(rng));
  p.g_ga = angular(5e6 * u(rng));
  p.g_gb_eff = angular(5e6 * u(rng));
  p.xi = angular(2e6 * u(rng));
  p.delta_a = angular(40e6 * (u(rng) - 0.5));
  p.delta_b_tilde = angular(40e6 * (u(rng) - 0.5));
  p.tau = u(rng);
  p.beta = 2 * pi * u(rng);
  p.T = 2.0 * u(rng);
  return p;
}

// Random stable matrix: shifted so its spectral abscissa is negative.
Eigen::MatrixXd random_stable(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = g(rng);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  const double abscissa = es.eigenvalues().real().maxCoeff();
  std::uniform_real_distribution<double> margin(0.05, 2.0);
  return A - (abscissa + margin(rng)) * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("build_drift") {
  SUBCASE("decoupled limit is block diagonal") {
    SystemParams p;
    p.g_ga = 0.0;
    p.xi = 0.0;
    const FeedbackRates r = feedback_rates(p);
    const Matrix6 L = build_drift(p, r, 0.0).entries;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (i / 2 != j / 2) CHECK(L(i, j) == 0.0);
    CHECK(L(0, 0) == -r.gamma_fb);
    CHECK(L(2, 2) == -p.gamma_b);
    CHECK(L(3, 3) == -p.gamma_b);
    CHECK(L(2, 3) == p.delta_b_tilde);
  }
  SUBCASE("operating point entries") {
    SystemParams p;
    const FeedbackRates r = feedback_rates(p);
    const Matrix6 L = build_drift(p, r, p.g_gb_eff).entries;
    CHECK(L(0, 1) == r.delta_fb);
    CHECK(L(2, 2) == -p.gamma_b + p.xi);
    CHECK(L(3, 3) == -p.gamma_b - p.xi);
    CHECK(L(2, 4) == -p.g_gb_eff);
    CHECK(L(5, 3) == p.g_gb_eff);
    CHECK(L(4, 5) == p.omega_m);
    CHECK(L(5, 4) == -p.omega_m);
    CHECK(L(5, 5) == -p.gamma_m);
    CHECK(L(0, 3) == p.g_ga);
    CHECK(L(1, 2) == -p.g_ga);
    CHECK(L(2, 1) == p.g_ga);
    CHECK(L(3, 0) == -p.g_ga);
  }
  SUBCASE("structural zeros hold for arbitrary parameters") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const SystemParams p = random_params(rng);
      const Matrix6 L = build_drift(p, feedback_rates(p), p.g_gb_eff).entries;
      for (auto [i, j] : kZeros) CHECK(L(i, j) == 0.0);
    }
  }
  SUBCASE("no feedback and no Kerr gives the plain magnomechanical matrix") {
    SystemParams p;
    p.tau = 0.0;
    p.xi = 0.0;
    const Matrix6 L = build_drift(p, feedback_rates(p), p.g_gb_eff).entries;
    CHECK(L(0, 0) == -p.gamma_a);
    CHECK(L(1, 1) == -p.gamma_a);
    CHECK(L(0, 1) == p.delta_a);
    CHECK(L(1, 0) == -p.delta_a);
    CHECK(L(2, 2) == -p.gamma_b);
    CHECK(L(3, 3) == -p.gamma_b);
  }
}

TEST_CASE("build_diffusion") {
  SystemParams p;
  SUBCASE("vacuum baths, open loop") {
    p.T = 0.0;
    p.tau = 0.0;
    const Matrix6 K = build_diffusion(p, feedback_rates(p), thermal_occupancies(p)).entries;
    Eigen::Matrix<double, 6, 1> expected;
    expected << p.gamma_a, p.gamma_a, p.gamma_b, p.gamma_b, 0.0, p.gamma_m;
    CHECK((K - Matrix6(expected.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-12 * p.gamma_a);
  }
  SUBCASE("perfect re-injection removes cavity noise") {
    p.tau = 1.0;
    p.beta = 0.0;
    const Matrix6 K = build_diffusion(p, feedback_rates(p), thermal_occupancies(p)).entries;
    CHECK(K(0, 0) == 0.0);
    CHECK(K(1, 1) == 0.0);
    CHECK(K(4, 4) == 0.0);
  }
  SUBCASE("thermal mechanical entry at 10 mK") {
    p.T = 0.01;
    const Matrix6 K = build_diffusion(p, feedback_rates(p), thermal_occupancies(p)).entries;
    const double n_m = oracle::bose_einstein(p.omega_m, 0.01);
    CHECK(K(5, 5) == doctest::Approx(p.gamma_m * (2 * n_m + 1)).epsilon(1e-12));
    CHECK(K(5, 5) == doctest::Approx(p.gamma_m * (2 * 20.3 + 1)).epsilon(0.01));
    CHECK(K(4, 4) == 0.0);
  }
  SUBCASE("diagonal and non-negative everywhere") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      const SystemParams q = random_params(rng);
      const Matrix6 K = build_diffusion(q, feedback_rates(q), thermal_occupancies(q)).entries;
      CHECK(K.diagonal().minCoeff() >= 0.0);
      CHECK((K - Matrix6(K.diagonal().asDiagonal())).norm() == 0.0);
    }
  }
  SUBCASE("balanced cavity noise follows the modified decay") {
    p.cavity_noise = CavityNoise::balanced;
    p.T = 0.0;
    const FeedbackRates r = feedback_rates(p);
    const Matrix6 K = build_diffusion(p, r, thermal_occupancies(p)).entries;
    CHECK(K(0, 0) == doctest::Approx(r.gamma_fb));
  }
  SUBCASE("negative occupancy rejected") {
    CHECK_THROWS_AS(build_diffusion(p, feedback_rates(p), {-1.0, 0.0, 0.0}), DomainError);
  }
}

TEST_CASE("check_stability") {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(6, 6);
  SUBCASE("negative identity") {
    const StabilityReport s = check_stability(-I);
    CHECK(s.stable);
    CHECK(s.max_real_part == doctest::Approx(-1.0));
  }
  SUBCASE("positive identity") {
    CHECK_FALSE(check_stability(I).stable);
  }
  SUBCASE("marginal matrix is not accepted") {
    Eigen::MatrixXd L = -I;
    L(5, 5) = -1e-12;
    CHECK_FALSE(check_stability(L).stable);
  }
  SUBCASE("operating point is stable") {
    SystemParams p;
    const StabilityReport s = check_stability(build_drift(p, feedback_rates(p), p.g_gb_eff));
    CHECK(s.stable);
    CHECK(s.max_real_part < 0.0);
    // independent eigenvalue computation
    Eigen::EigenSolver<Matrix6> es(build_drift(p, feedback_rates(p), p.g_gb_eff).entries);
    CHECK(es.eigenvalues().real().maxCoeff() == doctest::Approx(s.max_real_part).epsilon(1e-9));
  }
}

TEST_CASE("solve_lyapunov") {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(6, 6);
  SUBCASE("isotropic case") {
    const Eigen::MatrixXd V = solve_lyapunov(Eigen::MatrixXd(-I), Eigen::MatrixXd(2.0 * I));
    CHECK((V - I).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("decoupled damped rotation gives a thermal block") {
    const double gamma = 3.0, delta = 17.0, n = 2.5;
    Eigen::MatrixXd L(2, 2), K(2, 2);
    L << -gamma, delta, -delta, -gamma;
    K = gamma * (2 * n + 1) * Eigen::MatrixXd::Identity(2, 2);
    const Eigen::MatrixXd V = solve_lyapunov(L, K);
    CHECK((V - (n + 0.5) * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("unstable drift is refused") {
    CHECK_THROWS_AS(solve_lyapunov(Eigen::MatrixXd(I), Eigen::MatrixXd(I)), StabilityError);
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(solve_lyapunov(Eigen::MatrixXd(-I), Eigen::MatrixXd::Identity(4, 4)),
                    DomainError);
  }
  SUBCASE("randomized residual bound and positivity") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::MatrixXd L = random_stable(6, rng);
      Eigen::VectorXd d(6);
      for (int i = 0; i < 6; ++i) d(i) = u(rng);
      const Eigen::MatrixXd K = d.asDiagonal();
      const Eigen::MatrixXd V = solve_lyapunov(L, K);
      CHECK(lyapunov_residual(L, V, K) <= 1e-10 * K.norm());
      CHECK((V - V.transpose()).norm() == 0.0);
      CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(V).eigenvalues().minCoeff() >=
            -1e-12 * V.norm());
    }
  }
  SUBCASE("scaling L and K together leaves V unchanged") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::MatrixXd L = random_stable(6, rng);
      const Eigen::MatrixXd K = Eigen::MatrixXd::Identity(6, 6);
      const Eigen::MatrixXd V1 = solve_lyapunov(L, K);
      for (double c : {1e-3, 7.0, 2.0 * pi * 1e6}) {
        const Eigen::MatrixXd V2 = solve_lyapunov(c * L, c * K);
        CHECK((V1 - V2).norm() <= 1e-10 * V1.norm());
      }
    }
  }
  SUBCASE("operating-point residual at physical scales") {
    SystemParams p;
    const FeedbackRates r = feedback_rates(p);
    const DriftMatrix L = build_drift(p, r, p.g_gb_eff);
    const DiffusionMatrix K = build_diffusion(p, r, thermal_occupancies(p));
    const SteadyCovariance V = solve_lyapunov(L, K);
    CHECK(lyapunov_residual(L.entries, V.entries, K.entries) <= 1e-10 * K.entries.norm());
  }
  SUBCASE("consistent noise gives a physical state") {
    SystemParams p;
    p.tau = 0.0;  // feedback off: damping and noise match
    const FeedbackRates r = feedback_rates(p);
    const SteadyCovariance V = solve_lyapunov(build_drift(p, r, p.g_gb_eff),
                                              build_diffusion(p, r, thermal_occupancies(p)));
    CHECK(oracle::symplectic_spectrum(V.entries).front() >= 0.5 - 1e-9);

    SystemParams q;
    q.cavity_noise = CavityNoise::balanced;
    const FeedbackRates rq = feedback_rates(q);
    const SteadyCovariance Vq = solve_lyapunov(build_drift(q, rq, q.g_gb_eff),
                                               build_diffusion(q, rq, thermal_occupancies(q)));
    CHECK(oracle::symplectic_spectrum(Vq.entries).front() >= 0.5 - 1e-9);
  }
}

TEST_CASE("write_matrix round-trips 17 significant digits") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1e6);
  Eigen::MatrixXd m(3, 3);
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = g(rng);
  std::ostringstream os;
  write_matrix(os, "L", m);
  std::istringstream is(os.str());
  std::string header, tag;
  is >> header >> tag;
  CHECK(header == "#");
  CHECK(tag == "L");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v;
      is >> v;
      CHECK(v == m(i, j));
    }
}
