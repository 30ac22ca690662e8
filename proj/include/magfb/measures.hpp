#pragma once

#include <array>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "magfb/dynamics.hpp"

namespace magfb {

enum class Mode { photon, magnon, phonon };

std::string_view short_name(Mode m);  // "a", "b", "m"

struct ModePair {
  Mode first;
  Mode second;
};

// Pair order used for every report and CSV: ab, am, bm.
inline constexpr std::array<ModePair, 3> kPairs = {{
    {Mode::photon, Mode::magnon},
    {Mode::photon, Mode::phonon},
    {Mode::magnon, Mode::phonon},
}};

std::string pair_label(ModePair pair);  // e.g. "ab"

using Matrix2 = Eigen::Matrix2d;
using Matrix4 = Eigen::Matrix4d;

// Two-mode covariance [[A, C], [Cᵀ, B]].
struct TwoModeCM {
  Matrix2 A;
  Matrix2 B;
  Matrix2 C;
  ModePair pair{Mode::photon, Mode::magnon};

  Matrix4 assembled() const;
  // Same state with the parties exchanged.
  TwoModeCM swapped() const;
};

TwoModeCM extract_pair(const SteadyCovariance& V, ModePair pair);
TwoModeCM make_two_mode(const Matrix4& sigma,
                        ModePair pair = {Mode::photon, Mode::magnon});

// Moduli of the eigenvalues of iΩσ, one per mode, ascending. σ must be a
// symmetric 2n x 2n matrix with n in {1, 2, 3}.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma);

// Physical when every symplectic eigenvalue is >= 1/2 - kPhysicalityTol.
inline constexpr double kPhysicalityTol = 1e-9;
bool is_physical(const Eigen::MatrixXd& sigma);

// standard: Σ̃ = det A + det B − 2 det C.
// printed:  Σ̃ = det A + det B − det C, kept only for comparison.
enum class NegativityForm { standard, printed };

// Smallest symplectic eigenvalue of the partially transposed state.
double min_pt_symplectic_eigenvalue(
    const TwoModeCM& cm, NegativityForm form = NegativityForm::standard);

double log_negativity(const TwoModeCM& cm,
                      NegativityForm form = NegativityForm::standard);

enum class Direction { AtoB, BtoA };

// Gaussian steerability. A→B uses the Schur complement B − Cᵀ A⁻¹ C.
double gaussian_steering(const TwoModeCM& cm, Direction direction);

double steering_asymmetry(double s_ab, double s_ba);

enum class SteeringClass {
  no_way,
  one_way_AtoB,
  one_way_BtoA,
  two_way,
  separable_unsteerable,
};

inline constexpr double kZeroThreshold = 1e-10;

SteeringClass classify_steering(double e_n, double s_ab, double s_ba);
std::string_view to_string(SteeringClass c);

struct CorrelationReport {
  ModePair pair{Mode::photon, Mode::magnon};
  double e_n = 0.0;
  double s_ab = 0.0;
  double s_ba = 0.0;
  double s_asym = 0.0;
  SteeringClass classification = SteeringClass::separable_unsteerable;
  bool physical = true;
};

CorrelationReport correlation_report(
    const TwoModeCM& cm, NegativityForm form = NegativityForm::standard);

}  // namespace magfb
