#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magfb/config.hpp"
#include "magfb/dynamics.hpp"
#include "magfb/errors.hpp"
#include "magfb/measures.hpp"
#include "magfb/model.hpp"
#include "magfb/sweep.hpp"

namespace py = pybind11;
using namespace magfb;

namespace {

Mode parse_mode(const std::string& name) {
  if (name == "a" || name == "photon") return Mode::photon;
  if (name == "b" || name == "magnon") return Mode::magnon;
  if (name == "m" || name == "phonon") return Mode::phonon;
  throw DomainError("unknown mode '" + name + "'");
}

AxisSpec make_axis(const std::string& name, double start, double stop, int points,
                   const SystemParams& base) {
  const Parameter p = parse_parameter(name);
  return {p, start, stop, points, default_unit(p, base)};
}

py::dict report_dict(const CorrelationReport& r) {
  py::dict d;
  d["pair"] = pair_label(r.pair);
  d["E_N"] = r.e_n;
  d["S_AtoB"] = r.s_ab;
  d["S_BtoA"] = r.s_ba;
  d["S_asym"] = r.s_asym;
  d["classification"] = std::string(to_string(r.classification));
  d["physical"] = r.physical;
  return d;
}

py::dict point_dict(const PointResult& p) {
  py::dict d;
  d["stable"] = p.stability.stable;
  d["max_real_part"] = p.stability.max_real_part;
  d["ok"] = p.status == PointStatus::ok;
  d["message"] = p.message;
  if (p.reports) {
    py::list reports;
    for (const auto& r : *p.reports) reports.append(report_dict(r));
    d["reports"] = reports;
    d["min_symplectic"] = p.min_symplectic;
    d["physical"] = p.physical;
    d["covariance"] = Eigen::MatrixXd(p.covariance->entries);
  } else {
    d["reports"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady-state Gaussian correlations of a coherent-feedback cavity "
            "magnomechanical system";

  auto base_error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
  py::register_exception<StabilityError>(m, "StabilityError", base_error.ptr());
  py::register_exception<DegenerateError>(m, "DegenerateError", base_error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base_error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base_error.ptr());

  m.attr("HBAR") = constants::hbar;
  m.attr("K_BOLTZMANN") = constants::k_boltzmann;

  py::enum_<CavityNoise>(m, "CavityNoise")
      .value("feedback", CavityNoise::feedback)
      .value("balanced", CavityNoise::balanced);
  py::enum_<NegativityForm>(m, "NegativityForm")
      .value("standard", NegativityForm::standard)
      .value("printed", NegativityForm::printed);
  py::enum_<Direction>(m, "Direction")
      .value("AtoB", Direction::AtoB)
      .value("BtoA", Direction::BtoA);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("omega_a", &SystemParams::omega_a)
      .def_readwrite("omega_b", &SystemParams::omega_b)
      .def_readwrite("omega_m", &SystemParams::omega_m)
      .def_readwrite("gamma_a", &SystemParams::gamma_a)
      .def_readwrite("gamma_b", &SystemParams::gamma_b)
      .def_readwrite("gamma_m", &SystemParams::gamma_m)
      .def_readwrite("g_ga", &SystemParams::g_ga)
      .def_readwrite("g_gb_eff", &SystemParams::g_gb_eff)
      .def_readwrite("xi", &SystemParams::xi)
      .def_readwrite("delta_a", &SystemParams::delta_a)
      .def_readwrite("delta_b_tilde", &SystemParams::delta_b_tilde)
      .def_readwrite("T", &SystemParams::T)
      .def_readwrite("tau", &SystemParams::tau)
      .def_readwrite("beta", &SystemParams::beta)
      .def_readwrite("cavity_noise", &SystemParams::cavity_noise);

  py::class_<DriveParams>(m, "DriveParams")
      .def(py::init<>())
      .def_readwrite("b0", &DriveParams::b0)
      .def_readwrite("sphere_diameter", &DriveParams::sphere_diameter)
      .def_readwrite("rho_spin", &DriveParams::rho_spin)
      .def_readwrite("kappa_gyro", &DriveParams::kappa_gyro)
      .def_readwrite("cavity_drive_amp", &DriveParams::cavity_drive_amp)
      .def_readwrite("g_gb_single", &DriveParams::g_gb_single);

  py::class_<FeedbackRates>(m, "FeedbackRates")
      .def_readonly("gamma_fb", &FeedbackRates::gamma_fb)
      .def_readonly("delta_fb", &FeedbackRates::delta_fb)
      .def_readonly("psi", &FeedbackRates::psi)
      .def_readonly("noise_factor", &FeedbackRates::noise_factor);

  py::class_<SteadyState>(m, "SteadyState")
      .def_readonly("a_mean", &SteadyState::a_mean)
      .def_readonly("b_mean", &SteadyState::b_mean)
      .def_readonly("x_mean", &SteadyState::x_mean)
      .def_readonly("g_eff", &SteadyState::g_eff);

  m.def("thermal_occupancy", &thermal_occupancy, py::arg("omega"), py::arg("T"));
  m.def("feedback_rates",
        py::overload_cast<double, double, double, double>(&feedback_rates),
        py::arg("gamma_a"), py::arg("delta_a"), py::arg("tau"), py::arg("beta"));
  m.def("rabi_frequency", &rabi_frequency, py::arg("drive"));
  m.def("effective_coupling", &effective_coupling, py::arg("g_gb_single"),
        py::arg("b_mean"));
  m.def(
      "steady_state",
      [](const SystemParams& p, const DriveParams& d, bool exact) {
        return steady_state(p, d, exact ? SteadyStateMode::exact
                                        : SteadyStateMode::approximate);
      },
      py::arg("params"), py::arg("drive") = DriveParams{}, py::arg("exact") = true);

  m.def(
      "build_drift",
      [](const SystemParams& p) {
        return Eigen::MatrixXd(build_drift(p, feedback_rates(p), p.g_gb_eff).entries);
      },
      py::arg("params"));
  m.def(
      "build_diffusion",
      [](const SystemParams& p) {
        return Eigen::MatrixXd(
            build_diffusion(p, feedback_rates(p), thermal_occupancies(p)).entries);
      },
      py::arg("params"));
  m.def(
      "check_stability",
      [](const Eigen::MatrixXd& L) {
        const StabilityReport s = check_stability(L);
        py::dict d;
        d["stable"] = s.stable;
        d["max_real_part"] = s.max_real_part;
        d["eigenvalues"] = std::vector<std::complex<double>>(s.eigenvalues.begin(),
                                                             s.eigenvalues.end());
        return d;
      },
      py::arg("L"));
  m.def("solve_lyapunov",
        py::overload_cast<const Eigen::MatrixXd&, const Eigen::MatrixXd&>(&solve_lyapunov),
        py::arg("L"), py::arg("K"));

  m.def("symplectic_eigenvalues", &symplectic_eigenvalues, py::arg("sigma"));
  m.def(
      "log_negativity",
      [](const Eigen::Matrix4d& sigma, NegativityForm form) {
        return log_negativity(make_two_mode(sigma), form);
      },
      py::arg("sigma"), py::arg("form") = NegativityForm::standard);
  m.def(
      "gaussian_steering",
      [](const Eigen::Matrix4d& sigma, Direction dir) {
        return gaussian_steering(make_two_mode(sigma), dir);
      },
      py::arg("sigma"), py::arg("direction") = Direction::AtoB);
  m.def(
      "correlations",
      [](const Eigen::MatrixXd& V, const std::string& first, const std::string& second) {
        if (V.rows() != 6 || V.cols() != 6) throw DomainError("expected a 6x6 covariance");
        return report_dict(correlation_report(
            extract_pair(SteadyCovariance{Matrix6(V)}, {parse_mode(first), parse_mode(second)})));
      },
      py::arg("V"), py::arg("first"), py::arg("second"));

  m.def(
      "evaluate_point",
      [](const SystemParams& p, NegativityForm form) {
        return point_dict(evaluate_point(p, {form}));
      },
      py::arg("params"), py::arg("form") = NegativityForm::standard);

  m.def(
      "sweep",
      [](const SystemParams& base, const std::vector<py::tuple>& axes, int threads) {
        std::vector<AxisSpec> specs;
        for (const py::tuple& t : axes) {
          specs.push_back(make_axis(t[0].cast<std::string>(), t[1].cast<double>(),
                                    t[2].cast<double>(), t[3].cast<int>(), base));
        }
        const SweepResult r = sweep(base, specs, threads);
        py::list points;
        for (const PointResult& p : r.records) points.append(point_dict(p));
        py::list values;
        for (const AxisSpec& a : r.axes) {
          std::vector<double> v;
          for (int i = 0; i < a.points; ++i) v.push_back(a.value(i));
          values.append(v);
        }
        py::dict d;
        d["axes"] = values;
        d["points"] = points;
        return d;
      },
      py::arg("base"), py::arg("axes"), py::arg("threads") = 1,
      "axes: list of (name, start, stop, points) in internal units");

  m.def(
      "figure_preset",
      [](const std::string& name, int points) {
        const FigurePreset f = figure_preset(name, SystemParams{}, points);
        py::list axes;
        for (const AxisSpec& a : f.axes) {
          axes.append(py::make_tuple(std::string(to_string(a.parameter)), a.start, a.stop,
                                     a.points));
        }
        return py::make_tuple(f.base, axes);
      },
      py::arg("name"), py::arg("points") = kDefaultGridPoints);

  m.def(
      "parse_config",
      [](const std::string& text) {
        const RunConfig c = parse_config(text);
        return py::make_tuple(c.system, c.drive);
      },
      py::arg("text"));
}
