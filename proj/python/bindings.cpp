#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fps/entanglement.hpp"
#include "fps/errors.hpp"
#include "fps/exact_dynamics.hpp"
#include "fps/hb_scattering.hpp"
#include "fps/lb_scattering.hpp"
#include "fps/runner.hpp"
#include "fps/scenario.hpp"
#include "fps/spectrum.hpp"

namespace py = pybind11;
using namespace fps;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

FrequencyGrid grid_from(py::object grid) {
  if (py::isinstance<FrequencyGrid>(grid)) return grid.cast<FrequencyGrid>();
  const auto t = grid.cast<std::tuple<double, double, std::size_t>>();
  return FrequencyGrid(std::get<0>(t), std::get<1>(t), std::get<2>(t));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Photon-pair generation in birefringent fibers";

  auto base = py::register_exception<Error>(m, "FpsError", PyExc_ValueError);
  py::register_exception<StepCountTooSmall>(m, "StepCountTooSmall", base.ptr());

  py::enum_<Regime>(m, "Regime").value("HB", Regime::HB).value("LB", Regime::LB);
  py::enum_<Method>(m, "Method")
      .value("FIRST_ORDER", Method::FirstOrder)
      .value("EXACT_ODE", Method::ExactOde)
      .value("CLOSED_FORM", Method::ClosedForm);
  py::enum_<Channel>(m, "Channel")
      .value("XX", Channel::XX)
      .value("YY", Channel::YY)
      .value("XY", Channel::XY)
      .value("YX", Channel::YX);

  py::class_<FiberParams>(m, "FiberParams")
      .def(py::init([](double gamma, double beta2, double delta_beta0, double delta_beta1,
                       double length, double beta1_ref) {
             FiberParams f;
             f.gamma = gamma;
             f.beta2 = beta2;
             f.delta_beta0 = delta_beta0;
             f.delta_beta1 = delta_beta1;
             f.length = length;
             f.beta1_ref = beta1_ref;
             f.validate();
             return f;
           }),
           py::arg("gamma"), py::arg("beta2"), py::arg("delta_beta0") = 0.0,
           py::arg("delta_beta1") = 0.0, py::arg("length") = 1.0, py::arg("beta1_ref") = 0.0)
      .def_readwrite("gamma", &FiberParams::gamma)
      .def_readwrite("beta2", &FiberParams::beta2)
      .def_readwrite("delta_beta0", &FiberParams::delta_beta0)
      .def_readwrite("delta_beta1", &FiberParams::delta_beta1)
      .def_readwrite("beta1_ref", &FiberParams::beta1_ref)
      .def_readwrite("length", &FiberParams::length)
      .def("with_length", &FiberParams::with_length);

  py::class_<PumpConfig>(m, "PumpConfig")
      .def(py::init([](double p0x, double p0y, double theta0x, double theta0y,
                       std::optional<double> duration) {
             PumpConfig p;
             p.p0x = p0x;
             p.p0y = p0y;
             p.theta0x = theta0x;
             p.theta0y = theta0y;
             p.duration = duration;
             p.validate();
             return p;
           }),
           py::arg("p0x") = 0.0, py::arg("p0y") = 0.0, py::arg("theta0x") = 0.0,
           py::arg("theta0y") = 0.0, py::arg("duration") = py::none())
      .def_readwrite("p0x", &PumpConfig::p0x)
      .def_readwrite("p0y", &PumpConfig::p0y)
      .def_readwrite("theta0x", &PumpConfig::theta0x)
      .def_readwrite("theta0y", &PumpConfig::theta0y)
      .def_readwrite("duration", &PumpConfig::duration);

  py::class_<FrequencyGrid>(m, "FrequencyGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("omega_min"), py::arg("omega_max"),
           py::arg("n_points"))
      .def_static("symmetric_offset", &FrequencyGrid::symmetric_offset)
      .def("__len__", &FrequencyGrid::size)
      .def_property_readonly("step", &FrequencyGrid::step)
      .def("values", [](const FrequencyGrid& g) { return to_array(g.values()); });

  py::class_<FluxPair>(m, "FluxPair")
      .def_readonly("f_x", &FluxPair::f_x)
      .def_readonly("f_y", &FluxPair::f_y)
      .def("__repr__", [](const FluxPair& f) {
        std::ostringstream s;
        s << "FluxPair(f_x=" << f.f_x << ", f_y=" << f.f_y << ")";
        return s.str();
      });

  m.def("alpha_param", &alpha_param, py::arg("fiber"), py::arg("pump"));
  m.def("xi_hb", &xi_hb, py::arg("fiber"), py::arg("pump"), py::arg("channel"), py::arg("omega"));
  m.def("xi_lb_yy", &xi_lb_yy, py::arg("fiber"), py::arg("pump"), py::arg("omega"));
  m.def("flux_hb", &flux_hb, py::arg("fiber"), py::arg("pump"), py::arg("omega"));
  m.def("flux_lb", &flux_lb, py::arg("fiber"), py::arg("pump"), py::arg("omega"));
  m.def("phase_matching_roots", &phase_matching_roots, py::arg("fiber"), py::arg("pump"),
        py::arg("channel"));
  m.def("vector_peak_detuning",
        [](const FiberParams& f, const PumpConfig& p) {
          const auto v = vector_peak_detuning(f, p);
          return py::make_tuple(v.detuning, v.overlapping);
        },
        py::arg("fiber"), py::arg("pump"));
  m.def("lb_peak_and_width",
        [](const FiberParams& f, const PumpConfig& p) {
          const auto v = lb_peak_and_width(f, p);
          return py::make_tuple(v.detuning, v.width);
        },
        py::arg("fiber"), py::arg("pump"));
  m.def("total_scatter_probability",
        [](const FiberParams& f, const PumpConfig& p, double duration, bool numeric) {
          return total_scatter_probability(
              f, p, duration, numeric ? ProbabilityMode::Numeric : ProbabilityMode::Analytic);
        },
        py::arg("fiber"), py::arg("pump"), py::arg("duration"), py::arg("numeric") = false);

  m.def("integrate_transfer",
        [](const FiberParams& f, const PumpConfig& p, Regime r, double omega,
           std::optional<int> steps) {
          const TransferMatrix t = [&] {
            py::gil_scoped_release release;
            return integrate_transfer(f, p, r, omega, steps);
          }();
          return py::make_tuple(Eigen::Matrix4cd(t.matrix), t.defect, t.steps);
        },
        py::arg("fiber"), py::arg("pump"), py::arg("regime"), py::arg("omega"),
        py::arg("steps") = py::none());
  m.def("closed_form_flux", &closed_form_flux, py::arg("fiber"), py::arg("pump"),
        py::arg("regime"), py::arg("omega"));
  m.def("exact_scalar_flux", &exact_scalar_flux, py::arg("fiber"), py::arg("power"),
        py::arg("omega"));
  m.def("mi_gain", &mi_gain, py::arg("fiber"), py::arg("power"), py::arg("omega"));
  m.def("mi_peak_detuning", &mi_peak_detuning, py::arg("fiber"), py::arg("power"));
  m.def("bandwidth_ratio", &bandwidth_ratio, py::arg("fiber"), py::arg("power"),
        py::arg("length"));

  m.def("spectrum",
        [](const FiberParams& f, const PumpConfig& p, Regime r, Method method, py::object grid,
           unsigned threads, std::optional<int> steps) {
          const FrequencyGrid g = grid_from(grid);
          const SpectrumRecord rec = [&] {
            py::gil_scoped_release release;
            return compute_spectrum(f, p, r, method, g, threads, steps);
          }();
          return py::make_tuple(to_array(g.values()), to_array(rec.f_x), to_array(rec.f_y));
        },
        py::arg("fiber"), py::arg("pump"), py::arg("regime"), py::arg("method"), py::arg("grid"),
        py::arg("threads") = 1, py::arg("steps") = py::none(),
        "Returns (omega, f_x, f_y) as numpy arrays; grid is a FrequencyGrid or "
        "(omega_min, omega_max, n_points).");

  m.def("classify",
        [](const FiberParams& f, const PumpConfig& p, Regime r, double omega, double duration) {
          const auto st = filtered_state(f, p, r, omega, duration);
          const auto rep = classify(st);
          py::dict d;
          d["classification"] = std::string(to_string(rep.classification));
          d["concurrence"] = rep.concurrence;
          d["relative_phase"] = rep.relative_phase;
          d["coefficients"] = py::dict(py::arg("xx") = st.coeffs[kXX],
                                       py::arg("yy") = st.coeffs[kYY],
                                       py::arg("xy") = st.coeffs[kXY],
                                       py::arg("yx") = st.coeffs[kYX]);
          d["generation_probability"] = st.generation_probability;
          return d;
        },
        py::arg("fiber"), py::arg("pump"), py::arg("regime"), py::arg("omega"),
        py::arg("duration"));

  m.def("preset_names", &preset_names);
  m.def("preset_text", [](const std::string& n) { return preset_text(n); });
  m.def("run_spectrum_csv",
        [](const std::string& scenario_text, const std::string& preset_name, unsigned threads) {
          std::vector<RawScenario> layers;
          if (!preset_name.empty()) layers.push_back(parse_raw(preset_text(preset_name), preset_name));
          if (!scenario_text.empty()) layers.push_back(parse_raw(scenario_text, "<python>"));
          const Scenario s = resolve(layers, preset_name.empty() ? "<python>" : preset_name);
          RunOptions o;
          o.threads = threads;
          std::ostringstream out;
          {
            py::gil_scoped_release release;
            run_spectrum(s, o, out);
          }
          return out.str();
        },
        py::arg("scenario") = "", py::arg("preset") = "", py::arg("threads") = 1,
        "CSV text identical to `fps spectrum`.");
}
