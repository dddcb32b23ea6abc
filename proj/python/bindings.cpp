// Python module lslinv._core. JSON-shaped values (configs, transfer data, reports) cross
// the boundary as text; the package __init__ wraps them as dicts.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lslinv/experiment.hpp"
#include "lslinv/transfer_io.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace lslinv
{
namespace
{

ExperimentConfig Config(const std::string &text)
{
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
  {
    throw Error(ErrorKind::Config, "config is not valid JSON");
  }
  return ConfigFromJson(j);
}

py::dict Outcomes(const std::vector<MethodOutcome> &outcomes)
{
  py::dict d;
  for (const MethodOutcome &o : outcomes)
  {
    d[ToString(o.result.method)] = o.result.q;
  }
  return d;
}

}  // namespace
}  // namespace lslinv

PYBIND11_MODULE(_core, m)
{
  using namespace lslinv;
  m.doc() = "Lippmann-Schwinger-Lanczos inversion";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator(
    [](std::exception_ptr p)
    {
      try
      {
        if (p)
        {
          std::rethrow_exception(p);
        }
      }
      catch (const Error &e)
      {
        py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
        exc.attr("kind") = ToString(e.kind());
        PyErr_SetObject(error.ptr(), exc.ptr());
      }
    });

  m.def("normalize_config", [](const std::string &text) { return ToJson(Config(text)).dump(); },
        "Parse, validate and re-serialize a config with every default filled in.");

  m.def("make_medium", [](const std::string &text)
        {
          const ExperimentConfig c = Config(text);
          return MakeMedium(c.grid.Build(), c.medium).RealValues();
        });

  m.def("generate_data", [](const std::string &text) { return ToJson(GenerateData(Config(text))).dump(); },
        "Transfer data for the configured medium, as transfer JSON.");

  m.def("invert",
        [](const std::string &text, const std::string &data)
        {
          const ExperimentConfig c = Config(text);
          const InversionRun run = InvertData(c, TransferDataFromJson(json::parse(data)));
          return Outcomes(run.outcomes);
        },
        py::arg("config"), py::arg("data"),
        "Invert transfer data without the true medium; CHEATED must not be requested.");

  m.def("run_experiment",
        [](const std::string &text)
        {
          const ExperimentRun run = RunExperiment(Config(text));
          py::dict out;
          out["report"] = ToJson(run.report).dump();
          out["q_true"] = VectorXd(run.q_true.RealValues());
          out["estimates"] = Outcomes(run.report.methods);
          return out;
        });

  m.def("diagnose", [](const std::string &text) { return ToJson(Diagnose(Config(text))).dump(); });

  m.def("build_rom",
        [](const std::string &data)
        {
          const Rom rom = BuildRom(TransferDataFromJson(json::parse(data)));
          return py::make_tuple(rom.mass, rom.stiffness, rom.moments);
        },
        "Mass, stiffness and moment matrices of the data-driven ROM.");

  m.def("lanczos",
        [](const std::string &data)
        {
          const LanczosFactorization f = Lanczos(BuildRom(TransferDataFromJson(json::parse(data))));
          return py::make_tuple(MatrixXd(f.RealT()), f.Q, f.beta);
        },
        "Real (block-)tridiagonal T, M-orthonormal Q and beta for the ROM of the data.");

  m.def("metrics",
        [](const std::string &text, const VectorXd &q_hat, const VectorXd &q_true)
        {
          const ExperimentConfig c = Config(text);
          return ToJson(Metrics(c.grid.Build(), q_hat, q_true)).dump();
        });
}
