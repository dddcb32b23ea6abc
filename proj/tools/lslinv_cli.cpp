// Command line front end. Exit codes: 0 success, 2 bad config or input, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lslinv/export.hpp"
#include "lslinv/transfer_io.hpp"

namespace
{

using namespace lslinv;
using nlohmann::json;

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

// Applies "a.b.c=value" overrides; value is parsed as JSON and kept as a string otherwise.
void ApplyOverrides(json &j, const std::vector<std::string> &sets)
{
  for (const std::string &s : sets)
  {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
    {
      throw Error(ErrorKind::Config, "override '" + s + "' is not key=value");
    }
    std::string pointer = "/" + s.substr(0, eq);
    for (char &c : pointer)
    {
      c = c == '.' ? '/' : c;
    }
    const std::string text = s.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
    {
      value = text;
    }
    j[json::json_pointer(pointer)] = value;
  }
}

struct Common
{
  std::string config;
  std::vector<std::string> sets;
  std::string output;

  ExperimentConfig Load() const
  {
    json j;
    try
    {
      j = ReadJsonFile(config);
    }
    catch (const Error &e)
    {
      throw Error(ErrorKind::Config, e.detail());
    }
    ApplyOverrides(j, sets);
    if (!output.empty())
    {
      j["output"] = output;
    }
    return ConfigFromJson(j);
  }
};

void AddCommon(CLI::App *app, Common &c)
{
  app->add_option("-c,--config", c.config, "Experiment config (JSON)")->required();
  app->add_option("--set", c.sets, "Override a config entry, e.g. tsvd.threshold=1e-2");
  app->add_option("-o,--output", c.output, "Output directory (relative to $LSLINV_OUTPUT_ROOT)");
}

void PrintOutcomes(const std::vector<MethodOutcome> &outcomes)
{
  std::printf("%-15s %6s %12s %12s %12s\n", "method", "rank", "residual", "rel_l2", "seconds");
  for (const MethodOutcome &o : outcomes)
  {
    const double err = o.error ? o.error->relative_l2 : -1.0;
    std::printf("%-15s %6d %12.4e %12.4e %12.3f\n", ToString(o.result.method), o.result.rank,
                o.result.residual, err, o.seconds);
  }
}

void PrintDiagnostics(const Report &r)
{
  std::printf("mass eigenvalue ratio %.3e, lanczos steps %d\n", r.mass_ratio, r.lanczos_steps);
  std::printf("%-24s %12s %12s %12s %12s\n", "lambda", "conj_ratio", "dev_max", "romint",
              "resolvent");
  for (std::size_t j = 0; j < r.identity.entries.size(); j++)
  {
    const IdentityEntry &e = r.identity.entries[j];
    const double dev = std::max({e.dev_rom_data, e.dev_integral_data, e.dev_rom_integral});
    std::printf("(%10.4g, %10.4g) %12.4e %12.4e %12.4e %12.4e\n", e.lambda.real(),
                e.lambda.imag(), j < r.conjecture.size() ? r.conjecture[j].ratio : 0.0, dev,
                e.romint_residual, e.resolvent_residual);
  }
  std::printf("normalization gap %.3e\n", r.identity.normalization_gap);
}

int Forward(const Common &c)
{
  const ExperimentConfig cfg = c.Load();
  const TransferData data = GenerateData(cfg);
  const auto dir = OutputDirectory(cfg.output);
  SaveTransferData(data, dir / "transfer.json");
  WriteFieldCsv(dir / "q_true.csv", cfg.grid.Build(), MakeMedium(cfg.grid.Build(), cfg.medium).RealValues());
  std::printf("wrote %s\n", (dir / "transfer.json").string().c_str());
  return 0;
}

int Invert(const Common &c, const std::string &data_path)
{
  ExperimentConfig cfg = c.Load();
  std::vector<Method> methods;
  for (Method m : cfg.methods)
  {
    if (m == Method::Cheated)
    {
      std::fprintf(stderr, "note: CHEATED needs the true medium and is skipped by invert\n");
      continue;
    }
    methods.push_back(m);
  }
  if (methods.empty())
  {
    throw Error(ErrorKind::Config, "no data-driven method requested");
  }
  cfg.methods = methods;
  TransferData data;
  try
  {
    data = LoadTransferData(data_path);
  }
  catch (const Error &e)
  {
    throw Error(ErrorKind::Config, e.detail());
  }
  // Deliberately no medium here: only the transfer data reach the inversion.
  const InversionRun run = InvertData(cfg, data);
  const auto dir = OutputDirectory(cfg.output);
  const Grid grid = cfg.grid.Build();
  for (const MethodOutcome &o : run.outcomes)
  {
    std::string stem = ToString(o.result.method);
    for (char &ch : stem)
    {
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    WriteFieldCsv(dir / ("q_" + stem + ".csv"), grid, o.result.q);
    WriteJsonFile(ToJson(o.result, std::nullopt), dir / ("q_" + stem + ".json"));
    if (grid.dim() == 2)
    {
      WritePgm(dir / ("q_" + stem + ".pgm"), grid, o.result.q);
    }
  }
  PrintOutcomes(run.outcomes);
  return 0;
}

int Experiment(const Common &c)
{
  const ExperimentConfig cfg = c.Load();
  const ExperimentRun run = RunExperiment(cfg);
  const auto dir = OutputDirectory(cfg.output);
  ExportRun(run, dir);
  PrintOutcomes(run.report.methods);
  PrintDiagnostics(run.report);
  std::printf("wrote %s\n", dir.string().c_str());
  return 0;
}

int Diagnose(const Common &c)
{
  const ExperimentConfig cfg = c.Load();
  const Report r = lslinv::Diagnose(cfg);
  const auto dir = OutputDirectory(cfg.output);
  WriteJsonFile(ToJson(r), dir / "diagnose.json");
  PrintDiagnostics(r);
  return 0;
}

int Compare(const std::string &estimate, const std::string &reference)
{
  FieldCsv a, b;
  try
  {
    a = ReadFieldCsv(estimate);
    b = ReadFieldCsv(reference);
  }
  catch (const Error &e)
  {
    throw Error(ErrorKind::Config, e.detail());
  }
  if (a.nx != b.nx || a.ny != b.ny || a.hx != b.hx || a.hy != b.hy)
  {
    throw Error(ErrorKind::Config, "fields live on different grids");
  }
  const Grid grid = a.ny == 1 ? Grid::Line((a.nx - 1) * a.hx, a.nx)
                              : Grid::Rectangle((a.nx - 1) * a.hx, (a.ny - 1) * a.hy, a.nx, a.ny);
  std::cout << ToJson(Metrics(grid, a.values, b.values)).dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Lippmann-Schwinger-Lanczos inversion toolkit"};
  app.require_subcommand(1);

  Common fwd, inv, exp, diag;
  auto *forward = app.add_subcommand("forward", "Simulate transfer data for a config");
  AddCommon(forward, fwd);

  auto *invert = app.add_subcommand("invert", "Invert transfer data without the true medium");
  AddCommon(invert, inv);
  std::string data_path;
  invert->add_option("-d,--data", data_path, "Transfer data (JSON)")->required();

  auto *experiment = app.add_subcommand("experiment", "Run the full pipeline and export artifacts");
  AddCommon(experiment, exp);

  auto *diagnose = app.add_subcommand("diagnose", "Identity and internal-solution diagnostics");
  AddCommon(diagnose, diag);

  auto *compare = app.add_subcommand("compare", "Error metrics of one field CSV against another");
  std::string estimate, reference;
  compare->add_option("estimate", estimate, "Estimated field CSV")->required();
  compare->add_option("reference", reference, "Reference field CSV")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try
  {
    if (*forward)
    {
      return Forward(fwd);
    }
    if (*invert)
    {
      return Invert(inv, data_path);
    }
    if (*experiment)
    {
      return Experiment(exp);
    }
    if (*diagnose)
    {
      return Diagnose(diag);
    }
    return Compare(estimate, reference);
  }
  catch (const Error &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.numerical() ? kNumericalExit : kConfigExit;
  }
  catch (const nlohmann::json::exception &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigExit;
  }
}
