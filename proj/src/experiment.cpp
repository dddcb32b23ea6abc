#include "lslinv/experiment.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "lslinv/transfer_io.hpp"

namespace lslinv
{

using nlohmann::json;

namespace
{

[[noreturn]] void ConfigError(const std::string &what)
{
  throw Error(ErrorKind::Config, what);
}

double Seconds(std::chrono::steady_clock::time_point since)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

// Runs f and prefixes any library error with the stage name, keeping its kind.
template <typename F>
auto Stage(const char *name, F &&f)
{
  try
  {
    return f();
  }
  catch (const Error &e)
  {
    throw Error(e.kind(), std::string(name) + ": " + e.detail());
  }
}

void CheckKeys(const json &j, const char *where, std::initializer_list<const char *> allowed)
{
  if (!j.is_object())
  {
    ConfigError(std::string(where) + " must be an object");
  }
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto &item : j.items())
  {
    if (!keys.count(item.key()))
    {
      ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

json PointToJson(const Point &p, int dim)
{
  return dim == 1 ? json::array({p[0]}) : json::array({p[0], p[1]});
}

Point PointFromJson(const json &j, int dim)
{
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
  {
    ConfigError("points must have " + std::to_string(dim) + " coordinate(s)");
  }
  Point p{j[0].get<double>(), 0.0};
  if (dim == 2)
  {
    p[1] = j[1].get<double>();
  }
  return p;
}

const char *ToString(SourceKind k) { return k == SourceKind::Point ? "point" : "gaussian"; }

const char *ToString(Placement p)
{
  switch (p)
  {
    case Placement::Perimeter:
      return "perimeter";
    case Placement::Top:
      return "top";
    case Placement::Random:
      return "random";
    case Placement::Explicit:
      return "explicit";
  }
  return "explicit";
}

Placement PlacementFromString(const std::string &s)
{
  for (Placement p : {Placement::Perimeter, Placement::Top, Placement::Random, Placement::Explicit})
  {
    if (s == ToString(p))
    {
      return p;
    }
  }
  ConfigError("unknown source placement '" + s + "'");
}

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double Unit(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

json ComplexPair(Complex z) { return json::array({z.real(), z.imag()}); }

double WeightedNorm(const Grid &grid, const MatrixXcd &a)
{
  return std::sqrt(std::max(0.0, Gram(grid, a, a).trace().real()));
}

}  // namespace

Grid GridSpec::Build() const
{
  return dim == 1 ? Grid::Line(extent[0], nodes[0])
                  : Grid::Rectangle(extent[0], extent[1], nodes[0], nodes[1]);
}

void ExperimentConfig::Validate() const
{
  try
  {
    if (grid.dim != 1 && grid.dim != 2)
    {
      ConfigError("grid dimension must be 1 or 2");
    }
    for (int a = 0; a < grid.dim; a++)
    {
      if (!(grid.extent[a] > 0.0) || grid.nodes[a] < 3)
      {
        ConfigError("grid extents must be positive with at least 3 nodes per axis");
      }
    }
    if (data_refine < 1)
    {
      ConfigError("data_refine must be at least 1");
    }
    const Grid g = grid.Build();
    for (const Bump &b : medium.bumps)
    {
      if (!(b.width > 0.0) || !std::isfinite(b.amplitude))
      {
        ConfigError("bump widths must be positive and amplitudes finite");
      }
      if (!g.Contains(b.center))
      {
        ConfigError("bump centre lies outside the domain");
      }
    }
    if (sources.count < 1)
    {
      ConfigError("at least one source is required");
    }
    if (sources.kind == SourceKind::Gaussian && !(sources.width > 0.0))
    {
      ConfigError("gaussian source width must be positive");
    }
    SourcePositions(g, sources, seed);
    spectra.Validate();
    if (!(tsvd.threshold > 0.0 && tsvd.threshold < 1.0))
    {
      ConfigError("tsvd threshold must lie in (0, 1)");
    }
    if (tsvd.rank && *tsvd.rank < 1)
    {
      ConfigError("tsvd rank must be positive");
    }
    if (methods.empty())
    {
      ConfigError("no methods requested");
    }
  }
  catch (const Error &e)
  {
    if (e.kind() == ErrorKind::Config)
    {
      throw;
    }
    throw Error(ErrorKind::Config, e.detail());
  }
}

json ToJson(const ExperimentConfig &c)
{
  json j;
  j["version"] = ExperimentConfig::kVersion;
  j["name"] = c.name;
  const int dim = c.grid.dim;
  j["grid"] = dim == 1 ? json{{"extent", {c.grid.extent[0]}}, {"nodes", {c.grid.nodes[0]}}}
                       : json{{"extent", {c.grid.extent[0], c.grid.extent[1]}},
                              {"nodes", {c.grid.nodes[0], c.grid.nodes[1]}}};
  j["data_refine"] = c.data_refine;
  json bumps = json::array();
  for (const Bump &b : c.medium.bumps)
  {
    bumps.push_back(
      {{"center", PointToJson(b.center, dim)}, {"width", b.width}, {"amplitude", b.amplitude}});
  }
  j["medium"] = {{"bumps", bumps}};
  json src = {{"type", ToString(c.sources.kind)},
              {"placement", ToString(c.sources.placement)},
              {"count", c.sources.count}};
  if (c.sources.kind == SourceKind::Gaussian)
  {
    src["width"] = c.sources.width;
  }
  if (c.sources.placement == Placement::Explicit)
  {
    json pos = json::array();
    for (const Point &p : c.sources.positions)
    {
      pos.push_back(PointToJson(p, dim));
    }
    src["positions"] = pos;
  }
  j["sources"] = src;
  json values = json::array();
  for (const Complex z : c.spectra.points)
  {
    values.push_back(c.spectra.real() ? json(z.real()) : ComplexPair(z));
  }
  j["spectra"] = {{"mode", c.spectra.real() ? "real" : "complex"}, {"values", values}};
  j["shift"] = {{"residual_tol", c.shift.residual_tol}};
  j["rom"] = {{"mass_condition_floor", c.rom.mass_condition_floor}};
  j["lanczos"] = {{"breakdown_tol", c.lanczos.breakdown_tol}};
  json tsvd = {{"threshold", c.tsvd.threshold}, {"normalize_rows", c.tsvd.normalize_rows}};
  if (c.tsvd.rank)
  {
    tsvd["rank"] = *c.tsvd.rank;
  }
  j["tsvd"] = tsvd;
  json methods = json::array();
  for (Method m : c.methods)
  {
    methods.push_back(ToString(m));
  }
  j["methods"] = methods;
  j["output"] = c.output;
  j["seed"] = c.seed;
  return j;
}

ExperimentConfig ConfigFromJson(const json &j)
{
  ExperimentConfig c;
  try
  {
    CheckKeys(j, "config",
              {"version", "name", "grid", "data_refine", "medium", "sources", "spectra", "shift",
               "rom", "lanczos", "tsvd", "methods", "output", "seed"});
    if (j.at("version").get<int>() != ExperimentConfig::kVersion)
    {
      ConfigError("unsupported config version");
    }
    c.name = j.value("name", c.name);

    const json &g = j.at("grid");
    CheckKeys(g, "grid", {"extent", "nodes"});
    const auto extent = g.at("extent").get<std::vector<double>>();
    const auto nodes = g.at("nodes").get<std::vector<int>>();
    if (extent.size() != nodes.size() || extent.empty() || extent.size() > 2)
    {
      ConfigError("grid extent and nodes must both have 1 or 2 entries");
    }
    c.grid.dim = static_cast<int>(extent.size());
    for (int a = 0; a < c.grid.dim; a++)
    {
      c.grid.extent[a] = extent[a];
      c.grid.nodes[a] = nodes[a];
    }
    if (c.grid.dim == 1)
    {
      c.grid.extent[1] = 0.0;
      c.grid.nodes[1] = 1;
    }
    const int dim = c.grid.dim;
    c.data_refine = j.value("data_refine", c.data_refine);

    if (j.contains("medium"))
    {
      CheckKeys(j["medium"], "medium", {"bumps"});
      for (const json &b : j["medium"].value("bumps", json::array()))
      {
        CheckKeys(b, "bump", {"center", "width", "amplitude"});
        c.medium.bumps.push_back(
          {PointFromJson(b.at("center"), dim), b.at("width").get<double>(),
           b.at("amplitude").get<double>()});
      }
    }

    const json &s = j.at("sources");
    CheckKeys(s, "sources", {"type", "width", "placement", "count", "positions"});
    const std::string type = s.value("type", "point");
    if (type != "point" && type != "gaussian")
    {
      ConfigError("source type must be 'point' or 'gaussian'");
    }
    c.sources.kind = type == "point" ? SourceKind::Point : SourceKind::Gaussian;
    c.sources.width = s.value("width", c.sources.width);
    c.sources.placement = PlacementFromString(s.value("placement", "perimeter"));
    if (s.contains("positions"))
    {
      for (const json &p : s["positions"])
      {
        c.sources.positions.push_back(PointFromJson(p, dim));
      }
    }
    c.sources.count = s.value("count", static_cast<int>(c.sources.positions.size()));

    const json &sp = j.at("spectra");
    CheckKeys(sp, "spectra", {"mode", "values"});
    const std::string mode = sp.at("mode").get<std::string>();
    if (mode == "real")
    {
      c.spectra = SpectralSet::Real(sp.at("values").get<std::vector<double>>());
    }
    else if (mode == "complex")
    {
      std::vector<Complex> z;
      for (const json &v : sp.at("values"))
      {
        const auto pair = v.get<std::vector<double>>();
        if (pair.size() != 2)
        {
          ConfigError("complex spectral values are [re, im] pairs");
        }
        z.emplace_back(pair[0], pair[1]);
      }
      c.spectra = SpectralSet::FromComplex(z);
    }
    else
    {
      ConfigError("spectra mode must be 'real' or 'complex'");
    }

    if (j.contains("shift"))
    {
      CheckKeys(j["shift"], "shift", {"residual_tol"});
      c.shift.residual_tol = j["shift"].value("residual_tol", c.shift.residual_tol);
    }
    if (j.contains("rom"))
    {
      CheckKeys(j["rom"], "rom", {"mass_condition_floor"});
      c.rom.mass_condition_floor = j["rom"].value("mass_condition_floor", c.rom.mass_condition_floor);
    }
    if (j.contains("lanczos"))
    {
      CheckKeys(j["lanczos"], "lanczos", {"breakdown_tol"});
      c.lanczos.breakdown_tol = j["lanczos"].value("breakdown_tol", c.lanczos.breakdown_tol);
    }
    if (j.contains("tsvd"))
    {
      const json &t = j["tsvd"];
      CheckKeys(t, "tsvd", {"threshold", "rank", "normalize_rows"});
      c.tsvd.threshold = t.value("threshold", c.tsvd.threshold);
      c.tsvd.normalize_rows = t.value("normalize_rows", c.tsvd.normalize_rows);
      if (t.contains("rank") && !t["rank"].is_null())
      {
        c.tsvd.rank = t["rank"].get<int>();
      }
    }
    if (j.contains("methods"))
    {
      c.methods.clear();
      for (const json &m : j["methods"])
      {
        c.methods.push_back(MethodFromString(m.get<std::string>()));
      }
    }
    c.output = j.value("output", c.name);
    c.seed = j.value("seed", c.seed);
  }
  catch (const json::exception &e)
  {
    ConfigError(e.what());
  }
  catch (const Error &e)
  {
    if (e.kind() != ErrorKind::Config)
    {
      ConfigError(e.detail());
    }
    throw;
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path &path)
{
  json j;
  try
  {
    j = ReadJsonFile(path);
  }
  catch (const Error &e)
  {
    ConfigError(e.detail());
  }
  return ConfigFromJson(j);
}

GridFunction MakeMedium(const Grid &grid, const MediumSpec &spec)
{
  VectorXd q = VectorXd::Zero(grid.size());
  for (const Bump &b : spec.bumps)
  {
    Require(b.width > 0.0, "bump width must be positive");
    Require(grid.Contains(b.center), "bump centre lies outside the domain");
    for (Index k = 0; k < grid.size(); k++)
    {
      const Point x = grid.coords(k);
      const double dx = x[0] - b.center[0];
      const double dy = grid.dim() == 2 ? x[1] - b.center[1] : 0.0;
      q(k) += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.width * b.width));
    }
  }
  return GridFunction::Real(grid, q);
}

std::vector<Point> SourcePositions(const Grid &grid, const SourceSpec &spec, std::uint64_t seed)
{
  const int k = spec.count;
  const double lx = grid.extent(0);
  const double ly = grid.dim() == 2 ? grid.extent(1) : 0.0;
  std::vector<Point> out;
  switch (spec.placement)
  {
    case Placement::Explicit:
      Require(static_cast<int>(spec.positions.size()) == k,
              "explicit source positions do not match the source count");
      out = spec.positions;
      break;
    case Placement::Perimeter:
      if (grid.dim() == 1)
      {
        Require(k == 1 || k == 2, "a line has two ends: perimeter placement needs K <= 2");
        out.push_back({0.0, 0.0});
        if (k == 2)
        {
          out.push_back({lx, 0.0});
        }
        break;
      }
      Require(k % 4 == 0, "perimeter placement needs K divisible by 4");
      for (int i = 1; i <= k / 4; i++)
      {
        const double t = static_cast<double>(i) / (k / 4 + 1);
        out.push_back({t * lx, 0.0});
        out.push_back({t * lx, ly});
        out.push_back({0.0, t * ly});
        out.push_back({lx, t * ly});
      }
      break;
    case Placement::Top:
      Require(grid.dim() == 2, "top placement needs a 2D grid");
      for (int i = 0; i < k; i++)
      {
        out.push_back({(i + 0.5) * lx / k, ly});
      }
      break;
    case Placement::Random:
    {
      std::mt19937_64 rng(seed);
      for (int i = 0; i < k; i++)
      {
        if (grid.dim() == 1)
        {
          out.push_back({Unit(rng) < 0.5 ? 0.0 : lx, 0.0});
          continue;
        }
        // Arc length along the boundary, counter-clockwise from the origin.
        double s = Unit(rng) * 2.0 * (lx + ly);
        if (s < lx)
        {
          out.push_back({s, 0.0});
        }
        else if ((s -= lx) < ly)
        {
          out.push_back({lx, s});
        }
        else if ((s -= ly) < lx)
        {
          out.push_back({lx - s, ly});
        }
        else
        {
          out.push_back({0.0, ly - (s - lx)});
        }
      }
      break;
    }
  }
  for (const Point &p : out)
  {
    Require(grid.Contains(p), "source position lies outside the domain");
  }
  return out;
}

SourceSet BuildSources(const Grid &grid, const SourceSpec &spec, std::uint64_t seed)
{
  const std::vector<Point> pos = SourcePositions(grid, spec, seed);
  return spec.kind == SourceKind::Point ? PointSources(grid, pos)
                                        : GaussianSources(grid, pos, spec.width);
}

TransferData GenerateData(const ExperimentConfig &config)
{
  const Grid fine = config.grid.Build().Refined(config.data_refine);
  const GridFunction q = MakeMedium(fine, config.medium);
  const DiscreteOperator op = BuildOperator(fine, q);
  const SourceSet src = BuildSources(fine, config.sources, config.seed);
  return SimulateTransferData(op, src, config.spectra, config.shift);
}

ErrorRecord Metrics(const Grid &grid, const VectorXd &q_hat, const VectorXd &q_true)
{
  Require(q_hat.size() == grid.size() && q_true.size() == grid.size(),
          "metrics need fields on the same grid");
  ErrorRecord e;
  const VectorXd diff = q_hat - q_true;
  const double truth = Norm(grid, q_true);
  e.max_abs = MaxAbs(diff);
  if (truth == 0.0)
  {
    e.zero_truth = true;
    e.relative_l2 = Norm(grid, diff);
    e.support_l2 = e.relative_l2;
    return e;
  }
  e.relative_l2 = Norm(grid, diff) / truth;
  const double cut = 0.1 * MaxAbs(q_true);
  const VectorXd mask = (q_true.array().abs() >= cut).cast<double>();
  e.support_l2 = Norm(grid, VectorXd(diff.cwiseProduct(mask))) /
                 Norm(grid, VectorXd(q_true.cwiseProduct(mask)));
  return e;
}

InversionRun InvertData(const ExperimentConfig &config, const TransferData &data,
                        const std::optional<GridFunction> &q_true)
{
  InversionRun run;
  auto t0 = std::chrono::steady_clock::now();
  const Grid grid = config.grid.Build();
  Stage("input",
        [&]
        {
          data.Validate();
          Require(data.spectra.mode == config.spectra.mode &&
                    data.spectra.points == config.spectra.points,
                  "transfer data spectral points differ from the config");
          Require(data.K() == config.sources.count, "transfer data source count differs from the config");
          return 0;
        });
  run.kit = Stage("background",
                  [&]
                  {
                    return BuildBackground(grid, BuildSources(grid, config.sources, config.seed),
                                           config.spectra, config.shift, config.rom,
                                           config.lanczos);
                  });
  run.seconds["background"] = Seconds(t0);
  t0 = std::chrono::steady_clock::now();
  run.rom = Stage("romgen", [&] { return BuildRom(data, config.rom); });
  run.seconds["romgen"] = Seconds(t0);
  t0 = std::chrono::steady_clock::now();
  run.fact = Stage("lanczos", [&] { return Lanczos(run.rom, config.lanczos); });
  run.seconds["lanczos"] = Seconds(t0);
  if (run.fact.steps != run.kit.fact.steps)
  {
    throw Error(ErrorKind::RankDeficientBlock,
                "lanczos: perturbed recurrence broke down at step " + std::to_string(run.fact.steps));
  }

  for (Method m : config.methods)
  {
    t0 = std::chrono::steady_clock::now();
    MethodOutcome out;
    out.result = Stage(ToString(m),
                       [&]
                       {
                         switch (m)
                         {
                           case Method::Lsl:
                             return LslSolve(run.kit, run.fact, data, run.kit.data, config.tsvd);
                           case Method::Born:
                             return BornSolve(run.kit, data, run.kit.data, config.tsvd);
                           case Method::Cheated:
                             if (!q_true)
                             {
                               ConfigError("CHEATED needs the true medium");
                             }
                             return CheatedSolve(run.kit, *q_true, data, run.kit.data, config.tsvd);
                           case Method::BackProjection:
                             return BackProjection(run.fact, run.kit);
                         }
                         ConfigError("unknown method");
                       });
    out.seconds = Seconds(t0);
    if (q_true)
    {
      out.error = Metrics(grid, out.result.q, q_true->RealValues());
    }
    run.outcomes.push_back(std::move(out));
  }
  return run;
}

std::vector<ConjectureEntry> ConjectureDiagnostics(const BackgroundKit &kit,
                                                   const InternalSolutionSet &data_driven,
                                                   const InternalSolutionSet &truth)
{
  Require(data_driven.grid == kit.grid && truth.grid == kit.grid,
          "diagnostics need every field on the background grid");
  std::vector<ConjectureEntry> out;
  const int k = kit.K();
  for (int j = 0; j < kit.m(); j++)
  {
    ConjectureEntry e;
    e.lambda = kit.spectra.points[j];
    const MatrixXcd u = truth.Block(j);
    e.internal_error = WeightedNorm(kit.grid, data_driven.Block(j) - u);
    e.scattered = WeightedNorm(kit.grid, u - kit.snapshots.middleCols(j * k, k));
    e.ratio = e.scattered > 0.0 ? e.internal_error / e.scattered : 0.0;
    out.push_back(e);
  }
  return out;
}

const MethodOutcome *Report::Find(Method m) const
{
  for (const MethodOutcome &o : methods)
  {
    if (o.result.method == m)
    {
      return &o;
    }
  }
  return nullptr;
}

namespace
{

// Conjecture and identity diagnostics, which need the true medium on the inversion grid.
void FillDiagnostics(const ExperimentConfig &config, const InversionRun &run,
                     const TransferData &data, const GridFunction &q, Report &report)
{
  const auto t0 = std::chrono::steady_clock::now();
  Stage("diagnostics",
        [&]
        {
          const InternalSolutionSet driven = DataDrivenInternalSet(run.kit, run.fact);
          const InternalSolutionSet truth =
            CheatedInternal(run.kit.grid, q, run.kit.sources, config.spectra, config.shift);
          report.conjecture = ConjectureDiagnostics(run.kit, driven, truth);
          report.identity = VerifyRomIdentity(run.fact, run.kit, data, run.kit.data, truth, q);
          return 0;
        });
  const VectorXd &ev = run.rom.mass_eigenvalues;
  report.mass_ratio = ev.size() ? ev(0) / ev(ev.size() - 1) : 0.0;
  report.lanczos_steps = run.fact.steps;
  report.seconds["diagnostics"] = Seconds(t0);
}

}  // namespace

ExperimentRun RunExperiment(const ExperimentConfig &config)
{
  config.Validate();
  ExperimentRun run;
  run.config = config;
  auto t0 = std::chrono::steady_clock::now();
  run.data = Stage("forward", [&] { return GenerateData(config); });
  const double forward_seconds = Seconds(t0);
  run.q_true = MakeMedium(config.grid.Build(), config.medium);
  run.inversion = InvertData(config, run.data, run.q_true);

  Report &r = run.report;
  r.name = config.name;
  r.methods = run.inversion.outcomes;
  r.seconds = run.inversion.seconds;
  r.seconds["forward"] = forward_seconds;
  FillDiagnostics(config, run.inversion, run.data, run.q_true, r);
  return run;
}

Report Diagnose(const ExperimentConfig &config)
{
  ExperimentConfig c = config;
  c.methods = {Method::BackProjection};
  c.Validate();
  const TransferData data = Stage("forward", [&] { return GenerateData(c); });
  const GridFunction q = MakeMedium(c.grid.Build(), c.medium);
  const InversionRun inv = InvertData(c, data, q);
  Report r;
  r.name = c.name;
  r.seconds = inv.seconds;
  FillDiagnostics(c, inv, data, q, r);
  return r;
}

json ToJson(const ErrorRecord &e)
{
  return {{"relative_l2", e.relative_l2},
          {"max_abs", e.max_abs},
          {"support_l2", e.support_l2},
          {"zero_truth", e.zero_truth}};
}

json ToJson(const InversionResult &r, const std::optional<ErrorRecord> &e)
{
  json j = {{"method", ToString(r.method)},
            {"rank", r.rank},
            {"threshold", r.threshold},
            {"residual", r.residual},
            {"flagged_nodes", r.flagged_nodes},
            {"singular_values", std::vector<double>(r.singular_values.data(),
                                                    r.singular_values.data() +
                                                      r.singular_values.size())}};
  if (e)
  {
    j["error"] = ToJson(*e);
  }
  return j;
}

json ToJson(const Report &report, bool include_timing)
{
  json j;
  j["format"] = "lslinv.report";
  j["version"] = 1;
  j["name"] = report.name;
  json methods = json::array();
  for (const MethodOutcome &o : report.methods)
  {
    json m = ToJson(o.result, o.error);
    if (include_timing)
    {
      m["seconds"] = o.seconds;
    }
    methods.push_back(m);
  }
  j["methods"] = methods;
  json conj = json::array();
  for (const ConjectureEntry &e : report.conjecture)
  {
    conj.push_back({{"lambda", ComplexPair(e.lambda)},
                    {"ratio", e.ratio},
                    {"internal_error", e.internal_error},
                    {"scattered", e.scattered}});
  }
  j["conjecture"] = conj;
  json entries = json::array();
  for (const IdentityEntry &e : report.identity.entries)
  {
    entries.push_back({{"lambda", ComplexPair(e.lambda)},
                       {"dev_rom_data", e.dev_rom_data},
                       {"dev_integral_data", e.dev_integral_data},
                       {"dev_rom_integral", e.dev_rom_integral},
                       {"resolvent_residual", e.resolvent_residual},
                       {"romint_residual", e.romint_residual}});
  }
  j["identity"] = {{"entries", entries},
                   {"max_deviation", report.identity.max_deviation},
                   {"max_resolvent_residual", report.identity.max_resolvent_residual},
                   {"max_romint_residual", report.identity.max_romint_residual},
                   {"normalization_gap", report.identity.normalization_gap}};
  j["mass_ratio"] = report.mass_ratio;
  j["lanczos_steps"] = report.lanczos_steps;
  if (include_timing)
  {
    j["seconds"] = report.seconds;
  }
  return j;
}

}  // namespace lslinv
