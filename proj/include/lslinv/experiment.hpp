#ifndef LSLINV_EXPERIMENT_HPP
#define LSLINV_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lslinv/inversion.hpp"

namespace lslinv
{

// Uniform grid of dimension 1 (extent[1], nodes[1] unused) or 2.
struct GridSpec
{
  int dim = 2;
  std::array<double, 2> extent{1.0, 1.0};
  std::array<int, 2> nodes{41, 41};

  Grid Build() const;
};

// q(x) = sum_k a_k exp(-|x - c_k|^2 / (2 sigma_k^2)).
struct Bump
{
  Point center{0.0, 0.0};
  double width = 0.1;
  double amplitude = 0.0;
};

struct MediumSpec
{
  std::vector<Bump> bumps;
};

enum class SourceKind
{
  Point,
  Gaussian,
};

enum class Placement
{
  // K/4 sources evenly on each side of a rectangle; x = 0 then x = L on a line.
  Perimeter,
  // K sources evenly on the side y = Ly.
  Top,
  // Uniformly random boundary points drawn from the config seed.
  Random,
  Explicit,
};

struct SourceSpec
{
  SourceKind kind = SourceKind::Point;
  double width = 0.05;
  Placement placement = Placement::Perimeter;
  int count = 1;
  std::vector<Point> positions;
};

//
// Everything that determines an experiment. Serialized as JSON with "version": 1; see
// configs/ and the README for the schema.
//
struct ExperimentConfig
{
  static constexpr int kVersion = 1;

  std::string name = "experiment";
  GridSpec grid;
  // Data are simulated on grid.Build().Refined(data_refine).
  int data_refine = 1;
  MediumSpec medium;
  SourceSpec sources;
  SpectralSet spectra;
  ShiftOptions shift;
  RomOptions rom;
  LanczosOptions lanczos;
  RankPolicy tsvd;
  std::vector<Method> methods{Method::Lsl, Method::Born, Method::Cheated};
  std::string output = "out";
  std::uint64_t seed = 0;

  // Throws Error(Config) on anything a later stage would reject for shape reasons.
  void Validate() const;
};

nlohmann::json ToJson(const ExperimentConfig &config);
ExperimentConfig ConfigFromJson(const nlohmann::json &j);
ExperimentConfig LoadConfig(const std::filesystem::path &path);

GridFunction MakeMedium(const Grid &grid, const MediumSpec &spec);

std::vector<Point> SourcePositions(const Grid &grid, const SourceSpec &spec, std::uint64_t seed);
SourceSet BuildSources(const Grid &grid, const SourceSpec &spec, std::uint64_t seed);

// Forward data for the configured medium on the data grid.
TransferData GenerateData(const ExperimentConfig &config);

struct ErrorRecord
{
  // ||q_hat - q||_w / ||q||_w, or the absolute norm when q = 0 (zero_truth set).
  double relative_l2 = 0.0;
  double max_abs = 0.0;
  // Relative error restricted to nodes where |q| >= 0.1 max |q|.
  double support_l2 = 0.0;
  bool zero_truth = false;
};

ErrorRecord Metrics(const Grid &grid, const VectorXd &q_hat, const VectorXd &q_true);

struct MethodOutcome
{
  InversionResult result;
  std::optional<ErrorRecord> error;
  double seconds = 0.0;
};

//
// Inversion from transfer data alone. q_true is only consulted by CHEATED; requesting
// CHEATED without it is a config error.
//
struct InversionRun
{
  BackgroundKit kit;
  Rom rom;
  LanczosFactorization fact;
  std::vector<MethodOutcome> outcomes;
  std::map<std::string, double> seconds;
};

InversionRun InvertData(const ExperimentConfig &config, const TransferData &data,
                        const std::optional<GridFunction> &q_true = std::nullopt);

// ||u_data - u|| / ||u - u_0|| per lambda_j with u the true internal solution.
struct ConjectureEntry
{
  Complex lambda;
  double ratio = 0.0;
  double internal_error = 0.0;
  double scattered = 0.0;
};

std::vector<ConjectureEntry> ConjectureDiagnostics(const BackgroundKit &kit,
                                                   const InternalSolutionSet &data_driven,
                                                   const InternalSolutionSet &truth);

struct Report
{
  std::string name;
  std::vector<MethodOutcome> methods;
  std::vector<ConjectureEntry> conjecture;
  IdentityReport identity;
  // lambda_min / lambda_max of the data ROM mass matrix.
  double mass_ratio = 0.0;
  int lanczos_steps = 0;
  std::map<std::string, double> seconds;

  const MethodOutcome *Find(Method m) const;
};

struct ExperimentRun
{
  ExperimentConfig config;
  GridFunction q_true;
  TransferData data;
  InversionRun inversion;
  Report report;
};

// Full pipeline: data generation, ROM, Lanczos, background kit, internal solutions, every
// configured method and the diagnostics. Errors carry the failing stage in their message.
ExperimentRun RunExperiment(const ExperimentConfig &config);

// Identity and internal-solution diagnostics only (no inversions).
Report Diagnose(const ExperimentConfig &config);

// Timing fields are omitted when include_timing is false so reports can be compared.
nlohmann::json ToJson(const Report &report, bool include_timing = true);
nlohmann::json ToJson(const ErrorRecord &e);
nlohmann::json ToJson(const InversionResult &r, const std::optional<ErrorRecord> &e);

}  // namespace lslinv

#endif  // LSLINV_EXPERIMENT_HPP
