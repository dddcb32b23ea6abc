#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "../support/cases.hpp"

namespace lslinv
{
namespace
{

using nlohmann::json;

// Golden files are rewritten instead of compared when LSLINV_UPDATE_GOLDEN is set.
bool UpdateGolden() { return std::getenv("LSLINV_UPDATE_GOLDEN") != nullptr; }

std::string GoldenPath(const std::string &name) { return std::string(LSLINV_GOLDEN_DIR) + "/" + name; }

TEST(Config, JsonRoundTrip)
{
  for (const char *name : {"experiment1", "experiment2", "experiment3", "benchmark1d"})
  {
    const ExperimentConfig c = LoadConfig(testing::ConfigPath(name));
    const json j = ToJson(c);
    EXPECT_EQ(ToJson(ConfigFromJson(j)), j) << name;
  }
}

TEST(Config, ComplexSpectraRoundTrip)
{
  ExperimentConfig c = LoadConfig(testing::ConfigPath("benchmark1d"));
  c.spectra = SpectralSet::FromComplex(testing::ComplexArc(1.0, 64.0, 3));
  const ExperimentConfig back = ConfigFromJson(ToJson(c));
  EXPECT_EQ(back.spectra.mode, c.spectra.mode);
  EXPECT_EQ(back.spectra.points, c.spectra.points);
}

ErrorKind KindOf(const json &j)
{
  try
  {
    ConfigFromJson(j);
  }
  catch (const Error &e)
  {
    return e.kind();
  }
  ADD_FAILURE() << "config was accepted";
  return ErrorKind::InvalidArgument;
}

TEST(Config, RejectsUnknownKeysAndBadValues)
{
  const json base = ToJson(LoadConfig(testing::ConfigPath("experiment1")));
  json j = base;
  j["tsvd"]["treshold"] = 0.1;
  EXPECT_EQ(KindOf(j), ErrorKind::Config);
  j = base;
  j["medium"]["bumps"][0]["center"] = {1.5, 0.5};
  EXPECT_EQ(KindOf(j), ErrorKind::Config);
  j = base;
  j["spectra"]["values"] = {1.0, 1.0};
  EXPECT_EQ(KindOf(j), ErrorKind::Config);
  j = base;
  j["tsvd"]["threshold"] = 0.0;
  EXPECT_EQ(KindOf(j), ErrorKind::Config);
  j = base;
  j["version"] = 2;
  EXPECT_EQ(KindOf(j), ErrorKind::Config);
  j = base;
  j["grid"]["nodes"] = "many";
  EXPECT_EQ(KindOf(j), ErrorKind::Config);
}

TEST(Medium, ZeroAmplitudeGivesZeroField)
{
  const Grid g = Grid::Rectangle(1.0, 1.0, 21, 21);
  const MediumSpec spec{{{{0.5, 0.5}, 0.1, 0.0}}};
  EXPECT_EQ(MakeMedium(g, spec).values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(MakeMedium(g, spec).IsReal());
}

TEST(Medium, PeakSitsAtTheBumpCentre)
{
  const Grid g = Grid::Rectangle(1.0, 1.0, 21, 21);
  const MediumSpec spec{{{{0.3, 0.6}, 0.1, 2.5}}};
  const VectorXd q = MakeMedium(g, spec).RealValues();
  Index at = 0;
  q.maxCoeff(&at);
  EXPECT_EQ(at, g.NearestNode({0.3, 0.6}));
  EXPECT_DOUBLE_EQ(q(at), 2.5);
}

TEST(Medium, MatchesGoldenGrid)
{
  const ExperimentConfig c = LoadConfig(testing::ConfigPath("experiment1"));
  const VectorXd q = MakeMedium(c.grid.Build(), c.medium).RealValues();
  std::ostringstream os;
  os.precision(17);
  for (Index k = 0; k < q.size(); k++)
  {
    os << q(k) << '\n';
  }
  const std::string path = GoldenPath("experiment1_medium.txt");
  if (UpdateGolden())
  {
    std::ofstream(path) << os.str();
    GTEST_SKIP() << "golden rewritten";
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << path;
  std::stringstream expect;
  expect << in.rdbuf();
  EXPECT_EQ(os.str(), expect.str());
}

TEST(Sources, PerimeterPlacement)
{
  const Grid g = Grid::Rectangle(1.0, 1.0, 41, 41);
  SourceSpec s;
  s.count = 8;
  const std::vector<Point> p = SourcePositions(g, s, 0);
  ASSERT_EQ(p.size(), 8u);
  int bottom = 0, top = 0, left = 0, right = 0;
  for (const Point &x : p)
  {
    bottom += x[1] == 0.0;
    top += x[1] == 1.0;
    left += x[0] == 0.0;
    right += x[0] == 1.0;
  }
  EXPECT_EQ(bottom, 2);
  EXPECT_EQ(top, 2);
  EXPECT_EQ(left, 2);
  EXPECT_EQ(right, 2);
}

TEST(Sources, RandomPlacementIsSeededAndOnTheBoundary)
{
  const Grid g = Grid::Rectangle(2.0, 1.0, 41, 21);
  SourceSpec s;
  s.count = 5;
  s.placement = Placement::Random;
  const std::vector<Point> a = SourcePositions(g, s, 7);
  EXPECT_EQ(a, SourcePositions(g, s, 7));
  EXPECT_NE(a, SourcePositions(g, s, 8));
  for (const Point &x : a)
  {
    const bool edge = x[0] == 0.0 || x[0] == 2.0 || x[1] == 0.0 || x[1] == 1.0;
    EXPECT_TRUE(edge);
  }
}

TEST(Metrics, IdentityAndScaling)
{
  const Grid g = Grid::Rectangle(1.0, 1.0, 21, 21);
  const VectorXd q = MakeMedium(g, {{{{0.5, 0.5}, 0.2, 1.0}}}).RealValues();
  const ErrorRecord same = Metrics(g, q, q);
  EXPECT_EQ(same.relative_l2, 0.0);
  EXPECT_EQ(same.max_abs, 0.0);
  EXPECT_NEAR(Metrics(g, 2.0 * q, q).relative_l2, 1.0, 1e-15);
  EXPECT_NEAR(Metrics(g, 2.0 * q, q).support_l2, 1.0, 1e-15);
  const ErrorRecord zero = Metrics(g, q, VectorXd::Zero(q.size()));
  EXPECT_TRUE(zero.zero_truth);
  EXPECT_NEAR(zero.relative_l2, Norm(g, q), 1e-15);
}

TEST(Metrics, NormApproximatesTheContinuousIntegral)
{
  // Gaussian of width s centred in a large square: int q^2 = pi s^2 a^2 up to truncation.
  const Grid g = Grid::Rectangle(1.0, 1.0, 201, 201);
  const double s = 0.05;
  const VectorXd q = MakeMedium(g, {{{{0.5, 0.5}, s, 3.0}}}).RealValues();
  const double exact = std::sqrt(M_PI * s * s * 9.0);
  const ErrorRecord e = Metrics(g, VectorXd::Zero(q.size()), q);
  EXPECT_NEAR(e.relative_l2, 1.0, 1e-15);
  EXPECT_NEAR(Norm(g, q), exact, 1e-6 * exact);
}

TEST(Pipeline, ReportIsDeterministic)
{
  ExperimentConfig c = LoadConfig(testing::ConfigPath("benchmark1d"));
  const json a = ToJson(RunExperiment(c).report, false);
  const json b = ToJson(RunExperiment(c).report, false);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_FALSE(a.contains("seconds"));
}

TEST(Pipeline, CheatedNeedsTheTrueMedium)
{
  ExperimentConfig c = LoadConfig(testing::ConfigPath("benchmark1d"));
  const TransferData data = GenerateData(c);
  try
  {
    InvertData(c, data);
    FAIL() << "expected a config error";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
  c.methods = {Method::Lsl};
  EXPECT_EQ(InvertData(c, data).outcomes.size(), 1u);
}

TEST(Pipeline, ErrorsNameTheFailingStage)
{
  ExperimentConfig c = LoadConfig(testing::ConfigPath("experiment3"));
  c.spectra = SpectralSet::Real(testing::Geometric(1.0, 128.0, 6));
  try
  {
    RunExperiment(c);
    FAIL() << "expected IllConditionedMass";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::IllConditionedMass);
    EXPECT_NE(std::string(e.what()).find("background"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace lslinv
