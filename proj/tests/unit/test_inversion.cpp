#include <gtest/gtest.h>

#include "../support/cases.hpp"

namespace lslinv
{
namespace
{

using testing::Geometric;
using testing::RelDiff;
using testing::TwoBumpLine;

struct LineSetup
{
  Grid grid = Grid::Line(1.0, 401);
  SourceSet src = PointSources(grid, {{0.0, 0.0}});
  SpectralSet spectra;
  BackgroundKit kit;

  explicit LineSetup(int m = 6) : spectra(SpectralSet::Real(Geometric(1.0, 64.0, m)))
  {
    kit = BuildBackground(grid, src, spectra);
  }
  TransferData Data(double amplitude) const
  {
    const DiscreteOperator op = BuildOperator(grid, testing::Medium(grid, TwoBumpLine(amplitude)));
    return SimulateTransferData(op, src, spectra);
  }
};

TEST(Assemble, SisoRealModeHasValueAndDerivativeRows)
{
  LineSetup s;
  const InternalSolutionSet u0 = BackgroundInternal(s.kit);
  const LslSystem sys = Assemble(u0, u0, s.Data(10.0), s.kit.data);
  EXPECT_EQ(sys.matrix.rows(), 12);
  EXPECT_EQ(sys.matrix.cols(), s.grid.size());
  int derivative = 0;
  for (const RowInfo &r : sys.rows)
  {
    derivative += r.kind == RowKind::Derivative;
  }
  EXPECT_EQ(derivative, 6);
}

TEST(Assemble, MimoKeepsUpperTrianglePairs)
{
  const Grid g = Grid::Rectangle(1.0, 1.0, 21, 21);
  const SourceSet src = PointSources(g, {{0.5, 0.0}, {0.5, 1.0}, {0.0, 0.5}});
  const SpectralSet sp = SpectralSet::Real({1.0, 8.0});
  const BackgroundKit kit = BuildBackground(g, src, sp);
  const InternalSolutionSet u0 = BackgroundInternal(kit);
  const LslSystem sys = Assemble(u0, u0, kit.data, kit.data);
  // 6 pairs r <= p, value and derivative rows, 2 frequencies.
  EXPECT_EQ(sys.matrix.rows(), 24);
  for (const RowInfo &r : sys.rows)
  {
    EXPECT_LE(r.r, r.p);
  }
}

TEST(Lsl, UnperturbedDataGiveZeroPotential)
{
  LineSetup s;
  const InversionResult r = LslSolve(s.kit, s.kit.fact, s.kit.data, s.kit.data, {});
  EXPECT_EQ(r.q.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(Tsvd, SingularValuesAndResidualsAreMonotone)
{
  LineSetup s;
  const InternalSolutionSet u0 = BackgroundInternal(s.kit);
  const LslSystem sys = Assemble(u0, u0, s.Data(10.0), s.kit.data);
  RankPolicy p;
  p.normalize_rows = false;
  double prev = std::numeric_limits<double>::infinity();
  VectorXd sv;
  for (int k = 1; k <= 12; k++)
  {
    p.rank = k;
    const InversionResult r = SolveTsvd(sys, p);
    EXPECT_LE(r.residual, prev * (1 + 1e-12));
    prev = r.residual;
    sv = r.singular_values;
  }
  for (Index i = 1; i < sv.size(); i++)
  {
    EXPECT_LE(sv(i), sv(i - 1));
  }
}

TEST(Tsvd, RecoversPotentialInRetainedSpan)
{
  LineSetup s;
  const InternalSolutionSet u0 = BackgroundInternal(s.kit);
  LslSystem sys = Assemble(u0, u0, s.Data(10.0), s.kit.data);
  Eigen::JacobiSVD<MatrixXd> svd(sys.matrix, Eigen::ComputeThinV);
  const int rank = 5;
  const VectorXd q = svd.matrixV().leftCols(rank) * VectorXd::LinSpaced(rank, 1.0, 2.0);
  sys.rhs = sys.matrix * q;
  RankPolicy p;
  p.rank = rank;
  p.normalize_rows = false;
  const InversionResult r = SolveTsvd(sys, p);
  EXPECT_LT((r.q - q).norm() / q.norm(), 1e-6);
  EXPECT_LT(r.residual, 1e-8);
}

TEST(Tsvd, ThresholdAboveOneTruncatesEverything)
{
  LineSetup s;
  const InternalSolutionSet u0 = BackgroundInternal(s.kit);
  const LslSystem sys = Assemble(u0, u0, s.Data(10.0), s.kit.data);
  RankPolicy p;
  p.threshold = 2.0;
  try
  {
    SolveTsvd(sys, p);
    FAIL() << "expected AllTruncated";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::AllTruncated);
  }
}

std::pair<double, double> LslAndBorn(const std::string &config)
{
  ExperimentConfig c = LoadConfig(testing::ConfigPath(config));
  c.methods = {Method::Lsl, Method::Born};
  const Report r = RunExperiment(c).report;
  return {r.Find(Method::Lsl)->error->relative_l2, r.Find(Method::Born)->error->relative_l2};
}

TEST(Born, WithinTwiceLslAtLowContrast)
{
  const auto [lsl, born] = LslAndBorn("experiment1");
  EXPECT_LE(born, 2.0 * lsl);
}

TEST(Born, AtLeastTwiceLslAtHighContrast)
{
  const auto [lsl, born] = LslAndBorn("experiment2");
  EXPECT_GE(born, 2.0 * lsl);
}

TEST(BackProjection, NormalizationMatchesDirectQuadrature)
{
  const Grid g = Grid::Rectangle(1.0, 1.0, 11, 11);
  const SourceSet src = PointSources(g, {{0.5, 0.0}, {0.0, 0.5}});
  const BackgroundKit kit = BuildBackground(g, src, SpectralSet::Real({1.0, 10.0}));
  const VectorXd den = PointSpreadNormalization(kit);
  const VectorXd &w = g.weights();
  for (Index x = 0; x < g.size(); x++)
  {
    double sum = 0.0;
    for (Index y = 0; y < g.size(); y++)
    {
      sum += w(y) * std::norm(kit.basis.row(x).dot(kit.basis.row(y)));
    }
    EXPECT_NEAR(den(x), sum, 1e-12 * std::max(1.0, sum));
  }
}

TEST(BackProjection, UnperturbedIsZero)
{
  LineSetup s(4);
  const InversionResult r = BackProjection(s.kit.fact, s.kit);
  EXPECT_EQ(r.q.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Identity, ExactAtZeroPerturbation)
{
  LineSetup s(4);
  const InternalSolutionSet u0 = BackgroundInternal(s.kit);
  const IdentityReport rep =
    VerifyRomIdentity(s.kit.fact, s.kit, s.kit.data, s.kit.data, u0, GridFunction::Zero(s.grid));
  EXPECT_EQ(rep.max_deviation, 0.0);
  EXPECT_EQ(rep.max_romint_residual, 0.0);
  EXPECT_EQ(rep.normalization_gap, 0.0);
}

TEST(Methods, NamesRoundTrip)
{
  for (Method m : {Method::Lsl, Method::Born, Method::Cheated, Method::BackProjection})
  {
    EXPECT_EQ(MethodFromString(ToString(m)), m);
  }
  EXPECT_EQ(MethodFromString("lsl"), Method::Lsl);
  EXPECT_THROW(MethodFromString("newton"), Error);
}

}  // namespace
}  // namespace lslinv
