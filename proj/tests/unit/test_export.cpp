#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "../support/cases.hpp"
#include "lslinv/export.hpp"
#include "lslinv/transfer_io.hpp"

namespace lslinv
{
namespace
{

namespace fs = std::filesystem;
using nlohmann::json;

fs::path Scratch(const std::string &name)
{
  const fs::path p = fs::temp_directory_path() / ("lslinv_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(FieldCsv, RoundTripIsExact)
{
  const fs::path dir = Scratch("csv");
  const Grid g = Grid::Rectangle(2.0, 1.0, 9, 5);
  const VectorXd v = VectorXd::LinSpaced(g.size(), -1.0 / 3.0, 7.0 / 3.0);
  WriteFieldCsv(dir / "f.csv", g, v);
  const FieldCsv f = ReadFieldCsv(dir / "f.csv");
  EXPECT_EQ(f.nx, 9);
  EXPECT_EQ(f.ny, 5);
  EXPECT_EQ(f.hx, g.spacing(0));
  EXPECT_EQ(f.hy, g.spacing(1));
  EXPECT_EQ(f.values, v);

  const Grid line = Grid::Line(1.0, 11);
  WriteFieldCsv(dir / "l.csv", line, VectorXd::Ones(11));
  const FieldCsv l = ReadFieldCsv(dir / "l.csv");
  EXPECT_EQ(l.ny, 1);
  EXPECT_EQ(l.hy, 0.0);
}

TEST(FieldCsv, MissingFileIsAnIoError)
{
  try
  {
    ReadFieldCsv("/nonexistent/q.csv");
    FAIL() << "expected an Io error";
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/q.csv"), std::string::npos);
  }
}

std::string ReadBytes(const fs::path &p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Pgm, ConstantFieldIsUniformAndRampIsScaled)
{
  const fs::path dir = Scratch("pgm");
  const Grid g = Grid::Rectangle(1.0, 1.0, 4, 3);
  const ImageScale s = WritePgm(dir / "c.pgm", g, VectorXd::Constant(g.size(), 2.0));
  EXPECT_EQ(s.min, 2.0);
  EXPECT_EQ(s.max, 2.0);
  const std::string c = ReadBytes(dir / "c.pgm");
  const std::string header = "P5\n4 3\n255\n";
  ASSERT_EQ(c.substr(0, header.size()), header);
  EXPECT_EQ(c.substr(header.size()), std::string(12, '\0'));

  VectorXd ramp(g.size());
  for (Index k = 0; k < g.size(); k++)
  {
    ramp(k) = static_cast<double>(k / 4);  // row index j, i.e. increasing in y
  }
  WritePgm(dir / "r.pgm", g, ramp);
  const std::string r = ReadBytes(dir / "r.pgm").substr(header.size());
  // First image row is the top of the domain.
  EXPECT_EQ(static_cast<unsigned char>(r[0]), 255);
  EXPECT_EQ(static_cast<unsigned char>(r[11]), 0);
  const json side = ReadJsonFile(dir / "r.json");
  EXPECT_EQ(side["image"]["max"], 2.0);
}

TEST(TransferIo, RoundTripIsExact)
{
  const fs::path dir = Scratch("transfer");
  ExperimentConfig c = LoadConfig(testing::ConfigPath("benchmark1d"));
  for (const SpectralSet &sp :
       {c.spectra, SpectralSet::FromComplex(testing::ComplexArc(1.0, 64.0, 4))})
  {
    c.spectra = sp;
    const TransferData d = GenerateData(c);
    SaveTransferData(d, dir / "t.json");
    const TransferData back = LoadTransferData(dir / "t.json");
    ASSERT_EQ(back.m(), d.m());
    EXPECT_EQ(back.spectra.points, d.spectra.points);
    for (int j = 0; j < d.m(); j++)
    {
      EXPECT_EQ(back.values[j], d.values[j]);
      if (sp.real())
      {
        EXPECT_EQ(back.derivatives[j], d.derivatives[j]);
      }
    }
  }
}

TEST(Export, WritesEveryArtifact)
{
  const fs::path dir = Scratch("export");
  ExperimentConfig c = LoadConfig(testing::ConfigPath("experiment1"));
  c.methods = {Method::Lsl, Method::BackProjection};
  ExportRun(RunExperiment(c), dir);
  for (const char *f : {"q_true.csv", "q_true.pgm", "q_lsl.csv", "q_lsl.json", "q_lsl.pgm",
                        "q_backprojection.csv", "transfer.json", "config.json", "report.json"})
  {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_EQ(ConfigFromJson(ReadJsonFile(dir / "config.json")).name, c.name);
}

TEST(Export, OutputRootEnvironmentVariable)
{
  ::setenv("LSLINV_OUTPUT_ROOT", "/tmp/lslinv_root", 1);
  EXPECT_EQ(OutputDirectory("run1"), fs::path("/tmp/lslinv_root/run1"));
  EXPECT_EQ(OutputDirectory("/abs/run"), fs::path("/abs/run"));
  ::unsetenv("LSLINV_OUTPUT_ROOT");
  EXPECT_EQ(OutputDirectory("run1"), fs::path("run1"));
}

// Numbers compare to 1e-6 relative (1e-12 absolute for roundoff-level entries), the rest exactly.
void ExpectClose(const json &a, const json &b, const std::string &where)
{
  if (a.is_number() && b.is_number())
  {
    const double x = a.get<double>();
    const double y = b.get<double>();
    EXPECT_LE(std::abs(x - y), 1e-6 * std::abs(y) + 1e-12) << where;
    return;
  }
  ASSERT_EQ(a.type(), b.type()) << where;
  if (a.is_object())
  {
    ASSERT_EQ(a.size(), b.size()) << where;
    for (const auto &[k, v] : b.items())
    {
      ASSERT_TRUE(a.contains(k)) << where << "/" << k;
      ExpectClose(a[k], v, where + "/" + k);
    }
  }
  else if (a.is_array())
  {
    ASSERT_EQ(a.size(), b.size()) << where;
    for (std::size_t i = 0; i < a.size(); i++)
    {
      ExpectClose(a[i], b[i], where + "/" + std::to_string(i));
    }
  }
  else
  {
    EXPECT_EQ(a, b) << where;
  }
}

TEST(Export, Experiment1ReportMatchesGolden)
{
  const ExperimentConfig c = LoadConfig(testing::ConfigPath("experiment1"));
  json report = ToJson(RunExperiment(c).report, false);
  // Singular values far below the truncation level carry roundoff only.
  for (json &m : report["methods"])
  {
    m.erase("singular_values");
  }
  const std::string path = std::string(LSLINV_GOLDEN_DIR) + "/experiment1_report.json";
  if (std::getenv("LSLINV_UPDATE_GOLDEN"))
  {
    WriteJsonFile(report, path);
    GTEST_SKIP() << "golden rewritten";
  }
  ExpectClose(report, ReadJsonFile(path), "");
}

}  // namespace
}  // namespace lslinv
