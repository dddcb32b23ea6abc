#include "lslinv/export.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lslinv/transfer_io.hpp"

namespace lslinv
{

namespace
{

std::ofstream OpenForWrite(const std::filesystem::path &path, std::ios::openmode mode = {})
{
  if (path.has_parent_path())
  {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, mode);
  if (!out)
  {
    throw Error(ErrorKind::Io, "cannot write " + path.string());
  }
  return out;
}

std::string Lower(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string Format(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void WriteFieldCsv(const std::filesystem::path &path, const Grid &grid, const VectorXd &values)
{
  Require(values.size() == grid.size(), "field does not match the grid");
  std::ofstream out = OpenForWrite(path);
  const int nx = grid.nodes(0);
  const int ny = grid.dim() == 2 ? grid.nodes(1) : 1;
  const double hy = grid.dim() == 2 ? grid.spacing(1) : 0.0;
  out << "nx,ny,hx,hy\n"
      << nx << ',' << ny << ',' << Format(grid.spacing(0)) << ',' << Format(hy) << '\n';
  for (int j = 0; j < ny; j++)
  {
    for (int i = 0; i < nx; i++)
    {
      out << (i ? "," : "") << Format(values(grid.index(i, j)));
    }
    out << '\n';
  }
  if (!out)
  {
    throw Error(ErrorKind::Io, "write failed for " + path.string());
  }
}

FieldCsv ReadFieldCsv(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  auto fail = [&](const std::string &what) -> Error
  { return Error(ErrorKind::Io, path.string() + ": " + what); };
  std::string line;
  if (!std::getline(in, line) || line != "nx,ny,hx,hy")
  {
    throw fail("missing 'nx,ny,hx,hy' header");
  }
  FieldCsv f;
  char c1 = 0, c2 = 0, c3 = 0;
  if (!std::getline(in, line))
  {
    throw fail("missing grid line");
  }
  std::istringstream head(line);
  if (!(head >> f.nx >> c1 >> f.ny >> c2 >> f.hx >> c3 >> f.hy) || c1 != ',' || c2 != ',' ||
      c3 != ',' || f.nx < 1 || f.ny < 1)
  {
    throw fail("malformed grid line");
  }
  f.values.resize(static_cast<Index>(f.nx) * f.ny);
  for (int j = 0; j < f.ny; j++)
  {
    if (!std::getline(in, line))
    {
      throw fail("expected " + std::to_string(f.ny) + " value rows");
    }
    std::istringstream row(line);
    std::string cell;
    int i = 0;
    while (std::getline(row, cell, ','))
    {
      if (i >= f.nx)
      {
        throw fail("row " + std::to_string(j) + " is too long");
      }
      char *end = nullptr;
      f.values(i + static_cast<Index>(f.nx) * j) = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
      {
        throw fail("non-numeric value in row " + std::to_string(j));
      }
      i++;
    }
    if (i != f.nx)
    {
      throw fail("row " + std::to_string(j) + " is too short");
    }
  }
  return f;
}

ImageScale WritePgm(const std::filesystem::path &path, const Grid &grid, const VectorXd &values)
{
  Require(grid.dim() == 2, "images are written for 2D fields only");
  Require(values.size() == grid.size(), "field does not match the grid");
  ImageScale scale{values.minCoeff(), values.maxCoeff()};
  const double span = scale.max - scale.min;
  const int nx = grid.nodes(0);
  const int ny = grid.nodes(1);
  std::ofstream out = OpenForWrite(path, std::ios::binary);
  out << "P5\n" << nx << ' ' << ny << "\n255\n";
  for (int j = ny - 1; j >= 0; j--)
  {
    for (int i = 0; i < nx; i++)
    {
      const double t = span > 0.0 ? (values(grid.index(i, j)) - scale.min) / span : 0.0;
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
    }
  }
  if (!out)
  {
    throw Error(ErrorKind::Io, "write failed for " + path.string());
  }
  std::filesystem::path side = path;
  side.replace_extension(".json");
  nlohmann::json meta;
  if (std::filesystem::exists(side))
  {
    meta = ReadJsonFile(side);
  }
  meta["image"] = {{"file", path.filename().string()},
                   {"min", scale.min},
                   {"max", scale.max},
                   {"scaling", "linear"},
                   {"first_row", "y = Ly"}};
  WriteJsonFile(meta, side);
  return scale;
}

void ExportRun(const ExperimentRun &run, const std::filesystem::path &dir)
{
  const Grid grid = run.config.grid.Build();
  auto field = [&](const std::string &stem, const VectorXd &q, const nlohmann::json &meta)
  {
    WriteFieldCsv(dir / (stem + ".csv"), grid, q);
    WriteJsonFile(meta, dir / (stem + ".json"));
    if (grid.dim() == 2)
    {
      WritePgm(dir / (stem + ".pgm"), grid, q);
    }
  };
  field("q_true", run.q_true.RealValues(), {{"field", "q_true"}});
  for (const MethodOutcome &o : run.report.methods)
  {
    field("q_" + Lower(ToString(o.result.method)), o.result.q, ToJson(o.result, o.error));
  }
  SaveTransferData(run.data, dir / "transfer.json");
  WriteJsonFile(ToJson(run.config), dir / "config.json");
  WriteJsonFile(ToJson(run.report), dir / "report.json");
}

std::filesystem::path OutputDirectory(const std::string &output)
{
  const std::filesystem::path out(output);
  if (out.is_absolute())
  {
    return out;
  }
  const char *root = std::getenv("LSLINV_OUTPUT_ROOT");
  return root && *root ? std::filesystem::path(root) / out : out;
}

}  // namespace lslinv
