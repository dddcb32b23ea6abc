#include "lslinv/transfer_io.hpp"

#include <fstream>

namespace lslinv
{

using nlohmann::json;

namespace
{

json ComplexToJson(Complex z) { return json::array({z.real(), z.imag()}); }

Complex ComplexFromJson(const json &j)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
  {
    throw Error(ErrorKind::Io, "complex value must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename F>
auto ParseOrThrow(const char *what, F &&f)
{
  try
  {
    return f();
  }
  catch (const json::exception &e)
  {
    throw Error(ErrorKind::Io, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json ComplexMatrixToJson(const MatrixXcd &m)
{
  json rows = json::array();
  for (Index r = 0; r < m.rows(); r++)
  {
    json row = json::array();
    for (Index c = 0; c < m.cols(); c++)
    {
      row.push_back(ComplexToJson(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXcd ComplexMatrixFromJson(const json &j)
{
  if (!j.is_array() || j.empty() || !j[0].is_array())
  {
    throw Error(ErrorKind::Io, "matrix must be a non-empty array of rows");
  }
  MatrixXcd m(static_cast<Index>(j.size()), static_cast<Index>(j[0].size()));
  for (Index r = 0; r < m.rows(); r++)
  {
    const json &row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != m.cols())
    {
      throw Error(ErrorKind::Io, "matrix rows have inconsistent lengths");
    }
    for (Index c = 0; c < m.cols(); c++)
    {
      m(r, c) = ComplexFromJson(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

json RealMatrixToJson(const MatrixXd &m)
{
  json rows = json::array();
  for (Index r = 0; r < m.rows(); r++)
  {
    json row = json::array();
    for (Index c = 0; c < m.cols(); c++)
    {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd RealMatrixFromJson(const json &j)
{
  if (!j.is_array() || j.empty() || !j[0].is_array())
  {
    throw Error(ErrorKind::Io, "matrix must be a non-empty array of rows");
  }
  MatrixXd m(static_cast<Index>(j.size()), static_cast<Index>(j[0].size()));
  for (Index r = 0; r < m.rows(); r++)
  {
    const json &row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != m.cols())
    {
      throw Error(ErrorKind::Io, "matrix rows have inconsistent lengths");
    }
    for (Index c = 0; c < m.cols(); c++)
    {
      if (!row[static_cast<std::size_t>(c)].is_number())
      {
        throw Error(ErrorKind::Io, "real matrix entry is not a number");
      }
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

json ToJson(const TransferData &data)
{
  data.Validate();
  json j;
  j["format"] = "lslinv.transfer";
  j["version"] = 1;
  j["mode"] = data.spectra.real() ? "real" : "complex";
  j["K"] = data.K();
  json points = json::array();
  for (int i = 0; i < data.m(); i++)
  {
    json p;
    p["lambda"] = ComplexToJson(data.spectra.points[i]);
    p["F"] = ComplexMatrixToJson(data.values[i]);
    if (data.spectra.real())
    {
      p["dF"] = RealMatrixToJson(data.derivatives[i]);
    }
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  return j;
}

TransferData TransferDataFromJson(const json &j)
{
  return ParseOrThrow(
    "transfer data",
    [&]
    {
      if (j.value("format", std::string()) != "lslinv.transfer")
      {
        throw Error(ErrorKind::Io, "not an lslinv.transfer document");
      }
      if (j.at("version").get<int>() != 1)
      {
        throw Error(ErrorKind::Io, "unsupported transfer data version");
      }
      const std::string mode = j.at("mode").get<std::string>();
      if (mode != "real" && mode != "complex")
      {
        throw Error(ErrorKind::Io, "mode must be 'real' or 'complex'");
      }
      TransferData data;
      data.spectra.mode =
        mode == "real" ? SpectralMode::RealWithDerivatives : SpectralMode::Complex;
      for (const json &p : j.at("points"))
      {
        data.spectra.points.push_back(ComplexFromJson(p.at("lambda")));
        data.values.push_back(ComplexMatrixFromJson(p.at("F")));
        if (p.contains("dF"))
        {
          data.derivatives.push_back(RealMatrixFromJson(p.at("dF")));
        }
      }
      if (data.K() != j.at("K").get<int>())
      {
        throw Error(ErrorKind::Io, "declared K does not match matrix sizes");
      }
      try
      {
        data.Validate();
      }
      catch (const Error &e)
      {
        throw Error(ErrorKind::Io, e.what());
      }
      return data;
    });
}

void SaveTransferData(const TransferData &data, const std::filesystem::path &path)
{
  WriteJsonFile(ToJson(data), path);
}

TransferData LoadTransferData(const std::filesystem::path &path)
{
  return TransferDataFromJson(ReadJsonFile(path));
}

json ToJson(const Rom &rom)
{
  json j;
  j["format"] = "lslinv.rom";
  j["version"] = 1;
  j["mode"] = rom.spectra.real() ? "real" : "complex";
  j["m"] = rom.m;
  j["K"] = rom.K;
  json lambdas = json::array();
  for (const Complex z : rom.spectra.points)
  {
    lambdas.push_back(ComplexToJson(z));
  }
  j["lambda"] = std::move(lambdas);
  j["M"] = ComplexMatrixToJson(rom.mass);
  j["S"] = ComplexMatrixToJson(rom.stiffness);
  j["B"] = ComplexMatrixToJson(rom.moments);
  return j;
}

Rom RomFromJson(const json &j)
{
  return ParseOrThrow(
    "rom",
    [&]
    {
      if (j.value("format", std::string()) != "lslinv.rom")
      {
        throw Error(ErrorKind::Io, "not an lslinv.rom document");
      }
      Rom rom;
      rom.m = j.at("m").get<int>();
      rom.K = j.at("K").get<int>();
      rom.spectra.mode = j.at("mode").get<std::string>() == "real"
                           ? SpectralMode::RealWithDerivatives
                           : SpectralMode::Complex;
      for (const json &z : j.at("lambda"))
      {
        rom.spectra.points.push_back(ComplexFromJson(z));
      }
      rom.mass = ComplexMatrixFromJson(j.at("M"));
      rom.stiffness = ComplexMatrixFromJson(j.at("S"));
      rom.moments = ComplexMatrixFromJson(j.at("B"));
      const Index n = static_cast<Index>(rom.m) * rom.K;
      if (rom.mass.rows() != n || rom.mass.cols() != n || rom.stiffness.rows() != n ||
          rom.stiffness.cols() != n || rom.moments.rows() != n || rom.moments.cols() != rom.K ||
          rom.spectra.size() != rom.m)
      {
        throw Error(ErrorKind::Io, "ROM matrix sizes do not match m and K");
      }
      return rom;
    });
}

json ReadJsonFile(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorKind::Io, "cannot open " + path.string());
  }
  try
  {
    return json::parse(in);
  }
  catch (const json::exception &e)
  {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const json &j, const std::filesystem::path &path)
{
  if (path.has_parent_path())
  {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out)
  {
    throw Error(ErrorKind::Io, "cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
  if (!out)
  {
    throw Error(ErrorKind::Io, "write failed for " + path.string());
  }
}

}  // namespace lslinv
