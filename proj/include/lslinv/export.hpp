#ifndef LSLINV_EXPORT_HPP
#define LSLINV_EXPORT_HPP

#include <filesystem>

#include "lslinv/experiment.hpp"

namespace lslinv
{

//
// Field CSV: a header line "nx,ny,hx,hy", one line with those values, then ny rows of nx
// comma-separated values (row j holds y = j * hy). 1D fields have ny = 1 and hy = 0.
//
struct FieldCsv
{
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  VectorXd values;
};

void WriteFieldCsv(const std::filesystem::path &path, const Grid &grid, const VectorXd &values);
FieldCsv ReadFieldCsv(const std::filesystem::path &path);

struct ImageScale
{
  double min = 0.0;
  double max = 0.0;
};

// 8-bit binary PGM of a 2D field with linear min-max scaling; the first image row is
// y = Ly. A constant field maps to 0 everywhere. Writes a JSON sidecar next to the image
// (same stem, .json) holding the scaling.
ImageScale WritePgm(const std::filesystem::path &path, const Grid &grid, const VectorXd &values);

// <dir>/q_true.csv, q_<method>.csv (+ .pgm/.json in 2D, sidecars carry the result
// metadata), <dir>/transfer.json, <dir>/config.json and <dir>/report.json.
void ExportRun(const ExperimentRun &run, const std::filesystem::path &dir);

// Output directory for a config: $LSLINV_OUTPUT_ROOT/<output> when the variable is set,
// otherwise <output> relative to the working directory. Absolute outputs are kept.
std::filesystem::path OutputDirectory(const std::string &output);

}  // namespace lslinv

#endif  // LSLINV_EXPORT_HPP
