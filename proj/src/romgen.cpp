#include "lslinv/romgen.hpp"

#include <cstdio>

#include <Eigen/Eigenvalues>

namespace lslinv
{

namespace
{

void Finalize(Rom &rom, const RomOptions &options)
{
  const double mscale = std::max(MaxAbs(rom.mass), std::numeric_limits<double>::min());
  const double sscale = std::max(MaxAbs(rom.stiffness), std::numeric_limits<double>::min());
  rom.mass_asymmetry = MaxAbs(rom.mass - rom.mass.adjoint()) / mscale;
  rom.stiffness_asymmetry = MaxAbs(rom.stiffness - rom.stiffness.adjoint()) / sscale;
  rom.mass = Hermitian(rom.mass);
  rom.stiffness = Hermitian(rom.stiffness);

  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(rom.mass, Eigen::EigenvaluesOnly);
  rom.mass_eigenvalues = eig.eigenvalues();
  const double lo = rom.mass_eigenvalues(0);
  const double hi = rom.mass_eigenvalues(rom.mass_eigenvalues.size() - 1);
  if (!(hi > 0.0) || lo < options.mass_condition_floor * hi)
  {
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.3e", lo / hi);
    throw Error(ErrorKind::IllConditionedMass,
                std::string("mass matrix eigenvalue ratio ") + ratio +
                  " below floor; snapshots are nearly dependent, reduce m");
  }
}

}  // namespace

Rom BuildRomComplex(const TransferData &data, RomOptions options)
{
  data.Validate();
  Require(data.spectra.mode == SpectralMode::Complex, "complex ROM needs complex-mode data");
  const int m = data.m();
  const int k = data.K();
  Rom rom;
  rom.m = m;
  rom.K = k;
  rom.spectra = data.spectra;
  rom.mass.resize(m * k, m * k);
  rom.stiffness.resize(m * k, m * k);
  rom.moments.resize(m * k, k);

  for (int i = 0; i < m; i++)
  {
    const Complex li = std::conj(data.spectra.points[i]);
    const MatrixXcd fi = data.values[i].conjugate();
    rom.moments.middleRows(i * k, k) = fi;
    for (int j = 0; j < m; j++)
    {
      const Complex lj = data.spectra.points[j];
      const MatrixXcd &fj = data.values[j];
      const Complex denom = lj - li;
      rom.mass.block(i * k, j * k, k, k) = (fi - fj) / denom;
      rom.stiffness.block(i * k, j * k, k, k) = (fj * lj - fi * li) / denom;
    }
  }
  Finalize(rom, options);
  return rom;
}

Rom BuildRomReal(const TransferData &data, RomOptions options)
{
  data.Validate();
  Require(data.spectra.real(), "real ROM needs real-mode data with derivatives");
  const int m = data.m();
  const int k = data.K();
  Rom rom;
  rom.m = m;
  rom.K = k;
  rom.spectra = data.spectra;
  MatrixXd mass(m * k, m * k);
  MatrixXd stiffness(m * k, m * k);
  MatrixXd moments(m * k, k);

  for (int i = 0; i < m; i++)
  {
    const double li = data.spectra.points[i].real();
    const MatrixXd fi = data.values[i].real();
    moments.middleRows(i * k, k) = fi;
    for (int j = 0; j < m; j++)
    {
      const double lj = data.spectra.points[j].real();
      const MatrixXd fj = data.values[j].real();
      if (i == j)
      {
        // lambda_j -> lambda_i limit of the divided differences.
        const MatrixXd &d = data.derivatives[i];
        mass.block(i * k, j * k, k, k) = -d;
        stiffness.block(i * k, j * k, k, k) = fi + li * d;
      }
      else
      {
        const double denom = lj - li;
        mass.block(i * k, j * k, k, k) = (fi - fj) / denom;
        stiffness.block(i * k, j * k, k, k) = (lj * fj - li * fi) / denom;
      }
    }
  }
  rom.mass = mass.cast<Complex>();
  rom.stiffness = stiffness.cast<Complex>();
  rom.moments = moments.cast<Complex>();
  Finalize(rom, options);
  return rom;
}

Rom BuildRom(const TransferData &data, RomOptions options)
{
  return data.spectra.real() ? BuildRomReal(data, options) : BuildRomComplex(data, options);
}

MatrixXcd RomTransfer(const Rom &rom, Complex lambda)
{
  const MatrixXcd pencil = rom.stiffness + lambda * rom.mass;
  Eigen::PartialPivLU<MatrixXcd> lu(pencil);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !std::isfinite(rcond))
  {
    throw Error(ErrorKind::SingularShift, "ROM pencil S + lambda M is singular");
  }
  const MatrixXcd c = lu.solve(rom.moments);
  if (!c.allFinite())
  {
    throw Error(ErrorKind::SingularShift, "ROM pencil solve produced non-finite values");
  }
  return rom.moments.adjoint() * c;
}

}  // namespace lslinv
