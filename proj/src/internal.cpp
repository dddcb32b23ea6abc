#include "lslinv/internal.hpp"

namespace lslinv
{

const char *ToString(Provenance p)
{
  switch (p)
  {
    case Provenance::DataDriven:
      return "DATA_DRIVEN";
    case Provenance::Cheated:
      return "CHEATED";
    case Provenance::Born:
      return "BORN";
  }
  return "UNKNOWN";
}

BackgroundKit BuildBackground(const Grid &grid, const SourceSet &sources,
                              const SpectralSet &spectra, ShiftOptions shift,
                              RomOptions rom_options, LanczosOptions lanczos_options)
{
  Require(sources.grid == grid, "background sources must live on the background grid");
  BackgroundKit kit;
  kit.grid = grid;
  kit.sources = sources;
  kit.spectra = spectra;
  kit.op = BuildOperator(grid, GridFunction::Zero(grid));
  kit.snapshots = Snapshots(kit.op, sources, spectra, shift);
  if (spectra.real())
  {
    kit.snapshot_derivatives = SnapshotDerivatives(kit.op, sources, spectra, shift);
  }
  kit.data = SimulateTransferData(kit.op, sources, spectra, shift);
  kit.rom = BuildRom(kit.data, rom_options);
  kit.fact = Lanczos(kit.rom, lanczos_options);
  kit.basis = kit.snapshots * kit.fact.Q;
  return kit;
}

MatrixXcd DataDrivenInternal(const BackgroundKit &kit, const MatrixXcd &T,
                             const MatrixXcd &beta, Complex lambda)
{
  Require(T.rows() == kit.basis.cols() && T.cols() == T.rows(),
          "perturbed T does not match the background basis dimension");
  Require(beta.rows() == kit.K() && beta.cols() == kit.K(), "beta must be K x K");
  return kit.basis * (ShiftedFirstBlock(T, kit.K(), lambda) * beta);
}

MatrixXcd InternalDerivative(const BackgroundKit &kit, const MatrixXcd &T,
                             const MatrixXcd &beta, double lambda)
{
  Require(T.rows() == kit.basis.cols() && T.cols() == T.rows(),
          "perturbed T does not match the background basis dimension");
  Require(beta.rows() == kit.K() && beta.cols() == kit.K(), "beta must be K x K");
  return -(kit.basis * (ShiftedFirstBlock(T, kit.K(), Complex(lambda, 0.0), 2) * beta));
}

InternalSolutionSet DataDrivenInternalSet(const BackgroundKit &kit,
                                          const LanczosFactorization &fact)
{
  Require(fact.K == kit.K(), "factorization and background use different source counts");
  InternalSolutionSet set;
  set.grid = kit.grid;
  set.spectra = kit.spectra;
  set.K = kit.K();
  set.provenance = Provenance::DataDriven;
  const int k = kit.K();
  set.values.resize(kit.grid.size(), k * kit.m());
  if (kit.spectra.real())
  {
    set.derivatives.resize(kit.grid.size(), k * kit.m());
  }
  for (int j = 0; j < kit.m(); j++)
  {
    const Complex lambda = kit.spectra.points[j];
    set.values.middleCols(j * k, k) = DataDrivenInternal(kit, fact.T, fact.beta, lambda);
    if (kit.spectra.real())
    {
      set.derivatives.middleCols(j * k, k) =
        InternalDerivative(kit, fact.T, fact.beta, lambda.real());
    }
  }
  return set;
}

InternalSolutionSet CheatedInternal(const Grid &grid, const GridFunction &q_true,
                                    const SourceSet &sources, const SpectralSet &spectra,
                                    ShiftOptions shift)
{
  const DiscreteOperator op = BuildOperator(grid, q_true);
  InternalSolutionSet set;
  set.grid = grid;
  set.spectra = spectra;
  set.K = sources.count();
  set.provenance = Provenance::Cheated;
  set.values = Snapshots(op, sources, spectra, shift);
  if (spectra.real())
  {
    set.derivatives = SnapshotDerivatives(op, sources, spectra, shift);
  }
  return set;
}

InternalSolutionSet BackgroundInternal(const BackgroundKit &kit)
{
  InternalSolutionSet set;
  set.grid = kit.grid;
  set.spectra = kit.spectra;
  set.K = kit.K();
  set.provenance = Provenance::Born;
  set.values = kit.snapshots;
  set.derivatives = kit.snapshot_derivatives;
  return set;
}

}  // namespace lslinv
