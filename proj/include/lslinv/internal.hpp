#ifndef LSLINV_INTERNAL_HPP
#define LSLINV_INTERNAL_HPP

#include "lslinv/lanczos.hpp"

namespace lslinv
{

//
// Everything derived from the known background medium q_0 = 0: snapshots V_0, the
// background data F_0 and its ROM, the factorization (T_0, Q_0, beta_0) and the
// orthonormalized basis V_0 Q_0 materialized on the grid.
//
struct BackgroundKit
{
  Grid grid;
  SourceSet sources;
  SpectralSet spectra;
  DiscreteOperator op;
  MatrixXcd snapshots;
  // du_0/dlambda at real lambda_j from exact background solves (empty in complex mode).
  MatrixXcd snapshot_derivatives;
  TransferData data;
  Rom rom;
  LanczosFactorization fact;
  MatrixXcd basis;

  int K() const { return sources.count(); }
  int m() const { return spectra.size(); }
};

BackgroundKit BuildBackground(const Grid &grid, const SourceSet &sources,
                              const SpectralSet &spectra, ShiftOptions shift = {},
                              RomOptions rom_options = {}, LanczosOptions lanczos_options = {});

enum class Provenance
{
  DataDriven,
  Cheated,
  Born,
};

const char *ToString(Provenance p);

// Internal solutions on a grid: column j*K + p holds source p at lambda_j.
struct InternalSolutionSet
{
  Grid grid;
  SpectralSet spectra;
  int K = 0;
  MatrixXcd values;
  // d/dlambda of each column at real lambda_j; empty when not computed.
  MatrixXcd derivatives;
  Provenance provenance = Provenance::DataDriven;

  bool has_derivatives() const { return derivatives.size() > 0; }
  MatrixXcd Block(int j) const { return values.middleCols(j * K, K); }
  MatrixXcd DerivativeBlock(int j) const { return derivatives.middleCols(j * K, K); }
};

// u(lambda) = V_0 Q_0 (T + lambda I)^{-1} E_1 beta, an n x K block. Only data-derived
// quantities enter: the background kit and the perturbed (T, beta).
MatrixXcd DataDrivenInternal(const BackgroundKit &kit, const MatrixXcd &T,
                             const MatrixXcd &beta, Complex lambda);

// du/dlambda = -V_0 Q_0 (T + lambda I)^{-2} E_1 beta for real lambda.
MatrixXcd InternalDerivative(const BackgroundKit &kit, const MatrixXcd &T,
                             const MatrixXcd &beta, double lambda);

// Data-driven set at every lambda_j of the kit; derivatives included in real mode.
InternalSolutionSet DataDrivenInternalSet(const BackgroundKit &kit,
                                          const LanczosFactorization &fact);

// Exact forward solves with the true potential (baseline only).
InternalSolutionSet CheatedInternal(const Grid &grid, const GridFunction &q_true,
                                    const SourceSet &sources, const SpectralSet &spectra,
                                    ShiftOptions shift = {});

// Background solutions u_0 with exact derivatives, used by the Born linearization.
InternalSolutionSet BackgroundInternal(const BackgroundKit &kit);

}  // namespace lslinv

#endif  // LSLINV_INTERNAL_HPP
