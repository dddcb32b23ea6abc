#ifndef LSLINV_ROMGEN_HPP
#define LSLINV_ROMGEN_HPP

#include "lslinv/forward.hpp"

namespace lslinv
{

//
// Data-driven reduced order model (S + lambda M) C(lambda) = B. Block (i, j) of size K x K
// corresponds to snapshot blocks U(lambda_i), U(lambda_j); ordering is frequency-major as
// in Snapshots(). M and S are exactly Hermitian; B_i = conj(F(lambda_i)).
//
struct Rom
{
  MatrixXcd mass;
  MatrixXcd stiffness;
  MatrixXcd moments;
  int m = 0;
  int K = 0;
  SpectralSet spectra;

  // Relative asymmetry max|M - M^*| / max|M| (and the same for S) before symmetrization.
  double mass_asymmetry = 0.0;
  double stiffness_asymmetry = 0.0;

  // Eigenvalues of M in ascending order, kept for conditioning diagnostics.
  VectorXd mass_eigenvalues;
};

struct RomOptions
{
  // Reject M whose smallest eigenvalue is below floor * largest eigenvalue.
  double mass_condition_floor = 1e-13;
};

Rom BuildRomComplex(const TransferData &data, RomOptions options = {});
Rom BuildRomReal(const TransferData &data, RomOptions options = {});

// Dispatches on the spectral mode of the data.
Rom BuildRom(const TransferData &data, RomOptions options = {});

// F~(lambda) = B^* (S + lambda M)^{-1} B.
MatrixXcd RomTransfer(const Rom &rom, Complex lambda);

}  // namespace lslinv

#endif  // LSLINV_ROMGEN_HPP
