#ifndef LSLINV_LANCZOS_HPP
#define LSLINV_LANCZOS_HPP

#include <optional>

#include "lslinv/romgen.hpp"

namespace lslinv
{

//
// M-orthonormal (block) Lanczos factorization of A = M^{-1} S started from M^{-1} B:
//
//   A Q = Q T,   Q^* M Q = I,   Q E_1 beta = M^{-1} B,   beta = (B^* M^{-1} B)^{1/2}.
//
// The recurrence runs in the eigenvector coordinates of the pencil (S, M), where A is
// diagonal and the M inner product is Euclidean; Q is mapped back afterwards. This is
// the same factorization in exact arithmetic but keeps its accuracy when M is badly
// conditioned.
//
// T is block tridiagonal with K x K blocks. For SISO and real-mode data T is real; for
// complex-mode MIMO data the diagonal and subdiagonal blocks are Hermitian/complex in
// general, so T is kept complex and its imaginary part is reported by ImagMax().
//
struct LanczosFactorization
{
  MatrixXcd T;
  MatrixXcd Q;
  MatrixXcd beta;
  int K = 0;
  int steps = 0;

  // Set when the SISO recurrence hit an invariant subspace before m steps.
  std::optional<int> breakdown_step;

  double ImagMax() const { return MaxAbs(T.imag()); }
  MatrixXd RealT() const { return T.real(); }
};

struct LanczosOptions
{
  // Breakdown (SISO) or rank deficiency (block) when a residual column norm falls
  // below tol * max ||A q_1||_M over the first block.
  double breakdown_tol = 1e-12;
};

LanczosFactorization MSymmetricLanczos(const Rom &rom, LanczosOptions options = {});
LanczosFactorization BlockLanczos(const Rom &rom, LanczosOptions options = {});

// SISO recurrence when K == 1, block recurrence otherwise.
LanczosFactorization Lanczos(const Rom &rom, LanczosOptions options = {});

// F~(lambda) = beta^* E_1^T (T + lambda I)^{-1} E_1 beta.
MatrixXcd RomTransferLanczos(const LanczosFactorization &fact, Complex lambda);

// (T + lambda I)^{-1} E_1, shared by transfer evaluation and internal solutions.
MatrixXcd ShiftedFirstBlock(const MatrixXcd &T, int K, Complex lambda, int power = 1);

}  // namespace lslinv

#endif  // LSLINV_LANCZOS_HPP
