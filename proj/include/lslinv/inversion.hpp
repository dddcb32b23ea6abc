#ifndef LSLINV_INVERSION_HPP
#define LSLINV_INVERSION_HPP

#include <optional>
#include <vector>

#include "lslinv/internal.hpp"

namespace lslinv
{

enum class RowKind
{
  ValueReal,
  ValueImag,
  Derivative,
};

struct RowInfo
{
  int freq = 0;
  int r = 0;
  int p = 0;
  RowKind kind = RowKind::ValueReal;
};

//
// Real linear system  matrix * q = rhs  for the nodal potential q. Row (j, r, p) is the
// quadrature of u_0^(r)(lambda_j) u^(p)(lambda_j) against q with right-hand side
// (F_0 - F)_{rp}(lambda_j); complex rows are split into real and imaginary parts and real
// mode adds the lambda-derivative rows. Only pairs r <= p are kept.
//
struct LslSystem
{
  Grid grid;
  MatrixXd matrix;
  VectorXd rhs;
  std::vector<RowInfo> rows;
};

LslSystem Assemble(const InternalSolutionSet &u0, const InternalSolutionSet &u,
                   const TransferData &data, const TransferData &data0);

struct RankPolicy
{
  // Explicit rank wins over the threshold when set.
  std::optional<int> rank;
  // Keep sigma_k >= threshold * sigma_1.
  double threshold = 1e-3;
  bool normalize_rows = true;
};

enum class Method
{
  Lsl,
  Born,
  Cheated,
  BackProjection,
};

const char *ToString(Method m);
Method MethodFromString(const std::string &name);

struct InversionResult
{
  Grid grid;
  VectorXd q;
  VectorXd singular_values;
  int rank = 0;
  double threshold = 0.0;
  // ||W q - dF|| / ||dF|| for the (row-scaled) system that was solved; 0 when dF = 0.
  double residual = 0.0;
  Method method = Method::Lsl;
  // Back-projection nodes whose point-spread normalization degenerated.
  int flagged_nodes = 0;
};

InversionResult SolveTsvd(const LslSystem &sys, const RankPolicy &policy,
                          Method tag = Method::Lsl);

// Data-driven internal solutions in the Lippmann-Schwinger system.
InversionResult LslSolve(const BackgroundKit &kit, const LanczosFactorization &fact,
                         const TransferData &data, const TransferData &data0,
                         const RankPolicy &policy);

// Background solutions in place of the internal solutions.
InversionResult BornSolve(const BackgroundKit &kit, const TransferData &data,
                          const TransferData &data0, const RankPolicy &policy);

// Exact internal solutions computed from the true potential.
InversionResult CheatedSolve(const BackgroundKit &kit, const GridFunction &q_true,
                             const TransferData &data, const TransferData &data0,
                             const RankPolicy &policy);

// Pointwise estimate phi(x)(T - T_0)phi(x)^* / int |delta~(x, x')|^2 dx' with
// phi = V_0 Q_0 and delta~(x, x') = phi(x) phi(x')^*.
InversionResult BackProjection(const LanczosFactorization &fact, const BackgroundKit &kit);

// Denominator of BackProjection at every node, phi(x) G phi(x)^* with G = (V_0Q_0)^* W V_0Q_0.
VectorXd PointSpreadNormalization(const BackgroundKit &kit);

struct IdentityEntry
{
  Complex lambda;
  MatrixXcd rom_form;      // s_0^* (T - T_0) s
  MatrixXcd data_form;     // F_0 - F
  MatrixXcd integral_form; // int u_0 u q
  double dev_rom_data = 0.0;
  double dev_integral_data = 0.0;
  double dev_rom_integral = 0.0;
  // Resolvent identity with beta_0 in place of beta; exact up to roundoff.
  double resolvent_residual = 0.0;
  // |(F_0 - F) - beta E_1^T (T_0 + lambda)^{-1} (T - T_0) (T + lambda)^{-1} E_1 beta| / |F_0 - F|.
  double romint_residual = 0.0;
};

struct IdentityReport
{
  std::vector<IdentityEntry> entries;
  double max_deviation = 0.0;
  double max_resolvent_residual = 0.0;
  double max_romint_residual = 0.0;
  // Relative gap between beta_0 and beta.
  double normalization_gap = 0.0;
};

IdentityReport VerifyRomIdentity(const LanczosFactorization &fact, const BackgroundKit &kit,
                                 const TransferData &data, const TransferData &data0,
                                 const InternalSolutionSet &u, const GridFunction &q);

}  // namespace lslinv

#endif  // LSLINV_INVERSION_HPP
