#include "lslinv/inversion.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace lslinv
{

const char *ToString(Method m)
{
  switch (m)
  {
    case Method::Lsl:
      return "LSL";
    case Method::Born:
      return "BORN";
    case Method::Cheated:
      return "CHEATED";
    case Method::BackProjection:
      return "BACKPROJECTION";
  }
  return "UNKNOWN";
}

Method MethodFromString(const std::string &name)
{
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "LSL")
  {
    return Method::Lsl;
  }
  if (up == "BORN")
  {
    return Method::Born;
  }
  if (up == "CHEATED")
  {
    return Method::Cheated;
  }
  if (up == "BACKPROJECTION")
  {
    return Method::BackProjection;
  }
  throw Error(ErrorKind::Config, "unknown method '" + name + "'");
}

namespace
{

bool SameSpectra(const SpectralSet &a, const SpectralSet &b)
{
  return a.mode == b.mode && a.points == b.points;
}

}  // namespace

LslSystem Assemble(const InternalSolutionSet &u0, const InternalSolutionSet &u,
                   const TransferData &data, const TransferData &data0)
{
  Require(u0.grid == u.grid, "background and internal solutions live on different grids");
  Require(SameSpectra(u0.spectra, u.spectra) && SameSpectra(u.spectra, data.spectra) &&
            SameSpectra(data.spectra, data0.spectra),
          "spectral sets of solutions and data differ");
  Require(u0.K == u.K && u.K == data.K() && data.K() == data0.K(), "source counts differ");
  const bool real = data.spectra.real();
  if (real)
  {
    Require(u0.has_derivatives() && u.has_derivatives(),
            "real-mode assembly needs lambda-derivatives of the internal solutions");
  }

  const int k = u.K;
  const int m = data.m();
  const Index n = u.grid.size();
  const VectorXcd w = u.grid.weights().cast<Complex>();
  const int pairs = k * (k + 1) / 2;

  LslSystem sys;
  sys.grid = u.grid;
  sys.matrix.resize(2 * m * pairs, n);
  sys.rhs.resize(2 * m * pairs);
  sys.rows.reserve(static_cast<std::size_t>(2 * m * pairs));
  Index row = 0;
  for (int j = 0; j < m; j++)
  {
    const MatrixXcd df = data0.values[j] - data.values[j];
    for (int r = 0; r < k; r++)
    {
      const VectorXcd a = u0.values.col(j * k + r);
      for (int p = r; p < k; p++)
      {
        const VectorXcd b = u.values.col(j * k + p);
        const VectorXcd c = w.cwiseProduct(a).cwiseProduct(b);
        sys.matrix.row(row) = c.real().transpose();
        sys.rhs(row) = df(r, p).real();
        sys.rows.push_back({j, r, p, RowKind::ValueReal});
        row++;
        if (real)
        {
          const VectorXcd da = u0.derivatives.col(j * k + r);
          const VectorXcd db = u.derivatives.col(j * k + p);
          const VectorXcd d = w.cwiseProduct(da.cwiseProduct(b) + a.cwiseProduct(db));
          sys.matrix.row(row) = d.real().transpose();
          sys.rhs(row) = data0.derivatives[j](r, p) - data.derivatives[j](r, p);
          sys.rows.push_back({j, r, p, RowKind::Derivative});
        }
        else
        {
          sys.matrix.row(row) = c.imag().transpose();
          sys.rhs(row) = df(r, p).imag();
          sys.rows.push_back({j, r, p, RowKind::ValueImag});
        }
        row++;
      }
    }
  }
  Require(sys.rhs.allFinite() && sys.matrix.allFinite(), "assembled system is not finite");
  return sys;
}

InversionResult SolveTsvd(const LslSystem &sys, const RankPolicy &policy, Method tag)
{
  Require(sys.matrix.rows() == sys.rhs.size(), "system rows and right-hand side differ");
  Require(sys.matrix.cols() == sys.grid.size(), "system columns must match grid nodes");
  MatrixXd a = sys.matrix;
  VectorXd b = sys.rhs;
  if (policy.normalize_rows)
  {
    for (Index i = 0; i < a.rows(); i++)
    {
      const double nrm = a.row(i).norm();
      if (nrm > 0.0)
      {
        a.row(i) /= nrm;
        b(i) /= nrm;
      }
    }
  }

  Eigen::BDCSVD<MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  InversionResult res;
  res.grid = sys.grid;
  res.method = tag;
  res.singular_values = svd.singularValues();
  const Index ns = res.singular_values.size();
  const double s1 = ns > 0 ? res.singular_values(0) : 0.0;
  int rank = 0;
  if (policy.rank)
  {
    Require(*policy.rank >= 1, "explicit TSVD rank must be positive");
    rank = static_cast<int>(std::min<Index>(*policy.rank, ns));
    while (rank > 0 && !(res.singular_values(rank - 1) > 0.0))
    {
      rank--;
    }
    res.threshold = rank > 0 ? res.singular_values(rank - 1) / s1 : 0.0;
  }
  else
  {
    Require(policy.threshold > 0.0, "TSVD threshold must be positive");
    while (rank < ns && s1 > 0.0 && res.singular_values(rank) >= policy.threshold * s1)
    {
      rank++;
    }
    res.threshold = policy.threshold;
  }
  if (rank == 0)
  {
    throw Error(ErrorKind::AllTruncated, "no singular value passes the truncation policy");
  }
  res.rank = rank;
  const VectorXd coeff = (svd.matrixU().leftCols(rank).transpose() * b)
                           .cwiseQuotient(res.singular_values.head(rank));
  res.q = svd.matrixV().leftCols(rank) * coeff;
  const double bn = b.norm();
  res.residual = bn > 0.0 ? (a * res.q - b).norm() / bn : 0.0;
  return res;
}

InversionResult LslSolve(const BackgroundKit &kit, const LanczosFactorization &fact,
                         const TransferData &data, const TransferData &data0,
                         const RankPolicy &policy)
{
  const InternalSolutionSet u0 = BackgroundInternal(kit);
  const InternalSolutionSet u = DataDrivenInternalSet(kit, fact);
  return SolveTsvd(Assemble(u0, u, data, data0), policy, Method::Lsl);
}

InversionResult BornSolve(const BackgroundKit &kit, const TransferData &data,
                          const TransferData &data0, const RankPolicy &policy)
{
  const InternalSolutionSet u0 = BackgroundInternal(kit);
  return SolveTsvd(Assemble(u0, u0, data, data0), policy, Method::Born);
}

InversionResult CheatedSolve(const BackgroundKit &kit, const GridFunction &q_true,
                             const TransferData &data, const TransferData &data0,
                             const RankPolicy &policy)
{
  const InternalSolutionSet u0 = BackgroundInternal(kit);
  const InternalSolutionSet u = CheatedInternal(kit.grid, q_true, kit.sources, kit.spectra);
  return SolveTsvd(Assemble(u0, u, data, data0), policy, Method::Cheated);
}

VectorXd PointSpreadNormalization(const BackgroundKit &kit)
{
  const MatrixXcd g = Gram(kit.grid, kit.basis, kit.basis);
  const MatrixXcd bg = kit.basis * g;
  return bg.cwiseProduct(kit.basis.conjugate()).rowwise().sum().real();
}

InversionResult BackProjection(const LanczosFactorization &fact, const BackgroundKit &kit)
{
  Require(fact.T.rows() == kit.fact.T.rows() && fact.K == kit.fact.K,
          "perturbed and background factorizations have different sizes");
  const MatrixXcd dt = fact.T - kit.fact.T;
  const VectorXd num = (kit.basis * dt).cwiseProduct(kit.basis.conjugate()).rowwise().sum().real();
  const VectorXd den = PointSpreadNormalization(kit);
  InversionResult res;
  res.grid = kit.grid;
  res.method = Method::BackProjection;
  res.q = VectorXd::Zero(kit.grid.size());
  for (Index i = 0; i < res.q.size(); i++)
  {
    if (den(i) < 1e-14)
    {
      res.flagged_nodes++;
      continue;
    }
    res.q(i) = num(i) / den(i);
  }
  return res;
}

IdentityReport VerifyRomIdentity(const LanczosFactorization &fact, const BackgroundKit &kit,
                                 const TransferData &data, const TransferData &data0,
                                 const InternalSolutionSet &u, const GridFunction &q)
{
  Require(fact.T.rows() == kit.fact.T.rows(), "factorizations have different sizes");
  Require(q.grid == kit.grid && u.grid == kit.grid, "q and u must live on the kit grid");
  const int k = kit.K();
  const MatrixXcd dt = fact.T - kit.fact.T;
  const MatrixXcd &beta = fact.beta;
  const MatrixXcd &beta0 = kit.fact.beta;
  const VectorXcd wq = kit.grid.weights().cwiseProduct(q.RealValues()).cast<Complex>();

  IdentityReport rep;
  rep.normalization_gap = MaxAbs(beta - beta0) / MaxAbs(beta0);
  auto rel = [](const MatrixXcd &a, const MatrixXcd &b, double scale)
  { return scale > 0.0 ? MaxAbs(a - b) / scale : MaxAbs(a - b); };

  for (int j = 0; j < data.m(); j++)
  {
    const Complex lambda = data.spectra.points[j];
    MatrixXcd shifted0 = kit.fact.T;
    shifted0.diagonal().array() += lambda;
    const MatrixXcd row0 = shifted0.partialPivLu().inverse().topRows(k);
    const MatrixXcd x0 = ShiftedFirstBlock(kit.fact.T, k, lambda);
    const MatrixXcd x = ShiftedFirstBlock(fact.T, k, lambda);
    const MatrixXcd middle = row0 * dt * x;

    IdentityEntry e;
    e.lambda = lambda;
    e.rom_form = beta0 * middle * beta;
    e.data_form = data0.values[j] - data.values[j];
    e.integral_form = kit.snapshots.middleCols(j * k, k).transpose() *
                      (wq.asDiagonal() * u.values.middleCols(j * k, k));
    const double scale = MaxAbs(e.data_form);
    e.dev_rom_data = rel(e.rom_form, e.data_form, scale);
    e.dev_integral_data = rel(e.integral_form, e.data_form, scale);
    e.dev_rom_integral = rel(e.rom_form, e.integral_form, scale);

    const MatrixXcd lhs = beta0 * middle * beta0;
    const MatrixXcd rhs = beta0 * (x0.topRows(k) - x.topRows(k)) * beta0;
    const double rscale = std::max(MaxAbs(beta0 * x0.topRows(k) * beta0), 1e-300);
    e.resolvent_residual = MaxAbs(lhs - rhs) / rscale;

    const MatrixXcd romint = beta * middle * beta;
    e.romint_residual = rel(e.data_form, romint, scale);

    rep.max_deviation =
      std::max({rep.max_deviation, e.dev_rom_data, e.dev_integral_data, e.dev_rom_integral});
    rep.max_resolvent_residual = std::max(rep.max_resolvent_residual, e.resolvent_residual);
    rep.max_romint_residual = std::max(rep.max_romint_residual, e.romint_residual);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace lslinv
