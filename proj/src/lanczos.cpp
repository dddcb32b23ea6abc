#include "lslinv/lanczos.hpp"

#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>

namespace lslinv
{

namespace
{

// Spectral coordinates of the pencil: S X = M X diag(theta), X^* M X = I. In these
// coordinates A = M^{-1} S is diag(theta) and the M inner product is Euclidean, so the
// recurrence below never forms M-weighted products of badly scaled vectors.
struct PencilCoordinates
{
  VectorXd theta;
  MatrixXcd X;
};

PencilCoordinates Diagonalize(const Rom &rom)
{
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> ge(rom.stiffness, rom.mass,
                                                         Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (ge.info() != Eigen::Success)
  {
    throw Error(ErrorKind::IllConditionedMass, "mass matrix is not positive definite");
  }
  return {ge.eigenvalues(), ge.eigenvectors()};
}

// Hermitian PD square root and inverse square root via eigendecomposition. Eigenvector
// phases are fixed so the largest-magnitude component is real positive.
std::pair<MatrixXcd, MatrixXcd> SqrtPair(const MatrixXcd &g)
{
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(Hermitian(g));
  MatrixXcd v = eig.eigenvectors();
  const VectorXd d = eig.eigenvalues();
  if (!(d.minCoeff() > 0.0))
  {
    throw Error(ErrorKind::RankDeficientBlock, "B^* M^{-1} B is not positive definite");
  }
  for (Index c = 0; c < v.cols(); c++)
  {
    Index at = 0;
    v.col(c).cwiseAbs().maxCoeff(&at);
    const Complex phase = v(at, c) / std::abs(v(at, c));
    v.col(c) /= phase;
  }
  const MatrixXcd root = v * d.cwiseSqrt().cast<Complex>().asDiagonal() * v.adjoint();
  const MatrixXcd inv_root =
    v * d.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * v.adjoint();
  return {Hermitian(root), Hermitian(inv_root)};
}

// Removes the span of the orthonormal columns q from w, twice.
void Reorthogonalize(const MatrixXcd &q, MatrixXcd &w)
{
  if (q.cols() == 0)
  {
    return;
  }
  for (int pass = 0; pass < 2; pass++)
  {
    w -= q * (q.adjoint() * w);
  }
}

// Modified Gram-Schmidt with one reorthogonalization pass: w = Q R, R upper triangular
// with positive diagonal. Returns nullopt if a column norm falls to the floor.
std::optional<std::pair<MatrixXcd, MatrixXcd>> ThinQR(MatrixXcd w, double floor)
{
  const Index k = w.cols();
  MatrixXcd r = MatrixXcd::Zero(k, k);
  for (Index c = 0; c < k; c++)
  {
    for (int pass = 0; pass < 2; pass++)
    {
      for (Index p = 0; p < c; p++)
      {
        const Complex h = w.col(p).dot(w.col(c));
        w.col(c) -= h * w.col(p);
        r(p, c) += h;
      }
    }
    const double nrm = w.col(c).norm();
    if (!(nrm > floor))
    {
      return std::nullopt;
    }
    r(c, c) = nrm;
    w.col(c) /= nrm;
  }
  return std::make_pair(w, r);
}

LanczosFactorization Recurrence(const Rom &rom, LanczosOptions options)
{
  const int k = rom.K;
  const int m = rom.m;
  const int n = m * k;
  Require(k >= 1 && rom.mass.rows() == n && rom.moments.rows() == n && rom.moments.cols() == k,
          "ROM dimensions are inconsistent");
  const PencilCoordinates pc = Diagonalize(rom);
  const VectorXcd theta = pc.theta.cast<Complex>();

  LanczosFactorization f;
  f.K = k;
  const MatrixXcd c = pc.X.adjoint() * rom.moments;
  const auto [root, inv_root] = SqrtPair(c.adjoint() * c);
  f.beta = root;

  MatrixXcd q = MatrixXcd::Zero(n, n);
  MatrixXcd t = MatrixXcd::Zero(n, n);
  q.leftCols(k) = c * inv_root;
  double floor = 0.0;
  int steps = m;
  for (int s = 0; s < m; s++)
  {
    const int c0 = s * k;
    MatrixXcd w = theta.asDiagonal() * q.middleCols(c0, k);
    if (s == 0)
    {
      floor = options.breakdown_tol * w.colwise().norm().maxCoeff();
    }
    if (s > 0)
    {
      w -= q.middleCols(c0 - k, k) * t.block(c0 - k, c0, k, k);
    }
    const MatrixXcd alpha = Hermitian(q.middleCols(c0, k).adjoint() * w);
    t.block(c0, c0, k, k) = alpha;
    w -= q.middleCols(c0, k) * alpha;
    Reorthogonalize(q.leftCols(c0 + k), w);
    if (s + 1 == m)
    {
      break;
    }
    auto qr = ThinQR(w, floor);
    if (!qr)
    {
      if (k > 1)
      {
        throw Error(ErrorKind::RankDeficientBlock,
                    "residual block is numerically rank deficient at step " +
                      std::to_string(s + 1) + "; block deflation is not supported");
      }
      steps = s + 1;
      f.breakdown_step = steps;
      break;
    }
    q.middleCols(c0 + k, k) = qr->first;
    t.block(c0 + k, c0, k, k) = qr->second;
    t.block(c0, c0 + k, k, k) = qr->second.adjoint();
  }
  f.steps = steps;
  f.T = t.topLeftCorner(steps * k, steps * k);
  if (k == 1)
  {
    // SISO: alpha is real and the off-diagonal norms are real positive.
    f.T = f.T.real().cast<Complex>();
  }
  f.Q = pc.X * q.leftCols(steps * k);
  return f;
}

}  // namespace

LanczosFactorization MSymmetricLanczos(const Rom &rom, LanczosOptions options)
{
  Require(rom.K == 1, "M-symmetric Lanczos is the single-source recurrence; use BlockLanczos");
  return Recurrence(rom, options);
}

LanczosFactorization BlockLanczos(const Rom &rom, LanczosOptions options)
{
  return Recurrence(rom, options);
}

LanczosFactorization Lanczos(const Rom &rom, LanczosOptions options)
{
  return rom.K == 1 ? MSymmetricLanczos(rom, options) : BlockLanczos(rom, options);
}

MatrixXcd ShiftedFirstBlock(const MatrixXcd &T, int K, Complex lambda, int power)
{
  const Index n = T.rows();
  MatrixXcd shifted = T;
  shifted.diagonal().array() += lambda;
  Eigen::PartialPivLU<MatrixXcd> lu(shifted);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !std::isfinite(rcond))
  {
    throw Error(ErrorKind::SingularShift, "T + lambda I is singular");
  }
  MatrixXcd x = MatrixXcd::Identity(n, K);
  for (int p = 0; p < power; p++)
  {
    x = lu.solve(x);
  }
  return x;
}

MatrixXcd RomTransferLanczos(const LanczosFactorization &fact, Complex lambda)
{
  const MatrixXcd x = ShiftedFirstBlock(fact.T, fact.K, lambda);
  return fact.beta.adjoint() * x.topRows(fact.K) * fact.beta;
}

}  // namespace lslinv
