#ifndef LSLINV_FORWARD_HPP
#define LSLINV_FORWARD_HPP

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "lslinv/grid.hpp"

namespace lslinv
{

using SparseMatrixd = Eigen::SparseMatrix<double>;

//
// Finite-difference discretization of A_q = -Laplacian + q with homogeneous Neumann
// conditions. The mirrored-ghost stencil gives a nodal operator A that is self-adjoint in
// the trapezoidal inner product; it is stored in the symmetric weighted form
//
//   K = diag(w) A = K_0 + diag(w q),
//
// so the shifted system (A + lambda I) u = g is solved as (K + lambda W) u = W g.
//
class DiscreteOperator
{
public:
  DiscreteOperator() = default;
  DiscreteOperator(Grid grid, VectorXd potential, SparseMatrixd stiffness);

  const Grid &grid() const { return grid_; }
  const VectorXd &potential() const { return potential_; }

  // Symmetric weighted form diag(w) A.
  const SparseMatrixd &stiffness() const { return stiffness_; }

  // Nodal operator A = diag(w)^{-1} K (not symmetric at boundary nodes).
  SparseMatrixd NodalMatrix() const;

  VectorXcd Apply(const VectorXcd &u) const;
  MatrixXcd Apply(const MatrixXcd &u) const;

private:
  Grid grid_;
  VectorXd potential_;
  SparseMatrixd stiffness_;
};

DiscreteOperator BuildOperator(const Grid &grid, const GridFunction &q);

// Point sources: column r is the indicator of the node nearest positions[r], scaled by
// 1/w so that <g, u> = u(x_source) under the trapezoidal rule.
struct SourceSet
{
  Grid grid;
  MatrixXd columns;
  std::vector<Point> positions;
  std::vector<Index> nodes;

  int count() const { return static_cast<int>(columns.cols()); }
};

SourceSet PointSources(const Grid &grid, const std::vector<Point> &positions);

// Smooth sources: Gaussians of the given width centred at each position, truncated beyond
// four widths and normalized to unit quadrature mass. Unlike point sources, the transfer
// function converges under grid refinement, so data from a finer grid can be inverted on a
// coarser one.
SourceSet GaussianSources(const Grid &grid, const std::vector<Point> &positions, double width);

enum class SpectralMode
{
  Complex,
  RealWithDerivatives,
};

// Sample points lambda_j. In Complex mode every point has Im > 0 and the conjugate points
// are implicit; in RealWithDerivatives mode points are real and derivative data is used.
struct SpectralSet
{
  std::vector<Complex> points;
  SpectralMode mode = SpectralMode::RealWithDerivatives;

  static SpectralSet Real(const std::vector<double> &values);
  static SpectralSet FromComplex(const std::vector<Complex> &values);

  int size() const { return static_cast<int>(points.size()); }
  bool real() const { return mode == SpectralMode::RealWithDerivatives; }
  void Validate() const;
};

// Sampled transfer function: values[j] = F(lambda_j) (K x K, complex symmetric) and, in
// real mode, derivatives[j] = dF/dlambda(lambda_j).
struct TransferData
{
  SpectralSet spectra;
  std::vector<MatrixXcd> values;
  std::vector<MatrixXd> derivatives;

  int K() const { return values.empty() ? 0 : static_cast<int>(values.front().rows()); }
  int m() const { return spectra.size(); }

  // Checks shapes, complex symmetry (relative tol) and realness in real mode.
  void Validate(double symmetry_tol = 1e-10) const;
};

struct ShiftOptions
{
  // Reject solves with ||(A + lambda I) u - g||_w > residual_tol ||g||_w.
  double residual_tol = 1e-8;
};

//
// Sparse direct factorization of K + lambda W for one shift, reused across right-hand
// sides. Real shifts use a real factorization.
//
class ShiftedSolver
{
public:
  ShiftedSolver(const DiscreteOperator &op, Complex lambda, ShiftOptions options = {});
  ~ShiftedSolver();
  ShiftedSolver(ShiftedSolver &&) noexcept;
  ShiftedSolver &operator=(ShiftedSolver &&) noexcept;

  Complex lambda() const { return lambda_; }

  // Solves (A + lambda I) u = g column by column; g holds nodal source values.
  MatrixXcd Solve(const MatrixXcd &g) const;

private:
  struct Factors;
  const DiscreteOperator *op_;
  Complex lambda_;
  ShiftOptions options_;
  std::unique_ptr<Factors> factors_;
};

VectorXcd SolveShifted(const DiscreteOperator &op, Complex lambda, const VectorXcd &g,
                       ShiftOptions options = {});

// F(lambda)_{rp} = sum_i w_i g^(r)_i u^(p)_i.
MatrixXcd TransferFunction(const DiscreteOperator &op, const SourceSet &sources,
                           Complex lambda, ShiftOptions options = {});

// dF/dlambda(lambda)_{rp} = -sum_i w_i u^(r)_i u^(p)_i for real lambda.
MatrixXd TransferDerivative(const DiscreteOperator &op, const SourceSet &sources,
                            double lambda, ShiftOptions options = {});

// Column j*K + p is the solution for lambda_j and source p (frequency-major).
MatrixXcd Snapshots(const DiscreteOperator &op, const SourceSet &sources,
                    const SpectralSet &spectra, ShiftOptions options = {});

// Columns du/dlambda = -(A + lambda)^{-1} u at real lambda_j, same ordering as Snapshots.
MatrixXcd SnapshotDerivatives(const DiscreteOperator &op, const SourceSet &sources,
                              const SpectralSet &spectra, ShiftOptions options = {});

// Transfer data (with derivatives in real mode) from one factorization per lambda_j.
TransferData SimulateTransferData(const DiscreteOperator &op, const SourceSet &sources,
                                  const SpectralSet &spectra, ShiftOptions options = {});

}  // namespace lslinv

#endif  // LSLINV_FORWARD_HPP
