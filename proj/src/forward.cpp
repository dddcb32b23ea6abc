#include "lslinv/forward.hpp"

#include <cmath>
#include <set>

#include <Eigen/SparseLU>

namespace lslinv
{

DiscreteOperator::DiscreteOperator(Grid grid, VectorXd potential, SparseMatrixd stiffness)
  : grid_(std::move(grid)), potential_(std::move(potential)), stiffness_(std::move(stiffness))
{
}

SparseMatrixd DiscreteOperator::NodalMatrix() const
{
  const VectorXd inv_w = grid_.weights().cwiseInverse();
  SparseMatrixd a = inv_w.asDiagonal() * stiffness_;
  a.makeCompressed();
  return a;
}

VectorXcd DiscreteOperator::Apply(const VectorXcd &u) const
{
  Require(u.size() == grid_.size(), "operator applied to vector of wrong size");
  VectorXcd ku = stiffness_.cast<Complex>() * u;
  return ku.cwiseQuotient(grid_.weights().cast<Complex>());
}

MatrixXcd DiscreteOperator::Apply(const MatrixXcd &u) const
{
  Require(u.rows() == grid_.size(), "operator applied to block of wrong size");
  MatrixXcd ku = stiffness_.cast<Complex>() * u;
  return grid_.weights().cwiseInverse().cast<Complex>().asDiagonal() * ku;
}

DiscreteOperator BuildOperator(const Grid &grid, const GridFunction &q)
{
  Require(grid.size() > 0, "operator requires a valid grid");
  Require(q.grid == grid && q.values.size() == grid.size(),
          "potential does not live on the operator grid");
  Require(q.IsReal(), "potential must be real");
  const VectorXd qv = q.RealValues();
  Require(qv.allFinite(), "potential must be finite");

  const VectorXd &w = grid.weights();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(grid.size()) * 5);

  // Each axis contributes K_axis (x) W_other: the weighted 1D Neumann stencil with
  // entries 1/h, -1/h on each edge, times the trapezoid weight across the other axis.
  auto add_edges = [&](int axis)
  {
    const double h = grid.spacing(axis);
    const int nx = grid.nodes(0);
    const int ny = grid.nodes(1);
    for (int j = 0; j < ny; j++)
    {
      for (int i = 0; i < nx; i++)
      {
        const int ii = axis == 0 ? i + 1 : i;
        const int jj = axis == 1 ? j + 1 : j;
        if (ii >= nx || jj >= ny)
        {
          continue;
        }
        double cross = 1.0;
        if (grid.dim() == 2)
        {
          const int other = axis == 0 ? j : i;
          const int n_other = axis == 0 ? ny : nx;
          const double h_other = grid.spacing(1 - axis);
          cross = (other == 0 || other == n_other - 1) ? 0.5 * h_other : h_other;
        }
        const double c = cross / h;
        const Index a = grid.index(i, j);
        const Index b = grid.index(ii, jj);
        triplets.emplace_back(a, a, c);
        triplets.emplace_back(b, b, c);
        triplets.emplace_back(a, b, -c);
        triplets.emplace_back(b, a, -c);
      }
    }
  };
  add_edges(0);
  if (grid.dim() == 2)
  {
    add_edges(1);
  }
  for (Index k = 0; k < grid.size(); k++)
  {
    triplets.emplace_back(k, k, w(k) * qv(k));
  }

  SparseMatrixd k(grid.size(), grid.size());
  k.setFromTriplets(triplets.begin(), triplets.end());
  k.makeCompressed();
  return DiscreteOperator(grid, qv, std::move(k));
}

SourceSet PointSources(const Grid &grid, const std::vector<Point> &positions)
{
  Require(!positions.empty(), "source set is empty");
  SourceSet set;
  set.grid = grid;
  set.positions = positions;
  set.columns = MatrixXd::Zero(grid.size(), static_cast<Index>(positions.size()));
  std::set<Index> seen;
  for (std::size_t r = 0; r < positions.size(); r++)
  {
    const Index node = grid.NearestNode(positions[r]);
    Require(seen.insert(node).second, "two sources map to the same grid node");
    set.nodes.push_back(node);
    set.columns(node, static_cast<Index>(r)) = 1.0 / grid.weights()(node);
  }
  return set;
}

SourceSet GaussianSources(const Grid &grid, const std::vector<Point> &positions, double width)
{
  Require(!positions.empty(), "source set is empty");
  Require(width > 0.0, "source width must be positive");
  SourceSet set;
  set.grid = grid;
  set.positions = positions;
  set.columns = MatrixXd::Zero(grid.size(), static_cast<Index>(positions.size()));
  const double cutoff = 4.0 * width;
  for (std::size_t r = 0; r < positions.size(); r++)
  {
    Require(grid.Contains(positions[r]), "source position lies outside the domain");
    const Index c = static_cast<Index>(r);
    for (Index k = 0; k < grid.size(); k++)
    {
      const Point x = grid.coords(k);
      const double d = std::hypot(x[0] - positions[r][0], x[1] - positions[r][1]);
      if (d <= cutoff)
      {
        set.columns(k, c) = std::exp(-0.5 * d * d / (width * width));
      }
    }
    const double mass = grid.weights().dot(set.columns.col(c));
    Require(mass > 0.0, "source width is below the grid resolution");
    set.columns.col(c) /= mass;
    set.nodes.push_back(grid.NearestNode(positions[r]));
  }
  return set;
}

SpectralSet SpectralSet::Real(const std::vector<double> &values)
{
  SpectralSet s;
  s.mode = SpectralMode::RealWithDerivatives;
  for (double v : values)
  {
    s.points.emplace_back(v, 0.0);
  }
  s.Validate();
  return s;
}

SpectralSet SpectralSet::FromComplex(const std::vector<Complex> &values)
{
  SpectralSet s;
  s.mode = SpectralMode::Complex;
  s.points = values;
  s.Validate();
  return s;
}

void SpectralSet::Validate() const
{
  Require(!points.empty(), "spectral set is empty");
  for (std::size_t i = 0; i < points.size(); i++)
  {
    Require(std::isfinite(points[i].real()) && std::isfinite(points[i].imag()),
            "spectral point is not finite");
    if (mode == SpectralMode::Complex)
    {
      Require(points[i].imag() > 0.0, "complex-mode spectral points need Im(lambda) > 0");
    }
    else
    {
      Require(points[i].imag() == 0.0, "real-mode spectral points must be real");
    }
    for (std::size_t j = 0; j < i; j++)
    {
      Require(points[i] != points[j], "spectral points must be pairwise distinct");
    }
  }
}

void TransferData::Validate(double symmetry_tol) const
{
  spectra.Validate();
  Require(values.size() == spectra.points.size(), "one transfer matrix per spectral point");
  const Index k = K();
  Require(k > 0, "transfer matrices are empty");
  for (const auto &f : values)
  {
    Require(f.rows() == k && f.cols() == k, "transfer matrices must all be K x K");
    Require(f.allFinite(), "transfer matrix is not finite");
    const double scale = std::max(MaxAbs(f), std::numeric_limits<double>::min());
    Require(MaxAbs(f - f.transpose()) <= symmetry_tol * scale,
            "transfer matrix is not complex symmetric");
  }
  if (spectra.real())
  {
    Require(derivatives.size() == values.size(), "real-mode data needs dF/dlambda per point");
    for (std::size_t j = 0; j < values.size(); j++)
    {
      Require(MaxAbs(values[j].imag()) == 0.0, "real-mode transfer values must be real");
      const auto &d = derivatives[j];
      Require(d.rows() == k && d.cols() == k, "derivative matrices must all be K x K");
      Require(d.allFinite(), "derivative matrix is not finite");
      const double scale = std::max(MaxAbs(d), std::numeric_limits<double>::min());
      Require(MaxAbs(d - d.transpose()) <= symmetry_tol * scale,
              "derivative matrix is not symmetric");
    }
  }
  else
  {
    Require(derivatives.empty(), "complex-mode data carries no derivatives");
  }
}

struct ShiftedSolver::Factors
{
  std::optional<Eigen::SparseLU<SparseMatrixd>> real;
  std::optional<Eigen::SparseLU<Eigen::SparseMatrix<Complex>>> complex;
};

ShiftedSolver::ShiftedSolver(const DiscreteOperator &op, Complex lambda, ShiftOptions options)
  : op_(&op), lambda_(lambda), options_(options), factors_(std::make_unique<Factors>())
{
  Require(std::isfinite(lambda.real()) && std::isfinite(lambda.imag()), "shift is not finite");
  const VectorXd &w = op.grid().weights();
  if (lambda.imag() == 0.0)
  {
    SparseMatrixd a = op.stiffness();
    for (Index k = 0; k < a.rows(); k++)
    {
      a.coeffRef(k, k) += lambda.real() * w(k);
    }
    auto &lu = factors_->real.emplace();
    lu.compute(a);
    if (lu.info() != Eigen::Success)
    {
      throw Error(ErrorKind::NearSingularShift, "factorization failed at lambda = " +
                                                    std::to_string(lambda.real()));
    }
  }
  else
  {
    Eigen::SparseMatrix<Complex> a = op.stiffness().cast<Complex>();
    for (Index k = 0; k < a.rows(); k++)
    {
      a.coeffRef(k, k) += lambda * w(k);
    }
    auto &lu = factors_->complex.emplace();
    lu.compute(a);
    if (lu.info() != Eigen::Success)
    {
      throw Error(ErrorKind::NearSingularShift, "complex factorization failed");
    }
  }
}

ShiftedSolver::~ShiftedSolver() = default;
ShiftedSolver::ShiftedSolver(ShiftedSolver &&) noexcept = default;
ShiftedSolver &ShiftedSolver::operator=(ShiftedSolver &&) noexcept = default;

MatrixXcd ShiftedSolver::Solve(const MatrixXcd &g) const
{
  const Grid &grid = op_->grid();
  Require(g.rows() == grid.size(), "right-hand side does not match operator grid");
  const VectorXd &w = grid.weights();
  const MatrixXcd wg = w.cast<Complex>().asDiagonal() * g;
  MatrixXcd u(g.rows(), g.cols());
  if (factors_->real)
  {
    const MatrixXd re = factors_->real->solve(MatrixXd(wg.real()));
    const MatrixXd im = factors_->real->solve(MatrixXd(wg.imag()));
    u.real() = re;
    u.imag() = im;
  }
  else
  {
    u = factors_->complex->solve(wg);
  }

  // Weighted residual ||(A + lambda) u - g||_w = ||W^{-1} r||_w with r = (K + lambda W) u - W g.
  const VectorXd inv_sqrt_w = w.cwiseSqrt().cwiseInverse();
  for (Index c = 0; c < g.cols(); c++)
  {
    const VectorXcd uc = u.col(c);
    const VectorXcd r =
      op_->stiffness().cast<Complex>() * uc + lambda_ * w.cast<Complex>().cwiseProduct(uc) -
      wg.col(c);
    const double res = r.cwiseProduct(inv_sqrt_w.cast<Complex>()).norm();
    const double gnorm = Norm(grid, VectorXcd(g.col(c)));
    if (!uc.allFinite() || !(res <= options_.residual_tol * gnorm))
    {
      throw Error(ErrorKind::NearSingularShift,
                  "shifted solve residual " + std::to_string(res / gnorm) +
                    " exceeds tolerance at lambda = (" + std::to_string(lambda_.real()) + ", " +
                    std::to_string(lambda_.imag()) + ")");
    }
  }
  return u;
}

VectorXcd SolveShifted(const DiscreteOperator &op, Complex lambda, const VectorXcd &g,
                       ShiftOptions options)
{
  return ShiftedSolver(op, lambda, options).Solve(g).col(0);
}

namespace
{

void RequireSameGrid(const DiscreteOperator &op, const SourceSet &sources)
{
  Require(op.grid() == sources.grid, "sources and operator live on different grids");
}

MatrixXcd Symmetrized(const MatrixXcd &f)
{
  return 0.5 * (f + f.transpose());
}

}  // namespace

MatrixXcd TransferFunction(const DiscreteOperator &op, const SourceSet &sources,
                           Complex lambda, ShiftOptions options)
{
  RequireSameGrid(op, sources);
  const MatrixXcd u = ShiftedSolver(op, lambda, options).Solve(sources.columns.cast<Complex>());
  return sources.columns.transpose().cast<Complex>() *
         (op.grid().weights().cast<Complex>().asDiagonal() * u);
}

MatrixXd TransferDerivative(const DiscreteOperator &op, const SourceSet &sources, double lambda,
                            ShiftOptions options)
{
  RequireSameGrid(op, sources);
  const MatrixXcd u =
    ShiftedSolver(op, Complex(lambda, 0.0), options).Solve(sources.columns.cast<Complex>());
  const MatrixXd ur = u.real();
  return -(ur.transpose() * (op.grid().weights().asDiagonal() * ur));
}

MatrixXcd Snapshots(const DiscreteOperator &op, const SourceSet &sources,
                    const SpectralSet &spectra, ShiftOptions options)
{
  RequireSameGrid(op, sources);
  spectra.Validate();
  const Index k = sources.count();
  MatrixXcd v(op.grid().size(), k * spectra.size());
  const MatrixXcd g = sources.columns.cast<Complex>();
  for (int j = 0; j < spectra.size(); j++)
  {
    v.middleCols(j * k, k) = ShiftedSolver(op, spectra.points[j], options).Solve(g);
  }
  return v;
}

MatrixXcd SnapshotDerivatives(const DiscreteOperator &op, const SourceSet &sources,
                              const SpectralSet &spectra, ShiftOptions options)
{
  RequireSameGrid(op, sources);
  spectra.Validate();
  Require(spectra.real(), "snapshot derivatives are defined for real spectral points");
  const Index k = sources.count();
  MatrixXcd dv(op.grid().size(), k * spectra.size());
  const MatrixXcd g = sources.columns.cast<Complex>();
  for (int j = 0; j < spectra.size(); j++)
  {
    ShiftedSolver solver(op, spectra.points[j], options);
    const MatrixXcd u = solver.Solve(g);
    dv.middleCols(j * k, k) = -solver.Solve(u);
  }
  return dv;
}

TransferData SimulateTransferData(const DiscreteOperator &op, const SourceSet &sources,
                                  const SpectralSet &spectra, ShiftOptions options)
{
  RequireSameGrid(op, sources);
  spectra.Validate();
  TransferData data;
  data.spectra = spectra;
  const MatrixXcd g = sources.columns.cast<Complex>();
  const MatrixXcd wg = op.grid().weights().cast<Complex>().asDiagonal() * g;
  for (const Complex lambda : spectra.points)
  {
    ShiftedSolver solver(op, lambda, options);
    const MatrixXcd u = solver.Solve(g);
    data.values.push_back(Symmetrized(wg.transpose() * u));
    if (spectra.real())
    {
      const MatrixXd ur = u.real();
      const MatrixXd d = -(ur.transpose() * (op.grid().weights().asDiagonal() * ur));
      data.derivatives.push_back(0.5 * (d + d.transpose()));
      data.values.back() = data.values.back().real().cast<Complex>();
    }
  }
  return data;
}

}  // namespace lslinv
