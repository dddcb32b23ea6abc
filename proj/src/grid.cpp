#include "lslinv/grid.hpp"

#include <cmath>

namespace lslinv
{

const char *ToString(ErrorKind kind)
{
  switch (kind)
  {
    case ErrorKind::InvalidArgument:
      return "InvalidArgument";
    case ErrorKind::Config:
      return "ConfigError";
    case ErrorKind::Io:
      return "IoError";
    case ErrorKind::NearSingularShift:
      return "NearSingularShift";
    case ErrorKind::SingularShift:
      return "SingularShift";
    case ErrorKind::IllConditionedMass:
      return "IllConditionedMass";
    case ErrorKind::RankDeficientBlock:
      return "RankDeficientBlock";
    case ErrorKind::AllTruncated:
      return "AllTruncated";
  }
  return "Unknown";
}

namespace
{

VectorXd TrapezoidWeights(int n, double h)
{
  VectorXd w = VectorXd::Constant(n, h);
  if (n > 1)
  {
    w(0) *= 0.5;
    w(n - 1) *= 0.5;
  }
  return w;
}

}  // namespace

Grid Grid::Line(double length, int nodes)
{
  Require(length > 0.0 && std::isfinite(length), "grid length must be positive and finite");
  Require(nodes >= 2, "grid needs at least two nodes per axis");
  Grid g;
  g.dim_ = 1;
  g.counts_ = {nodes, 1};
  g.extents_ = {length, 0.0};
  g.spacing_ = {length / (nodes - 1), 0.0};
  g.weights_ = TrapezoidWeights(nodes, g.spacing_[0]);
  return g;
}

Grid Grid::Rectangle(double lx, double ly, int nx, int ny)
{
  Require(lx > 0.0 && ly > 0.0 && std::isfinite(lx) && std::isfinite(ly),
          "grid extents must be positive and finite");
  Require(nx >= 2 && ny >= 2, "grid needs at least two nodes per axis");
  Grid g;
  g.dim_ = 2;
  g.counts_ = {nx, ny};
  g.extents_ = {lx, ly};
  g.spacing_ = {lx / (nx - 1), ly / (ny - 1)};
  const VectorXd wx = TrapezoidWeights(nx, g.spacing_[0]);
  const VectorXd wy = TrapezoidWeights(ny, g.spacing_[1]);
  g.weights_.resize(g.size());
  for (int j = 0; j < ny; j++)
  {
    for (int i = 0; i < nx; i++)
    {
      g.weights_(g.index(i, j)) = wx(i) * wy(j);
    }
  }
  return g;
}

Point Grid::coords(Index k) const
{
  const Index i = k % counts_[0];
  const Index j = k / counts_[0];
  return {static_cast<double>(i) * spacing_[0], static_cast<double>(j) * spacing_[1]};
}

bool Grid::Contains(const Point &x) const
{
  const double eps = 1e-12 * std::max(extents_[0], extents_[1]);
  if (x[0] < -eps || x[0] > extents_[0] + eps)
  {
    return false;
  }
  if (dim_ == 2 && (x[1] < -eps || x[1] > extents_[1] + eps))
  {
    return false;
  }
  return true;
}

Index Grid::NearestNode(const Point &x) const
{
  Require(Contains(x), "point lies outside the grid domain");
  auto nearest = [](double xi, double h, int n)
  {
    const long k = std::lround(xi / h);
    return static_cast<int>(std::clamp<long>(k, 0, n - 1));
  };
  const int i = nearest(x[0], spacing_[0], counts_[0]);
  const int j = dim_ == 2 ? nearest(x[1], spacing_[1], counts_[1]) : 0;
  return index(i, j);
}

Grid Grid::Refined(int factor) const
{
  Require(factor >= 1, "refinement factor must be positive");
  if (dim_ == 1)
  {
    return Line(extents_[0], factor * (counts_[0] - 1) + 1);
  }
  return Rectangle(extents_[0], extents_[1], factor * (counts_[0] - 1) + 1,
                   factor * (counts_[1] - 1) + 1);
}

GridFunction::GridFunction(Grid g, VectorXcd v) : grid(std::move(g)), values(std::move(v))
{
  Require(values.size() == grid.size(), "grid function size does not match grid");
}

GridFunction GridFunction::Real(Grid g, const VectorXd &v)
{
  return GridFunction(std::move(g), v.cast<Complex>());
}

GridFunction GridFunction::Zero(const Grid &g)
{
  return GridFunction(g, VectorXcd::Zero(g.size()));
}

bool GridFunction::IsReal(double tol) const
{
  return values.size() == 0 || values.imag().cwiseAbs().maxCoeff() <= tol;
}

Complex Inner(const Grid &grid, const VectorXcd &a, const VectorXcd &b)
{
  Require(a.size() == grid.size() && b.size() == grid.size(), "inner product size mismatch");
  return a.dot(grid.weights().cast<Complex>().cwiseProduct(b));
}

double Norm(const Grid &grid, const VectorXcd &a)
{
  Require(a.size() == grid.size(), "norm size mismatch");
  return std::sqrt(grid.weights().dot(a.cwiseAbs2()));
}

double Norm(const Grid &grid, const VectorXd &a)
{
  Require(a.size() == grid.size(), "norm size mismatch");
  return std::sqrt(grid.weights().dot(a.cwiseAbs2()));
}

MatrixXcd Gram(const Grid &grid, const MatrixXcd &a, const MatrixXcd &b)
{
  Require(a.rows() == grid.size() && b.rows() == grid.size(), "Gram size mismatch");
  return a.adjoint() * (grid.weights().cast<Complex>().asDiagonal() * b);
}

MatrixXcd Restrict(const Grid &fine, const Grid &coarse, const MatrixXcd &values)
{
  Require(values.rows() == fine.size(), "restriction input does not match fine grid");
  Require(fine.dim() == coarse.dim(), "restriction between grids of different dimension");
  const int fx = (fine.nodes(0) - 1) / (coarse.nodes(0) - 1);
  const int fy = fine.dim() == 2 ? (fine.nodes(1) - 1) / (coarse.nodes(1) - 1) : 1;
  Require(coarse.Refined(fx) == fine && (fine.dim() == 1 || fx == fy),
          "fine grid is not a uniform refinement of the coarse grid");
  MatrixXcd out(coarse.size(), values.cols());
  for (int j = 0; j < coarse.nodes(1); j++)
  {
    for (int i = 0; i < coarse.nodes(0); i++)
    {
      out.row(coarse.index(i, j)) = values.row(fine.index(fx * i, fy * j));
    }
  }
  return out;
}

VectorXcd Restrict(const Grid &fine, const Grid &coarse, const VectorXcd &values)
{
  return Restrict(fine, coarse, MatrixXcd(values));
}

}  // namespace lslinv
