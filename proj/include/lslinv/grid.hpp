#ifndef LSLINV_GRID_HPP
#define LSLINV_GRID_HPP

#include <array>
#include <vector>

#include "lslinv/common.hpp"

namespace lslinv
{

using Point = std::array<double, 2>;

//
// Uniform tensor grid on (0, Lx) or (0, Lx) x (0, Ly) with nodes on the boundary and
// trapezoidal quadrature weights. Node k of a 2D grid is (i, j) with k = i + nx * j, i.e.
// axis 0 varies fastest. Every inner product in the library uses these weights.
//
class Grid
{
public:
  Grid() = default;

  static Grid Line(double length, int nodes);
  static Grid Rectangle(double lx, double ly, int nx, int ny);

  int dim() const { return dim_; }
  int nodes(int axis) const { return counts_[axis]; }
  double extent(int axis) const { return extents_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  Index size() const { return static_cast<Index>(counts_[0]) * counts_[1]; }

  const VectorXd &weights() const { return weights_; }
  double measure() const { return extents_[0] * (dim_ == 2 ? extents_[1] : 1.0); }

  Index index(int i, int j = 0) const { return i + static_cast<Index>(counts_[0]) * j; }
  Point coords(Index k) const;
  Index NearestNode(const Point &x) const;
  bool Contains(const Point &x) const;

  // Grid whose nodes include every node of this one: spacing divided by factor.
  Grid Refined(int factor) const;

  bool operator==(const Grid &other) const
  {
    return dim_ == other.dim_ && counts_ == other.counts_ && extents_ == other.extents_;
  }
  bool operator!=(const Grid &other) const { return !(*this == other); }

private:
  int dim_ = 0;
  std::array<int, 2> counts_{0, 1};
  std::array<double, 2> extents_{0.0, 0.0};
  std::array<double, 2> spacing_{0.0, 0.0};
  VectorXd weights_;
};

// Nodal values of a field on a grid.
struct GridFunction
{
  Grid grid;
  VectorXcd values;

  GridFunction() = default;
  GridFunction(Grid g, VectorXcd v);

  static GridFunction Real(Grid g, const VectorXd &v);
  static GridFunction Zero(const Grid &g);

  bool IsReal(double tol = 0.0) const;
  VectorXd RealValues() const { return values.real(); }
};

// Weighted inner product sum_i w_i conj(a_i) b_i.
Complex Inner(const Grid &grid, const VectorXcd &a, const VectorXcd &b);
double Norm(const Grid &grid, const VectorXcd &a);
double Norm(const Grid &grid, const VectorXd &a);

// Gram matrix A^* diag(w) B of two column blocks.
MatrixXcd Gram(const Grid &grid, const MatrixXcd &a, const MatrixXcd &b);

// Values of a field on a fine grid (Refined(factor)) at the nodes of the coarse grid.
VectorXcd Restrict(const Grid &fine, const Grid &coarse, const VectorXcd &values);
MatrixXcd Restrict(const Grid &fine, const Grid &coarse, const MatrixXcd &values);

}  // namespace lslinv

#endif  // LSLINV_GRID_HPP
