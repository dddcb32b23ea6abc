#ifndef LSLINV_COMMON_HPP
#define LSLINV_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lslinv
{

using Complex = std::complex<double>;
using Index = Eigen::Index;

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Failure categories surfaced by the library. The CLI maps InvalidArgument/Config to exit
// code 2 and every numerical kind to exit code 3.
enum class ErrorKind
{
  InvalidArgument,
  Config,
  Io,
  NearSingularShift,
  SingularShift,
  IllConditionedMass,
  RankDeficientBlock,
  AllTruncated,
};

const char *ToString(ErrorKind kind);

class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(ToString(kind)) + ": " + what), kind_(kind), detail_(what)
  {
  }

  ErrorKind kind() const { return kind_; }

  // Message without the kind prefix.
  const std::string &detail() const { return detail_; }

  // True for failures caused by the numbers rather than by the inputs' shape.
  bool numerical() const
  {
    return kind_ != ErrorKind::InvalidArgument && kind_ != ErrorKind::Config &&
           kind_ != ErrorKind::Io;
  }

private:
  ErrorKind kind_;
  std::string detail_;
};

inline void Require(bool condition, const std::string &what)
{
  if (!condition)
  {
    throw Error(ErrorKind::InvalidArgument, what);
  }
}

// Largest absolute entry, the norm used by most tolerances in this library.
template <typename Derived>
double MaxAbs(const Eigen::MatrixBase<Derived> &m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Explicit Hermitian part (A + A^*)/2.
inline MatrixXcd Hermitian(const MatrixXcd &a)
{
  return 0.5 * (a + a.adjoint());
}

}  // namespace lslinv

#endif  // LSLINV_COMMON_HPP
