// Core Liouville-space types: density matrices, superoperators and the
// row-major vectorization convention used throughout.
//
// Convention: vec(rho)[i*d + j] = rho(i, j).  Under this convention an
// operator A acting from the left maps to A (x) I, and an operator B acting
// from the right maps to I (x) B^T.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace pild {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;

/// Invalid user input: config fields, matrices violating their contracts.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Refused resource request (memory budget, path enumeration budget).
class ResourceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure: quadrature non-convergence, step underflow, non-finite
/// intermediates.
class NumericalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// max_ij |m - m^dag|
double hermiticity_residual(const Matrix& m);

/// Row-major vectorization, rho(i,j) -> vec[i*d + j].
Vector vectorize(const Matrix& rho);

/// Inverse of vectorize; the vector length must be a perfect square.
Matrix unvectorize(const Vector& v);

Matrix kron(const Matrix& a, const Matrix& b);

/// d x d complex Hermitian unit-trace matrix.  Construction through
/// from_matrix() enforces Hermiticity and unit trace to 1e-12 and refuses
/// (rather than repairs) violations.  Propagation outputs are wrapped with
/// raw(); their drift is monitored by the callers, never silently fixed.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(Matrix m);
  static DensityMatrix raw(Matrix m);
  /// |index><index| in the d-dimensional computational basis.
  static DensityMatrix basis_state(int dim, int index);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Vector vec() const { return vectorize(m_); }

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// d^2 x d^2 complex matrix acting on vectorized density matrices.
/// Liouvillians, one-step propagators, dynamical maps and transfer tensors
/// all share this shape.
struct SuperOperator {
  Matrix m;

  SuperOperator() = default;
  explicit SuperOperator(Matrix mat);

  static SuperOperator identity(int dim);
  static SuperOperator zero(int dim);

  /// System dimension d (the matrix is d^2 x d^2).
  int dim() const;

  Vector apply(const Vector& v) const { return m * v; }
  Matrix apply(const Matrix& rho) const { return unvectorize(m * vectorize(rho)); }

  /// Composition: (a * b) acts as "b first, then a".
  friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
  friend SuperOperator operator*(Complex c, const SuperOperator& a);
};

/// vec(I)^dag * s == vec(I)^dag within tol, i.e. Tr(s rho) = Tr(rho).
bool is_trace_preserving(const SuperOperator& s, double tol = 1e-10);

/// Choi matrix of the map: C[i*d+k, j*d+l] = s.m[i*d+j, k*d+l].
/// The map is completely positive iff the Choi matrix is positive
/// semidefinite.
Matrix choi_matrix(const SuperOperator& s);

/// Smallest eigenvalue of the (Hermitized) Choi matrix; >= -tol indicates a
/// completely positive map.
double min_choi_eigenvalue(const SuperOperator& s);

}  // namespace pild
