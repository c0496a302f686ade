#include "pild/types.hpp"

#include <cmath>

namespace pild {

double hermiticity_residual(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Vector vectorize(const Matrix& rho) {
  const auto d = rho.rows();
  if (rho.cols() != d) throw ValidationError("vectorize: matrix must be square");
  Vector v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  return v;
}

Matrix unvectorize(const Vector& v) {
  const auto n = v.size();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw ValidationError("unvectorize: length is not a perfect square");
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = v(i * d + j);
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      c.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return c;
}

DensityMatrix DensityMatrix::from_matrix(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw ValidationError("DensityMatrix: matrix must be square and non-empty");
  const double herm = hermiticity_residual(m);
  if (herm > kHermitianTol)
    throw ValidationError("DensityMatrix: not Hermitian (residual " + std::to_string(herm) +
                          "); symmetrization is refused, fix the input");
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError("DensityMatrix: trace deviates from 1 by " +
                          std::to_string(std::abs(tr - 1.0)));
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::raw(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw ValidationError("DensityMatrix: matrix must be square and non-empty");
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  if (index < 0 || index >= dim)
    throw ValidationError("DensityMatrix: basis index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

SuperOperator::SuperOperator(Matrix mat) : m(std::move(mat)) {
  if (m.rows() != m.cols()) throw ValidationError("SuperOperator: matrix must be square");
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (d * d != m.rows())
    throw ValidationError("SuperOperator: side length must be a perfect square");
}

SuperOperator SuperOperator::identity(int dim) {
  return SuperOperator(Matrix::Identity(dim * dim, dim * dim));
}

SuperOperator SuperOperator::zero(int dim) {
  return SuperOperator(Matrix::Zero(dim * dim, dim * dim));
}

int SuperOperator::dim() const {
  return static_cast<int>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
}

SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
  return SuperOperator(a.m * b.m);
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  return SuperOperator(a.m + b.m);
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
  return SuperOperator(a.m - b.m);
}

SuperOperator operator*(Complex c, const SuperOperator& a) { return SuperOperator(c * a.m); }

bool is_trace_preserving(const SuperOperator& s, double tol) {
  const int d = s.dim();
  // vec(I)^dag * m: sum the rows belonging to diagonal elements (i,i).
  for (Eigen::Index col = 0; col < s.m.cols(); ++col) {
    Complex sum = 0.0;
    for (int i = 0; i < d; ++i) sum += s.m(static_cast<Eigen::Index>(i) * d + i, col);
    const Complex expected = (col % (d + 1) == 0) ? 1.0 : 0.0;
    if (std::abs(sum - expected) > tol) return false;
  }
  return true;
}

Matrix choi_matrix(const SuperOperator& s) {
  const int d = s.dim();
  Matrix c(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) c(i * d + k, j * d + l) = s.m(i * d + j, k * d + l);
  return c;
}

double min_choi_eigenvalue(const SuperOperator& s) {
  Matrix c = choi_matrix(s);
  const Matrix h = 0.5 * (c + c.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace pild
