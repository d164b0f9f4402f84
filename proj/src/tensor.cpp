#include "sfr/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace sfr {

double hs_inner(const BipartiteOperator& a, const BipartiteOperator& b) {
  if (!(a.dims() == b.dims())) throw std::invalid_argument("hs_inner: dimension mismatch");
  a.require_hermitian("hs_inner");
  b.require_hermitian("hs_inner");
  // tr(A B) = sum_{rc} A_{rc} conj(B_{rc}) for Hermitian B.
  return a.matrix().cwiseProduct(b.matrix().conjugate()).sum().real();
}

BipartiteOperator partial_transpose(const BipartiteOperator& x) {
  const int m = x.dims().m, n = x.dims().n;
  const Matrix& a = x.matrix();
  Matrix out(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      // Swap the first-factor indices blockwise: out block (i,k) = in block (k,i).
      out.block(i * n, k * n, n, n) = a.block(k * n, i * n, n, n);
  return BipartiteOperator(x.dims(), std::move(out));
}

EigenSystem hermitian_eigen(const BipartiteOperator& x) {
  x.require_hermitian("hermitian_eigen");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.matrix());
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("hermitian_eigen: eigensolver did not converge", -1.0);

  const int d = static_cast<int>(x.matrix().rows());
  EigenSystem sys;
  sys.values.resize(d);
  sys.vectors.resize(d, d);
  for (int i = 0; i < d; ++i) {  // Eigen sorts ascending; flip to descending.
    sys.values(i) = solver.eigenvalues()(d - 1 - i);
    sys.vectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }

  Matrix recon = sys.vectors * sys.values.asDiagonal() * sys.vectors.adjoint();
  double residual = (recon - x.matrix()).cwiseAbs().maxCoeff();
  if (residual > kEigResidualTol)
    throw ConvergenceError("hermitian_eigen: reconstruction residual too large", residual);
  return sys;
}

SchmidtDecomposition schmidt_decompose(const PureStateVector& v) {
  const int m = v.dims.m, n = v.dims.n;
  if (v.amplitudes.size() != m * n)
    throw std::invalid_argument("schmidt_decompose: vector length does not match dims");
  if (!v.is_normalized(1e-10))
    throw std::invalid_argument("schmidt_decompose: vector must have unit norm");

  // Reshape to the m x n coefficient matrix C with C(i,j) = v[i*n + j]; its
  // SVD C = U diag(c) V^dag gives v = sum_a c_a U.col(a) (x) conj(V.col(a)).
  Matrix c(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = v.amplitudes(i * n + j);

  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int r = std::min(m, n);

  SchmidtDecomposition out;
  out.coefficients.assign(svd.singularValues().data(), svd.singularValues().data() + r);
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();

  // Cross-check the expansion against the input vector.
  Vector recon = Vector::Zero(m * n);
  for (int a = 0; a < r; ++a)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        recon(i * n + j) += out.coefficients[a] * out.left(i, a) * out.right(j, a);
  double residual = (recon - v.amplitudes).cwiseAbs().maxCoeff();
  if (residual > kEigResidualTol)
    throw ConvergenceError("schmidt_decompose: reconstruction residual too large", residual);
  return out;
}

BipartiteOperator choi_of_conjugation(const Matrix& s, bool transpose_input) {
  const int m = static_cast<int>(s.rows()), n = static_cast<int>(s.cols());
  if (m < 1 || n < 1) throw std::invalid_argument("choi_of_conjugation: empty matrix");
  Matrix out = Matrix::Zero(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      // Phi(|i><j|) = s^dag |i><j| s = (s^dag e_i)(s^dag e_j)^dag; transposing
      // the input swaps i and j.
      int a = transpose_input ? j : i;
      int b = transpose_input ? i : j;
      Vector u = s.adjoint() * Vector::Unit(m, a);
      Vector w = s.adjoint() * Vector::Unit(m, b);
      out.block(i * n, j * n, n, n) = u * w.adjoint();
    }
  }
  return BipartiteOperator(Dims{m, n}, std::move(out));
}

}  // namespace sfr
