#include "sfr/types.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace sfr {

BipartiteOperator::BipartiteOperator(Dims dims, Matrix a) : dims_(dims), a_(std::move(a)) {
  if (dims_.m < 1 || dims_.n < 1)
    throw std::invalid_argument("BipartiteOperator: dimensions must be positive");
  if (a_.rows() != dims_.total() || a_.cols() != dims_.total()) {
    std::ostringstream os;
    os << "BipartiteOperator: matrix is " << a_.rows() << "x" << a_.cols()
       << " but dims give " << dims_.total();
    throw std::invalid_argument(os.str());
  }
}

bool BipartiteOperator::is_hermitian(double tol) const {
  return (a_ - a_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void BipartiteOperator::require_hermitian(const char* who, double tol) const {
  if (!is_hermitian(tol)) {
    std::ostringstream os;
    os << who << ": operator is not Hermitian (max |A - A^dag| = "
       << (a_ - a_.adjoint()).cwiseAbs().maxCoeff() << ")";
    throw std::invalid_argument(os.str());
  }
}

void BipartiteOperator::require_trace_one(const char* who, double tol) const {
  cd_t tr = a_.trace();
  if (std::abs(tr - cd_t(1.0, 0.0)) > tol) {
    std::ostringstream os;
    os << who << ": operator must have trace one, got " << tr.real();
    throw std::invalid_argument(os.str());
  }
}

BipartiteOperator BipartiteOperator::maximally_mixed(Dims dims) {
  int d = dims.m * dims.n;
  if (d < 1) throw std::invalid_argument("maximally_mixed: dimensions must be positive");
  return BipartiteOperator(dims, Matrix::Identity(d, d) / static_cast<double>(d));
}

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("SchmidtSpectrum: empty coefficient list");
  double sumsq = 0.0;
  for (size_t i = 0; i < p_.size(); ++i) {
    if (p_[i] < 0.0)
      throw std::invalid_argument("SchmidtSpectrum: coefficients must be nonnegative");
    if (i > 0 && p_[i] > p_[i - 1] + 1e-12)
      throw std::invalid_argument("SchmidtSpectrum: coefficients must be descending");
    sumsq += p_[i] * p_[i];
  }
  if (std::abs(sumsq - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "SchmidtSpectrum: squared coefficients must sum to 1, got " << sumsq;
    throw std::invalid_argument(os.str());
  }
}

SchmidtSpectrum SchmidtSpectrum::from_squares(const std::vector<double>& squares) {
  std::vector<double> p(squares.size());
  for (size_t i = 0; i < squares.size(); ++i) {
    if (squares[i] < 0.0)
      throw std::invalid_argument("SchmidtSpectrum: squared weights must be nonnegative");
    p[i] = std::sqrt(squares[i]);
  }
  return SchmidtSpectrum(std::move(p));
}

SchmidtSpectrum SchmidtSpectrum::isotropic(int n) {
  if (n < 1) throw std::invalid_argument("SchmidtSpectrum: n must be positive");
  return SchmidtSpectrum(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

std::vector<double> SchmidtSpectrum::squares() const {
  std::vector<double> s(p_.size());
  for (size_t i = 0; i < p_.size(); ++i) s[i] = p_[i] * p_[i];
  return s;
}

bool SchmidtSpectrum::is_isotropic(double tol) const {
  for (double v : p_)
    if (std::abs(v - p_[0]) > tol) return false;
  return true;
}

Vector SchmidtSpectrum::vector() const {
  int nn = n();
  Vector xi = Vector::Zero(nn * nn);
  for (int i = 0; i < nn; ++i) xi(i * nn + i) = p_[i];
  return xi;
}

PureStateVector PureStateVector::normalized() const {
  double nrm = norm();
  if (nrm <= 0.0) throw std::invalid_argument("PureStateVector: cannot normalize zero vector");
  return PureStateVector{dims, amplitudes / nrm};
}

bool PureStateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

}  // namespace sfr
