#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Core value types shared by every component: bipartite dimensions, dense
// operators on C^m (x) C^n, Schmidt spectra, and (possibly unnormalized)
// state vectors.  The composite basis ordering is |ij> -> i*n + j throughout.

namespace sfr {

using cd_t = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Library-wide default tolerances.
constexpr double kHermTol = 1e-12;       // max |A - A^dag| entry for "Hermitian"
constexpr double kEigResidualTol = 1e-10;  // eigen/SVD reconstruction residual
constexpr double kPsdTol = -1e-10;       // eigenvalues >= kPsdTol count as nonnegative
constexpr double kTraceTol = 1e-10;      // |tr X - 1| for "trace one"
constexpr double kRemainderTol = -1e-12; // diagonal remainder entries >= this
constexpr double kSeesawMargin = 1e-9;   // see-saw minimum below this => not blockpositive

// Thrown when a bisection oracle cannot decide membership at some lambda.
class UnresolvedError : public std::runtime_error {
 public:
  UnresolvedError(const std::string& what, double lambda)
      : std::runtime_error(what), lambda_(lambda) {}
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

// Thrown when an iterative solver fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct Dims {
  int m = 0;
  int n = 0;

  int total() const { return m * n; }
  int min_dim() const { return m < n ? m : n; }
  bool operator==(const Dims&) const = default;
};

// Dense operator on C^m (x) C^n in the product basis.  Hermiticity is not
// forced at construction (partial transposes of witnesses stay Hermitian, but
// intermediate values need not be); callers check where contracts demand it.
class BipartiteOperator {
 public:
  BipartiteOperator(Dims dims, Matrix a);

  const Matrix& matrix() const { return a_; }
  Matrix& matrix() { return a_; }
  Dims dims() const { return dims_; }
  double trace_real() const { return a_.trace().real(); }
  bool is_hermitian(double tol = kHermTol) const;
  void require_hermitian(const char* who, double tol = kHermTol) const;
  void require_trace_one(const char* who, double tol = kTraceTol) const;

  // rho_* = I/(mn), the maximally mixed state every family passes through.
  static BipartiteOperator maximally_mixed(Dims dims);

 private:
  Dims dims_;
  Matrix a_;
};

// Schmidt coefficients p_0 >= ... >= p_{n-1} >= 0 with sum of squares 1.
class SchmidtSpectrum {
 public:
  // From amplitudes p_i (validated: descending, nonnegative, sum p^2 = 1).
  explicit SchmidtSpectrum(std::vector<double> p);

  // From squared weights (e.g. {0.5, 0.3, 0.2}); takes square roots.
  static SchmidtSpectrum from_squares(const std::vector<double>& squares);
  static SchmidtSpectrum isotropic(int n);

  int n() const { return static_cast<int>(p_.size()); }
  double p(int i) const { return p_.at(i); }
  const std::vector<double>& coefficients() const { return p_; }
  std::vector<double> squares() const;
  bool is_isotropic(double tol = 1e-12) const;

  // |xi> = sum_i p_i |ii> in C^n (x) C^n (unit norm).
  Vector vector() const;

 private:
  std::vector<double> p_;
};

// Vector in C^m (x) C^n.  Norm is tracked rather than forced: decomposition
// terms are stored unnormalized, with their weights absorbing the norms.
struct PureStateVector {
  Dims dims;
  Vector amplitudes;

  double norm() const { return amplitudes.norm(); }
  PureStateVector normalized() const;
  bool is_normalized(double tol = 1e-12) const;
};

}  // namespace sfr
