#include "sfr/family.hpp"

#include <cmath>
#include <sstream>

namespace sfr {

OneParamFamily::OneParamFamily(BipartiteOperator rho)
    : rho_(std::move(rho)), rho_star_(BipartiteOperator::maximally_mixed(rho_.dims())) {
  rho_.require_hermitian("OneParamFamily");
  rho_.require_trace_one("OneParamFamily", 1e-12);
  EigenSystem sys = hermitian_eigen(rho_);
  if (sys.values.minCoeff() < kPsdTol) {
    std::ostringstream os;
    os << "OneParamFamily: rho is not positive semidefinite (min eigenvalue "
       << sys.values.minCoeff() << ")";
    throw std::invalid_argument(os.str());
  }
  if ((rho_.matrix() - rho_star_.matrix()).cwiseAbs().maxCoeff() <= 1e-10)
    throw std::invalid_argument("OneParamFamily: rho must differ from the maximally mixed state");
  hs_rho_sq_ = hs_inner(rho_, rho_);
}

OneParamFamily OneParamFamily::from_spectrum(const SchmidtSpectrum& spectrum) {
  Vector xi = spectrum.vector();
  Matrix rho = xi * xi.adjoint();
  return OneParamFamily(BipartiteOperator(Dims{spectrum.n(), spectrum.n()}, std::move(rho)));
}

OneParamFamily OneParamFamily::projection(Dims dims, const Matrix& basis) {
  const int d = static_cast<int>(basis.cols());
  if (basis.rows() != dims.total() || d < 1 || d >= dims.total())
    throw std::invalid_argument("OneParamFamily::projection: basis must be mn x d with 1 <= d < mn");
  Matrix gram = basis.adjoint() * basis;
  if ((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("OneParamFamily::projection: columns must be orthonormal");
  Matrix rho = (basis * basis.adjoint()) / static_cast<double>(d);
  return OneParamFamily(BipartiteOperator(dims, std::move(rho)));
}

OneParamFamily OneParamFamily::diag_two_qubit(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("OneParamFamily::diag_two_qubit: p must lie in [0, 1]");
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = p;        // |00><00|
  rho(1, 1) = 1.0 - p;  // |01><01|
  return OneParamFamily(BipartiteOperator(Dims{2, 2}, std::move(rho)));
}

BipartiteOperator OneParamFamily::state_at(double lambda) const {
  Matrix x = (1.0 - lambda) * rho_star_.matrix() + lambda * rho_.matrix();
  return BipartiteOperator(dims(), std::move(x));
}

double OneParamFamily::pairing(double nu, double lambda) const {
  return pairing_slope() * nu * lambda + 1.0 / dims().total();
}

double OneParamFamily::orthogonal_partner(double nu) const {
  if (nu == 0.0)
    throw std::invalid_argument("orthogonal_partner: nu must be nonzero");
  double mu = -(1.0 / dims().total()) / (pairing_slope() * nu);
  if (!std::isfinite(mu))
    throw std::invalid_argument("orthogonal_partner: partner overflows for this nu");
  return mu;
}

HyperplaneSide OneParamFamily::hyperplane_side(double nu, const BipartiteOperator& x,
                                               double tol) const {
  x.require_trace_one("hyperplane_side");
  double value = hs_inner(x, state_at(nu));
  if (value > tol) return HyperplaneSide::Plus;
  if (value < -tol) return HyperplaneSide::Minus;
  return HyperplaneSide::Zero;
}

double OneParamFamily::perpendicularity_residual(double nu, const BipartiteOperator& x,
                                                 double lambda) const {
  if (lambda == 0.0)
    throw std::invalid_argument("perpendicularity_residual: lambda must be nonzero");
  // <X - X_nu|X_lambda> = lambda <X - X_nu|rho - rho_*> for trace-one X, so
  // dividing out lambda recovers the lambda-independent residual.
  return (hs_inner(x, state_at(lambda)) - pairing(nu, lambda)) / lambda;
}

std::optional<PureFamilyForm> detect_pure_form(const OneParamFamily& family) {
  if (family.dims().m != family.dims().n) return std::nullopt;
  EigenSystem sys = hermitian_eigen(family.rho());
  if (std::abs(sys.values(0) - 1.0) > 1e-10) return std::nullopt;
  PureStateVector xi{family.dims(), sys.vectors.col(0)};
  SchmidtDecomposition sd = schmidt_decompose(xi);
  return PureFamilyForm{SchmidtSpectrum(sd.coefficients), sd.left, sd.right};
}

}  // namespace sfr
