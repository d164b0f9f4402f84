#pragma once

#include "sfr/tensor.hpp"
#include "sfr/types.hpp"

#include <optional>

// One-parameter families X_lambda = (1-lambda) rho_* + lambda rho of
// trace-one Hermitian operators through the maximally mixed state, and the
// affine pairing machinery that links supporting hyperplanes of a convex body
// to membership endpoints of its dual along the same line.

namespace sfr {

enum class HyperplaneSide { Minus, Zero, Plus };

class OneParamFamily {
 public:
  // rho must be a state: Hermitian, trace one (1e-12), PSD (eigenvalues
  // >= -1e-10), and distinct from rho_* (max-entry distance > 1e-10).
  explicit OneParamFamily(BipartiteOperator rho);

  // Pure family through |xi><xi| with xi = sum_i p_i |ii> in C^n (x) C^n.
  static OneParamFamily from_spectrum(const SchmidtSpectrum& spectrum);

  // Projection family through rho_E = P_E / d for a subspace E given by an
  // mn x d matrix with orthonormal columns.
  static OneParamFamily projection(Dims dims, const Matrix& basis);

  // Normalized diagonal two-qubit family through p|00><00| + (1-p)|01><01|.
  static OneParamFamily diag_two_qubit(double p);

  Dims dims() const { return rho_.dims(); }
  const BipartiteOperator& rho() const { return rho_; }
  const BipartiteOperator& rho_star() const { return rho_star_; }
  double hs_rho_sq() const { return hs_rho_sq_; }
  // Slope of the pairing form: <rho|rho> - 1/(mn), strictly positive.
  double pairing_slope() const { return hs_rho_sq_ - 1.0 / dims().total(); }

  // X_lambda = (1-lambda) rho_* + lambda rho.
  BipartiteOperator state_at(double lambda) const;

  // <X_nu|X_lambda> = (<rho|rho> - 1/mn) nu lambda + 1/mn, evaluated in
  // closed form; strictly increasing in nu whenever lambda > 0.
  double pairing(double nu, double lambda) const;

  // The unique mu with <X_nu|X_mu> = 0; an involution with nu*mu < 0.
  double orthogonal_partner(double nu) const;

  // Classifies trace-one Hermitian X against the hyperplane {Y: <Y|X_nu> = 0}
  // via the sign of <X|X_nu>; family members land on Zero exactly at the
  // orthogonal partner of nu.
  HyperplaneSide hyperplane_side(double nu, const BipartiteOperator& x,
                                 double tol = 1e-9) const;

  // <X - X_nu|rho - rho_*>; zero exactly when X lies on the hyperplane, or
  // equivalently when <X|X_lambda> = pairing(nu, lambda) for any lambda != 0.
  double perpendicularity_residual(double nu, const BipartiteOperator& x,
                                   double lambda) const;

 private:
  BipartiteOperator rho_;
  BipartiteOperator rho_star_;
  double hs_rho_sq_ = 0.0;
};

// If rho is pure (top eigenvalue 1 within 1e-10) on square dims, returns its
// Schmidt data: the spectrum plus the local bases U, W with
// xi = (U (x) W) sum_i p_i |ii>.  Empty otherwise.
struct PureFamilyForm {
  SchmidtSpectrum spectrum;
  Matrix left;   // n x n unitary
  Matrix right;  // n x n unitary
};
std::optional<PureFamilyForm> detect_pure_form(const OneParamFamily& family);

}  // namespace sfr
