#pragma once

#include "sfr/family.hpp"

#include <optional>

// Constructive separability certificates and entanglement witnesses for the
// pure-state families.  A ProductDecomposition writes a target state as a
// positive combination of product-vector projectors plus a nonnegative
// diagonal remainder; its existence certifies separability.

namespace sfr {

struct ProductTerm {
  double weight = 0.0;  // strictly positive
  Vector amplitudes;    // unnormalized product vector; weight absorbs the norm
};

struct ProductDecomposition {
  BipartiteOperator target;
  std::vector<ProductTerm> terms;
  Eigen::VectorXd remainder;  // diagonal entries, nonnegative
};

struct DecompositionCheck {
  double residual = 0.0;       // max-entry |target - reconstruction|
  double min_remainder = 0.0;  // smallest diagonal remainder entry
  bool all_rank_one = true;    // every term is a product vector within 1e-10

  bool ok(double residual_tol = 1e-10) const {
    return residual <= residual_tol && min_remainder >= kRemainderTol && all_rank_one;
  }
};

// sum_t w_t |v_t><v_t| + diag(remainder).
Matrix reconstruction(const ProductDecomposition& d);

// Recomputes the reconstruction, the remainder floor, and the Schmidt-rank-one
// property of every term (terms are normalized on the fly for the rank check).
DecompositionCheck verify_decomposition(const ProductDecomposition& d);

// Family parameters of the two constructive targets.
double sigma_plus_parameter(const SchmidtSpectrum& spectrum);   // 1/(1 + n^2 p_0 p_1)
double delta_minus_parameter(const SchmidtSpectrum& spectrum);  // -1/(n^2 - 1)

// Phase vector |eta_alpha> = sum_{ij} sqrt(p_i p_j) alpha_i conj(alpha_j) |ij>
// for unimodular phases alpha; a product vector of norm (sum_i p_i).
Vector eta_alpha(const SchmidtSpectrum& spectrum, const std::vector<cd_t>& phases);

// Certificate for X_mu at mu = 1/(1 + n^2 p_0 p_1), the largest separable
// parameter: a uniform mixture of |eta_alpha> over the 4^(n-1) fourth-root
// phase tuples with alpha_0 = 1, plus a diagonal remainder.
ProductDecomposition decompose_sigma_plus(const SchmidtSpectrum& spectrum);

// Pair vector (sqrt(p_j)|i> + alpha sqrt(p_i)|j>) (x) (sqrt(p_j)|i> - conj(alpha) sqrt(p_i)|j>)
// for i > j and unimodular alpha.
Vector eta_ij_alpha(const SchmidtSpectrum& spectrum, int i, int j, cd_t alpha);

// Certificate for X at the lower density endpoint -1/(n^2 - 1): the pair
// vectors over all i > j and fourth-root phases, weight 1/(4(n^2-1)) each,
// plus a diagonal remainder with entries (1 - p_i p_j)/(n^2 - 1).
ProductDecomposition decompose_delta_minus(const SchmidtSpectrum& spectrum);

struct WitnessBundle {
  BipartiteOperator witness;  // trace-one witness supported on the (i,j) pair
  double nu = 0.0;            // hyperplane parameter -(n^2 p_i p_j + 1)/(n^2 - 1)
  double action = 0.0;        // <W|rho> = -p_i p_j
};

// The pair witness (1/(2 p_i p_j)) PT(rho_ij) together with the parameter of
// the perpendicular hyperplane it sits on.  Requires i > j and p_i p_j > 0.
WitnessBundle witness_bundle(const SchmidtSpectrum& spectrum, int i, int j);

struct WitnessDecomposition {
  double scale = 0.0;                    // n^2 p_0^2 - 1
  BipartiteOperator target;              // X at the lower blockpositive endpoint
  std::vector<BipartiteOperator> terms;  // PT(rho_ij) for i > j
  Eigen::VectorXd diagonal;              // scale * target - sum(terms); nonnegative
};

// Writes (n^2 p_0^2 - 1) X at the lower blockpositive endpoint as the sum of
// the pair witnesses PT(rho_ij) plus a nonnegative diagonal.
WitnessDecomposition beta_witness_decomposition(const SchmidtSpectrum& spectrum);

// Convex blend t*a + (1-t)*b of two decompositions on the same dims, t in [0,1].
ProductDecomposition blend(const ProductDecomposition& a, const ProductDecomposition& b,
                           double t);

// Certificate for the family state X_lambda of a pure spectrum, available for
// every lambda between the two constructive targets (their convex blend);
// nullopt outside [delta_minus, sigma_plus].
std::optional<ProductDecomposition> certify_family_state(const SchmidtSpectrum& spectrum,
                                                         double lambda);

// Conjugates a decomposition by the local unitary U (x) W.  The rotated
// remainder is no longer diagonal in the computational basis, so its entries
// are re-expressed as product terms |u_i (x) w_j>.
ProductDecomposition rotate(const ProductDecomposition& d, const Matrix& u, const Matrix& w);

// (U (x) W) v without forming the Kronecker product.
Vector apply_local(const Matrix& u, const Matrix& w, const Vector& v);

}  // namespace sfr
