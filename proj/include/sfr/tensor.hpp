#pragma once

#include "sfr/types.hpp"

// Basic linear-algebra operations on bipartite operators: the Hilbert-Schmidt
// pairing, partial transposition on the first factor, Hermitian spectra, and
// Schmidt/Choi constructions for vectors and conjugation maps.

namespace sfr {

// <A|B> = tr(A B) for Hermitian A, B; real by symmetry.  Throws on dimension
// mismatch or if either argument fails the Hermiticity check.
double hs_inner(const BipartiteOperator& a, const BipartiteOperator& b);

// Transpose of the first tensor factor: (PT X)_{(ij),(kl)} = X_{(kj),(il)}.
// An involution that preserves trace and the Hilbert-Schmidt pairing.
BipartiteOperator partial_transpose(const BipartiteOperator& x);

struct EigenSystem {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // orthonormal columns, aligned with `values`
};

// Spectral decomposition of a Hermitian operator, eigenvalues descending.
// The reconstruction sum(values_i |v_i><v_i|) is checked against the input.
EigenSystem hermitian_eigen(const BipartiteOperator& x);

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // descending, >= 0, squares sum to 1
  Matrix left;                       // m x min(m,n), orthonormal columns
  Matrix right;                      // n x min(m,n), orthonormal columns
};

// Schmidt decomposition of a unit vector: v = sum_a c_a left_a (x) right_a.
SchmidtDecomposition schmidt_decompose(const PureStateVector& v);

// Choi matrix sum_{ij} |i><j| (x) Phi(|i><j|) of the conjugation map
// Phi(a) = s^dag a s, or Phi(a) = s^dag a^t s when transpose_input is set.
// For an m x n matrix s the result lives on C^m (x) C^n.
BipartiteOperator choi_of_conjugation(const Matrix& s, bool transpose_input);

}  // namespace sfr
