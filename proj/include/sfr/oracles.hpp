#pragma once

#include "sfr/decompositions.hpp"
#include "sfr/seesaw.hpp"

#include <memory>
#include <variant>

// Membership oracles for the nested convex bodies along a family: density
// states, PPT states, separable states, and k-blockpositive trace-one
// operators.  Every Out verdict carries a certificate that re-verifies
// independently; In verdicts are definitive where the test is spectral and
// heuristic (see-saw) for blockpositivity below the top Schmidt rank.

namespace sfr {

enum class Status { In, Out, Unknown };

// <v|X|v> < 0 for a negative eigenvector of X.
struct EigenvectorWitness {
  Vector vector;
};

// <v|PT(X)|v> < 0: the vector witnesses the partial transpose, and equally
// the blockpositive witness PT(|v><v|) against X itself.
struct PptEigenvectorWitness {
  Vector vector;
};

// <v|X|v> < 0 for a vector of Schmidt rank <= k.
struct ProductVectorWitness {
  Vector vector;
  int k = 1;
};

// A verified product decomposition certifying separability.
struct DecompositionRef {
  std::shared_ptr<const ProductDecomposition> decomposition;
};

// A named decision rule (e.g. "psd", "ppt-low-dim", "see-saw-nonnegative").
struct ClosedFormRule {
  std::string name;
};

using Certificate = std::variant<std::monostate, EigenvectorWitness, PptEigenvectorWitness,
                                 ProductVectorWitness, DecompositionRef, ClosedFormRule>;

struct MembershipVerdict {
  Status status = Status::Unknown;
  double margin = 0.0;  // signed distance proxy: minimal eigenvalue or product expectation
  Certificate certificate;
};

// Is X a state: Hermitian, trace one (required, 1e-10), eigenvalues >= -1e-10.
MembershipVerdict is_density(const BipartiteOperator& x);

// Are X and PT(X) both positive semidefinite.  The certificate records which
// side failed through its type.
MembershipVerdict is_ppt(const BipartiteOperator& x);

// Is <v|X|v> >= 0 for every product of Schmidt rank <= k.  Definitive for
// PSD inputs and for k = min(m,n); otherwise a negative see-saw value below
// -1e-9 gives a definitive Out, and a nonnegative search result gives a
// heuristic In (Unknown when cfg.strict).
MembershipVerdict is_blockpositive_k(const BipartiteOperator& x, int k,
                                     const SeeSawConfig& cfg = {});

enum class SeparabilityStrategy {
  LowDim,        // PPT decides on 2x2 and 2x3/3x2
  Certificate,   // verified product decomposition (constructive targets only)
  WitnessSearch  // blockpositive witness with negative action on X
};

// Separability of a state X under the chosen strategy; Unknown when the
// strategy cannot decide.  Throws if X is not a state.
MembershipVerdict separability_oracle(const BipartiteOperator& x, SeparabilityStrategy strategy,
                                      const SeeSawConfig& cfg = {});

// Expectation pinned below zero by an Out certificate: <v|X|v> for vector
// witnesses, <v|PT(X)|v> for partial-transpose witnesses.
double witness_expectation(const BipartiteOperator& x, const Certificate& certificate);

}  // namespace sfr
