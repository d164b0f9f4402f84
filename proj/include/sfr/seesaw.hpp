#pragma once

#include "sfr/types.hpp"

#include <cstdint>

// Deterministic see-saw search for the extremal expectation <v|X|v> over unit
// vectors of bounded Schmidt rank.  Restarts draw their starting points from
// per-restart RNG streams derived from the seed, so results are reproducible
// bit-for-bit regardless of how many worker threads run them (capped by the
// SCHMIDT_FRONTIER_THREADS environment variable).

namespace sfr {

struct SeeSawConfig {
  int restarts = 64;
  int max_iters = 500;
  double step_tol = 1e-12;  // improvement below this counts toward the stall window
  std::uint64_t seed = 0;
  bool strict = false;  // report Unknown instead of heuristic In where applicable
};

struct SeesawResult {
  double value = 0.0;
  PureStateVector arg;  // unit vector achieving `value`
};

// Minimum of <v|X|v> over unit v with Schmidt rank <= k.  Exact via the
// bottom eigenvector when k = min(m,n); alternating eigensolves over a (x) b
// when k = 1; projected gradient with hard top-k singular truncation of the
// coefficient matrix otherwise (seeded with the rank-(k-1) solution, which
// makes the value non-increasing in k).
SeesawResult min_schmidt_k_expectation(const BipartiteOperator& x, int k,
                                       const SeeSawConfig& cfg = {});

// Maximum of <v|X|v> over unit v with Schmidt rank <= k; for k = 1 on a pure
// state this is the squared top Schmidt coefficient.
SeesawResult schmidt_k_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg = {});

}  // namespace sfr
