#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sfr/family.hpp"
#include "sfr/oracles.hpp"
#include "sfr/seesaw.hpp"
#include "sfr/tensor.hpp"

using namespace sfr;

namespace {

Matrix random_hermitian(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = cd_t(gauss(rng), gauss(rng));
  return Matrix(0.5 * (a + a.adjoint()));
}

Matrix swap_operator() {
  Matrix swap = Matrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) swap(b * 2 + a, a * 2 + b) = 1.0;
  return swap;
}

// Independent check of the product minimum for two qubits: scan one Bloch
// vector (cos t, e^{i f} sin t) on a refining grid and minimize the other
// side exactly, as the bottom eigenvalue of the conditioned 2x2 block. Five
// rounds bring the grid error well under 1e-7.
double grid_min_product(const Matrix& x) {
  constexpr int kSteps = 48;
  double t0 = M_PI / 4, f0 = M_PI;
  double span_t = M_PI / 4, span_f = M_PI;
  double best = std::numeric_limits<double>::infinity();
  for (int round = 0; round < 5; ++round) {
    double bt = t0, bf = f0;
    for (int i = 0; i <= kSteps; ++i)
      for (int j = 0; j <= kSteps; ++j) {
        double t = t0 + span_t * (2.0 * i / kSteps - 1.0);
        double f = f0 + span_f * (2.0 * j / kSteps - 1.0);
        cd_t u0 = std::cos(t), u1 = std::polar(std::sin(t), f);
        // m_{bc} = sum_{a,a'} conj(u_a) x_{(a b),(a' c)} u_{a'}.
        cd_t m00 = std::norm(u0) * x(0, 0) + std::conj(u0) * u1 * x(0, 2) +
                   std::conj(u1) * u0 * x(2, 0) + std::norm(u1) * x(2, 2);
        cd_t m11 = std::norm(u0) * x(1, 1) + std::conj(u0) * u1 * x(1, 3) +
                   std::conj(u1) * u0 * x(3, 1) + std::norm(u1) * x(3, 3);
        cd_t m01 = std::norm(u0) * x(0, 1) + std::conj(u0) * u1 * x(0, 3) +
                   std::conj(u1) * u0 * x(2, 1) + std::norm(u1) * x(2, 3);
        double half_tr = 0.5 * (m00.real() + m11.real());
        double half_gap = 0.5 * (m00.real() - m11.real());
        double val = half_tr - std::sqrt(half_gap * half_gap + std::norm(m01));
        if (val < best) {
          best = val;
          bt = t;
          bf = f;
        }
      }
    t0 = bt;
    f0 = bf;
    span_t *= 2.5 / kSteps;
    span_f *= 2.5 / kSteps;
  }
  return best;
}

}  // namespace

TEST_CASE("swap operator: nonnegative on products, -1 on rank-2 vectors") {
  BipartiteOperator swap({2, 2}, swap_operator());
  SeesawResult k1 = min_schmidt_k_expectation(swap, 1);
  CHECK(std::abs(k1.value) < 1e-9);  // |<u|w>|^2 bottoms out at orthogonal pairs
  SeesawResult k2 = min_schmidt_k_expectation(swap, 2);
  CHECK(k2.value == doctest::Approx(-1.0).epsilon(1e-10));  // antisymmetric eigenvector
}

TEST_CASE("rank-min optimization is the exact bottom eigenvalue") {
  for (std::uint64_t seed : {61u, 62u, 63u}) {
    BipartiteOperator x({2, 3}, random_hermitian(6, seed));
    EigenSystem sys = hermitian_eigen(x);
    SeesawResult r = min_schmidt_k_expectation(x, 2);
    CHECK(r.value == doctest::Approx(sys.values(5)).epsilon(1e-12));
  }
}

TEST_CASE("see-saw matches an exhaustive grid search on two qubits") {
  for (std::uint64_t seed = 70; seed < 90; ++seed) {
    BipartiteOperator x({2, 2}, random_hermitian(4, seed));
    double via_seesaw = min_schmidt_k_expectation(x, 1).value;
    double via_grid = grid_min_product(x.matrix());
    CHECK(via_seesaw <= via_grid + 1e-9);  // see-saw never overshoots the grid
    CHECK(std::abs(via_seesaw - via_grid) < 1e-6);
  }
}

TEST_CASE("minimum over rank-k vectors is monotone in k") {
  for (std::uint64_t seed : {91u, 92u}) {
    BipartiteOperator x({3, 3}, random_hermitian(9, seed));
    double v1 = min_schmidt_k_expectation(x, 1).value;
    double v2 = min_schmidt_k_expectation(x, 2).value;
    double v3 = min_schmidt_k_expectation(x, 3).value;
    CHECK(v2 <= v1 + 1e-12);
    CHECK(v3 <= v2 + 1e-12);
  }
}

TEST_CASE("schmidt_k_norm of a pure projector sums the k largest squared coefficients") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  Vector xi = s.vector();
  BipartiteOperator proj({3, 3}, Matrix(xi * xi.adjoint()));
  // max |<w|xi>|^2 over unit w of Schmidt rank <= k picks the top-k overlap.
  CHECK(schmidt_k_norm(proj, 2).value == doctest::Approx(0.8).epsilon(1e-7));
  CHECK(schmidt_k_norm(proj, 1).value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("see-saw runs are bit-for-bit deterministic for a fixed seed") {
  BipartiteOperator x({3, 3}, random_hermitian(9, 123));
  SeeSawConfig cfg;
  cfg.seed = 5;
  double first = min_schmidt_k_expectation(x, 2, cfg).value;
  double second = min_schmidt_k_expectation(x, 2, cfg).value;
  CHECK(first == second);
}

TEST_CASE("see-saw validates its arguments") {
  BipartiteOperator x({2, 2}, random_hermitian(4, 1));
  CHECK_THROWS_AS(min_schmidt_k_expectation(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(min_schmidt_k_expectation(x, 3), std::invalid_argument);
}

TEST_CASE("density oracle accepts states and produces eigenvector witnesses outside") {
  OneParamFamily f = OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.8, 0.2}));
  MembershipVerdict inside = is_density(f.rho_star());
  CHECK(inside.status == Status::In);
  CHECK(inside.margin == doctest::Approx(0.25).epsilon(1e-12));

  MembershipVerdict outside = is_density(f.state_at(-0.4));  // past delta- = -1/3
  REQUIRE(outside.status == Status::Out);
  CHECK(outside.margin < 0.0);
  CHECK(witness_expectation(f.state_at(-0.4), outside.certificate) ==
        doctest::Approx(outside.margin).epsilon(1e-10));
}

TEST_CASE("ppt oracle rejects an entangled pure state via a partial-transpose witness") {
  OneParamFamily f = OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.8, 0.2}));
  MembershipVerdict v = is_ppt(f.rho());
  REQUIRE(v.status == Status::Out);
  CHECK(std::holds_alternative<PptEigenvectorWitness>(v.certificate));
  CHECK(witness_expectation(f.rho(), v.certificate) < -1e-3);
}

TEST_CASE("blockpositivity oracle brackets the closed-form negative endpoint") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  OneParamFamily f = OneParamFamily::from_spectrum(s);
  // beta_1^- = -1/(9 * 0.5 - 1) = -2/7 ~ -0.2857.

  MembershipVerdict in = is_blockpositive_k(f.state_at(-0.27), 1);
  CHECK(in.status == Status::In);
  const auto* rule = std::get_if<ClosedFormRule>(&in.certificate);
  REQUIRE(rule != nullptr);
  CHECK(rule->name == "see-saw-nonnegative");  // not PSD there, heuristic-backed

  MembershipVerdict out = is_blockpositive_k(f.state_at(-0.30), 1);
  REQUIRE(out.status == Status::Out);
  CHECK(std::holds_alternative<ProductVectorWitness>(out.certificate));
  CHECK(witness_expectation(f.state_at(-0.30), out.certificate) < -1e-4);

  // PSD states are block-positive by construction, no optimization needed.
  MembershipVerdict psd = is_blockpositive_k(f.rho_star(), 1);
  CHECK(psd.status == Status::In);
  const auto* psd_rule = std::get_if<ClosedFormRule>(&psd.certificate);
  REQUIRE(psd_rule != nullptr);
  CHECK(psd_rule->name == "psd");
}

TEST_CASE("strict mode refuses to certify the heuristic inside") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  OneParamFamily f = OneParamFamily::from_spectrum(s);
  SeeSawConfig cfg;
  cfg.strict = true;
  MembershipVerdict v = is_blockpositive_k(f.state_at(-0.27), 1, cfg);
  CHECK(v.status == Status::Unknown);
}

TEST_CASE("low-dimensional separability coincides with the ppt window") {
  OneParamFamily iso =
      OneParamFamily::from_spectrum(SchmidtSpectrum::isotropic(2));
  // sigma+ = 1/(n+1) = 1/3 for the two-qubit isotropic family.
  MembershipVerdict in = separability_oracle(iso.state_at(0.30), SeparabilityStrategy::LowDim);
  CHECK(in.status == Status::In);
  MembershipVerdict out = separability_oracle(iso.state_at(0.40), SeparabilityStrategy::LowDim);
  REQUIRE(out.status == Status::Out);
  CHECK(witness_expectation(iso.state_at(0.40), out.certificate) < 0.0);

  CHECK_THROWS_AS(separability_oracle(iso.state_at(2.0), SeparabilityStrategy::LowDim),
                  std::invalid_argument);  // not a state at all
}

TEST_CASE("certificate strategy produces a verifiable decomposition for pure families") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  OneParamFamily f = OneParamFamily::from_spectrum(s);
  MembershipVerdict v =
      separability_oracle(f.state_at(0.1), SeparabilityStrategy::Certificate);
  REQUIRE(v.status == Status::In);
  const auto* ref = std::get_if<DecompositionRef>(&v.certificate);
  REQUIRE(ref != nullptr);
  REQUIRE(ref->decomposition != nullptr);
  CHECK(verify_decomposition(*ref->decomposition).ok());
  CHECK((ref->decomposition->target.matrix() - f.state_at(0.1).matrix()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("witness search rejects states past the separability endpoint") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  OneParamFamily f = OneParamFamily::from_spectrum(s);
  double sigma = 1.0 / (9.0 * s.p(0) * s.p(1) + 1.0);
  MembershipVerdict v = separability_oracle(f.state_at(sigma + 0.02),
                                            SeparabilityStrategy::WitnessSearch);
  REQUIRE(v.status == Status::Out);
  CHECK(witness_expectation(f.state_at(sigma + 0.02), v.certificate) < 0.0);
}
