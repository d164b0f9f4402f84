#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sfr/family.hpp"
#include "sfr/tensor.hpp"

using namespace sfr;

namespace {

// Random density matrix away from the maximally mixed state.
BipartiteOperator random_state(Dims dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const int d = dims.total();
  Matrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = cd_t(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return BipartiteOperator(dims, std::move(rho));
}

Matrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = cd_t(gauss(rng), gauss(rng));
  return Eigen::HouseholderQR<Matrix>(g).householderQ();
}

}  // namespace

TEST_CASE("pairing of two family members is affine in the product of parameters") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    OneParamFamily f(random_state({2, 3}, seed));
    for (int trial = 0; trial < 25; ++trial) {
      double nu = unif(rng), lambda = unif(rng);
      double direct = hs_inner(f.state_at(nu), f.state_at(lambda));
      CHECK(std::abs(direct - f.pairing(nu, lambda)) < 1e-12);
    }
  }
}

TEST_CASE("orthogonal partner pairs to zero, flips sign, and is an involution") {
  OneParamFamily f = OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.8, 0.2}));
  CHECK(f.pairing_slope() == doctest::Approx(0.75).epsilon(1e-14));

  double mu = f.orthogonal_partner(1.0);
  CHECK(mu == doctest::Approx(-1.0 / 3).epsilon(1e-14));  // density body is self-dual
  CHECK(std::abs(f.pairing(1.0, mu)) < 1e-15);
  CHECK(mu < 0.0);
  CHECK(f.orthogonal_partner(mu) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(f.orthogonal_partner(0.0), std::invalid_argument);
}

TEST_CASE("pure families satisfy nu * partner(nu) = -1/(n^2 - 1)") {
  OneParamFamily f =
      OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.5, 0.3, 0.2}));
  for (double nu : {-0.7, -0.2, 0.3, 1.4})
    CHECK(nu * f.orthogonal_partner(nu) == doctest::Approx(-1.0 / 8).epsilon(1e-13));
}

TEST_CASE("state_at interpolates between the maximally mixed state and rho") {
  OneParamFamily f(random_state({2, 2}, 5));
  CHECK((f.state_at(0.0).matrix() - f.rho_star().matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((f.state_at(1.0).matrix() - f.rho().matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(f.state_at(-0.4).trace_real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hyperplane_side classifies family members against the pairing line") {
  OneParamFamily f = OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.8, 0.2}));
  double nu = 0.5;
  double mu = f.orthogonal_partner(nu);
  CHECK(f.hyperplane_side(nu, f.state_at(mu)) == HyperplaneSide::Zero);
  CHECK(f.hyperplane_side(nu, f.rho_star()) == HyperplaneSide::Plus);
  CHECK(f.hyperplane_side(nu, f.state_at(2.0 * mu)) == HyperplaneSide::Minus);
}

TEST_CASE("perpendicularity residual is lambda-independent and slope-scaled") {
  OneParamFamily f =
      OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.4, 0.3, 0.2, 0.1}));
  double nu = -0.35;
  // X_nu itself sits on the hyperplane through X_nu, for any probe lambda.
  CHECK(std::abs(f.perpendicularity_residual(nu, f.state_at(nu), 0.7)) < 1e-12);
  CHECK(std::abs(f.perpendicularity_residual(nu, f.state_at(nu), -2.0)) < 1e-12);
  // Along the family the residual is slope * (t - nu), independent of lambda.
  double t = 0.45;
  double expected = f.pairing_slope() * (t - nu);
  CHECK(f.perpendicularity_residual(nu, f.state_at(t), 0.7) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(f.perpendicularity_residual(nu, f.state_at(t), -2.0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(f.perpendicularity_residual(nu, f.state_at(t), 0.0),
                  std::invalid_argument);
}

TEST_CASE("projection families are built from an orthonormal basis") {
  Dims dims{2, 2};
  Matrix basis = Matrix::Identity(4, 1);
  OneParamFamily f = OneParamFamily::projection(dims, basis);
  CHECK(f.rho().matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.rho().trace_real() == doctest::Approx(1.0).epsilon(1e-14));

  Matrix bad = Matrix::Ones(4, 2);
  CHECK_THROWS_AS(OneParamFamily::projection(dims, bad), std::invalid_argument);
}

TEST_CASE("diagonal two-qubit factory places weight on |00> and |01>") {
  OneParamFamily f = OneParamFamily::diag_two_qubit(0.75);
  const Matrix& rho = f.rho().matrix();
  CHECK(rho(0, 0).real() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(rho(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rho.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("family construction rejects invalid generators") {
  Matrix not_trace_one = 0.5 * Matrix::Identity(4, 4);
  CHECK_THROWS_AS(OneParamFamily(BipartiteOperator({2, 2}, not_trace_one)),
                  std::invalid_argument);
  // The maximally mixed state itself spans no direction.
  CHECK_THROWS_AS(OneParamFamily(BipartiteOperator::maximally_mixed({2, 2})),
                  std::invalid_argument);
}

TEST_CASE("detect_pure_form recovers the spectrum of a rotated pure family") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  OneParamFamily diag = OneParamFamily::from_spectrum(s);

  Matrix u = random_unitary(3, 21), w = random_unitary(3, 22);
  Matrix kron = Matrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) kron.block(i * 3, k * 3, 3, 3) = u(i, k) * w;
  BipartiteOperator rotated({3, 3}, Matrix(kron * diag.rho().matrix() * kron.adjoint()));

  auto form = detect_pure_form(OneParamFamily(rotated));
  REQUIRE(form.has_value());
  for (int i = 0; i < 3; ++i)
    CHECK(form->spectrum.p(i) == doctest::Approx(s.p(i)).epsilon(1e-10));

  // A genuinely mixed generator has no pure form.
  CHECK_FALSE(detect_pure_form(OneParamFamily(random_state({3, 3}, 77))).has_value());
}
