#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sfr/io.hpp"
#include "sfr/oracles.hpp"

using namespace sfr;

namespace {

BipartiteOperator random_operator(Dims dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const int d = dims.total();
  Matrix a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = cd_t(gauss(rng), gauss(rng));
  return BipartiteOperator(dims, Matrix(0.5 * (a + a.adjoint())));
}

}  // namespace

TEST_CASE("format_double is %.12g with spelled-out specials") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0 / 3) == "-0.333333333333");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("operators round-trip through JSON with their factor dimensions") {
  BipartiteOperator x = random_operator({2, 3}, 17);
  BipartiteOperator back = operator_from_json(operator_to_json(x));
  CHECK(back.dims().m == 2);
  CHECK(back.dims().n == 3);
  CHECK((back.matrix() - x.matrix()).cwiseAbs().maxCoeff() == 0.0);

  ojson bad = operator_to_json(x);
  bad["entries"].erase(0);
  CHECK_THROWS_AS(operator_from_json(bad), std::invalid_argument);
}

TEST_CASE("vectors round-trip through JSON exactly") {
  Vector v(3);
  v << cd_t(0.5, -0.25), cd_t(0, 1), cd_t(-2, 0);
  Vector back = vector_from_json(vector_to_json(v));
  CHECK((back - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("product decompositions round-trip and re-verify") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  ProductDecomposition dec = decompose_sigma_plus(s);
  ProductDecomposition back = decomposition_from_json(decomposition_to_json(dec));
  CHECK(back.terms.size() == dec.terms.size());
  CHECK(verify_decomposition(back).ok());
  CHECK((back.target.matrix() - dec.target.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("verdict serialization names each certificate type") {
  MembershipVerdict none{Status::Unknown, 0.0, {}};
  CHECK(verdict_to_json(none)["certificate"]["type"] == "none");

  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  MembershipVerdict eig{Status::Out, -0.5, EigenvectorWitness{v}};
  ojson je = verdict_to_json(eig);
  CHECK(je["status"] == "out");
  CHECK(je["margin"] == -0.5);
  CHECK(je["certificate"]["type"] == "eigenvector");

  MembershipVerdict ppt{Status::Out, -0.1, PptEigenvectorWitness{v}};
  CHECK(verdict_to_json(ppt)["certificate"]["type"] == "ppt-eigenvector");

  MembershipVerdict prod{Status::Out, -0.2, ProductVectorWitness{v, 1}};
  ojson jp = verdict_to_json(prod);
  CHECK(jp["certificate"]["type"] == "product-vector");
  CHECK(jp["certificate"]["k"] == 1);

  MembershipVerdict rule{Status::In, 0.3, ClosedFormRule{"psd"}};
  CHECK(verdict_to_json(rule)["certificate"]["name"] == "psd");

  auto dec = std::make_shared<ProductDecomposition>(
      decompose_delta_minus(SchmidtSpectrum::from_squares({0.8, 0.2})));
  MembershipVerdict with_dec{Status::In, 0.1, DecompositionRef{dec}};
  ojson jd = verdict_to_json(with_dec);
  CHECK(jd["certificate"]["type"] == "decomposition");
  CHECK(jd["certificate"]["decomposition"]["terms"].size() == dec->terms.size());
}

TEST_CASE("interval reports serialize unresolved endpoints as nulls") {
  OneParamFamily f = OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.8, 0.2}));
  IntervalReport report = full_report(f, 1);
  ojson j = report_to_json(report);
  CHECK(j["dims"]["m"] == 2);
  CHECK(j["k"] == 1);
  bool found_ppt = false;
  for (const auto& cone : j["cones"]) {
    if (cone["cone"] == "ppt") {
      found_ppt = true;
      CHECK(cone["tilde_minus"]["value"].is_null());
      CHECK(cone["tilde_minus"]["method"] == "unresolved");
      CHECK(cone["minus"]["value"].is_number());
    }
  }
  CHECK(found_ppt);
}

TEST_CASE("csv rows follow the chain ordering of the hyperplane endpoints") {
  // A projection family with k = min is fully spectral, hence byte-stable.
  Matrix basis = Matrix::Identity(4, 1);
  OneParamFamily f = OneParamFamily::projection({2, 2}, basis);
  IntervalReport report = full_report(f, 2);
  std::string csv = report_to_csv(report);
  CHECK(csv ==
        "family,m,n,k,beta_tilde_minus,beta_minus,sigma_minus,sigma_tilde_minus,"
        "sigma_plus,sigma_tilde_plus,beta_plus,beta_tilde_plus\n"
        "pure 2x2 family,2,2,2,-0.333333333333,-0.333333333333,-0.333333333333,"
        "-0.333333333333,1,1,1,1\n");
}

TEST_CASE("text rendering marks unresolved endpoints with a dash") {
  OneParamFamily f = OneParamFamily::from_spectrum(SchmidtSpectrum::from_squares({0.8, 0.2}));
  IntervalReport report = full_report(f, 1);
  std::string text = report_to_text(report);
  CHECK(text.find("ppt") != std::string::npos);
  CHECK(text.find('-') != std::string::npos);
  CHECK(text.find("density") != std::string::npos);
}

TEST_CASE("two identical pipeline runs serialize byte-for-byte identically") {
  SchmidtSpectrum s = SchmidtSpectrum::from_squares({0.5, 0.3, 0.2});
  std::string a = report_to_json(full_report(OneParamFamily::from_spectrum(s), 1)).dump(2);
  std::string b = report_to_json(full_report(OneParamFamily::from_spectrum(s), 1)).dump(2);
  CHECK(a == b);
}
