#include "sfr/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sfr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Endpoint spectral_endpoint(double value) { return Endpoint{value, EndpointMethod::Spectral, 1e-12}; }

Endpoint duality_endpoint(const OneParamFamily& f, const Endpoint& source) {
  if (!source.resolved()) return Endpoint{};
  double value = f.orthogonal_partner(source.value);
  // The partner map nu -> -c/nu scales error by |mu/nu|.
  double tol = source.tol * std::abs(value / source.value) + 1e-15;
  return Endpoint{value, EndpointMethod::Duality, tol};
}

void require_ordered(const Endpoint& lo, const Endpoint& hi, const char* what) {
  if (!lo.resolved() || !hi.resolved()) return;
  double slack = lo.tol + hi.tol + 1e-12;
  if (lo.value > hi.value + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "full_report: ordering violated (" << what << "): " << lo.value << " > " << hi.value;
    throw std::logic_error(os.str());
  }
}

// In iff X_lambda is a PPT state; definitive both ways, and separability on
// 2x2 / 2x3 by the positive-partial-transpose criterion.
MembershipVerdict low_dim_oracle(const BipartiteOperator& x) {
  MembershipVerdict density = is_density(x);
  if (density.status == Status::Out) return density;
  MembershipVerdict ppt = is_ppt(x);
  if (ppt.status == Status::In)
    return MembershipVerdict{Status::In, ppt.margin, ClosedFormRule{"ppt-low-dim"}};
  return ppt;
}

}  // namespace

SpectralInterval spectral_interval(const OneParamFamily& family, Transform transform) {
  BipartiteOperator shifted = transform == Transform::Identity
                                  ? family.rho()
                                  : partial_transpose(family.rho());
  shifted.matrix() -= family.rho_star().matrix();
  EigenSystem sys = hermitian_eigen(shifted);

  const double inv = 1.0 / family.dims().total();
  SpectralInterval out{-kInf, kInf};
  bool any = false;
  for (int i = 0; i < sys.values.size(); ++i) {
    double h = sys.values(i);
    if (h > 1e-12) {
      out.minus = std::max(out.minus, -inv / h);
      any = true;
    } else if (h < -1e-12) {
      out.plus = std::min(out.plus, inv / (-h));
      any = true;
    }
  }
  if (!any)
    throw std::invalid_argument("spectral_interval: transformed family is constant");
  return out;
}

double bisect_endpoint(const OneParamFamily& family, const MembershipOracle& oracle,
                       Direction direction, std::pair<double, double> bracket, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_endpoint: tol must be positive");
  double inside = bracket.first, outside = bracket.second;
  if (direction == Direction::Plus ? !(inside < outside) : !(inside > outside))
    throw std::invalid_argument("bisect_endpoint: bracket disagrees with direction");

  auto is_in = [&](double lambda) {
    MembershipVerdict v = oracle(lambda, family.state_at(lambda));
    if (v.status == Status::Unknown)
      throw UnresolvedError("bisect_endpoint: oracle could not decide", lambda);
    return v.status == Status::In;
  };
  if (!is_in(inside)) throw std::invalid_argument("bisect_endpoint: inside point is not In");
  if (is_in(outside)) throw std::invalid_argument("bisect_endpoint: outside point is not Out");

  while (std::abs(outside - inside) > tol) {
    double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;  // brackets touched in double precision
    (is_in(mid) ? inside : outside) = mid;
  }
  return 0.5 * (inside + outside);
}

double find_outside(const OneParamFamily& family, const MembershipOracle& oracle,
                    Direction direction, double seed) {
  if (direction == Direction::Plus ? !(seed > 0.0) : !(seed < 0.0))
    throw std::invalid_argument("find_outside: seed must point along the direction");
  for (double lambda = seed; std::abs(lambda) <= 1e3; lambda *= 2.0) {
    MembershipVerdict v = oracle(lambda, family.state_at(lambda));
    if (v.status == Status::Unknown)
      throw UnresolvedError("find_outside: oracle could not decide", lambda);
    if (v.status == Status::Out) return lambda;
  }
  throw UnresolvedError("find_outside: no Out point up to |lambda| = 1e3", seed);
}

double tilde_endpoint(const OneParamFamily& family, double gamma_opposite) {
  return family.orthogonal_partner(gamma_opposite);
}

PureFamilyClosedForms closed_forms_pure(const SchmidtSpectrum& spectrum) {
  const int n = spectrum.n();
  if (n < 2) throw std::invalid_argument("closed_forms_pure: need n >= 2");
  const double nn = static_cast<double>(n) * n;
  const double p0p1 = spectrum.p(0) * spectrum.p(1);
  const double p0sq = spectrum.p(0) * spectrum.p(0);

  PureFamilyClosedForms cf;
  cf.beta_tilde_minus = -(nn * p0p1 + 1.0) / (nn - 1.0);
  cf.beta_minus = -1.0 / (nn * p0sq - 1.0);
  cf.sigma_minus = -1.0 / (nn - 1.0);
  cf.sigma_tilde_minus = -1.0 / (nn - 1.0);
  cf.sigma_plus = 1.0 / (nn * p0p1 + 1.0);
  cf.sigma_tilde_plus = (nn * p0sq - 1.0) / (nn - 1.0);
  cf.beta_plus = 1.0;
  cf.beta_tilde_plus = 1.0;
  cf.delta_minus = cf.sigma_minus;
  cf.delta_plus = 1.0;

  // The chain ordering is built into the formulas; guard against misuse.
  if (!(cf.beta_tilde_minus <= cf.beta_minus + 1e-12 &&
        cf.beta_minus <= cf.sigma_minus + 1e-12 && cf.sigma_minus < 0.0 &&
        0.0 < cf.sigma_plus && cf.sigma_plus <= cf.beta_plus + 1e-12))
    throw std::logic_error("closed_forms_pure: chain ordering failed");
  return cf;
}

ProjectionClosedForms closed_form_projection(int d, int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("closed_form_projection: bad dimensions");
  if (d < 1 || d >= m * n)
    throw std::invalid_argument("closed_form_projection: need 1 <= d < mn");
  double lower = -static_cast<double>(d) / (m * n - d);
  return ProjectionClosedForms{lower, 1.0, lower, 1.0};
}

DiagTwoQubitClosedForms closed_form_diag2qubit(double p) {
  if (!(p > 0.5 && p < 1.0))
    throw std::invalid_argument("closed_form_diag2qubit: need 1/2 < p < 1");
  DiagTwoQubitClosedForms cf{-1.0 / (4.0 * p - 1.0), -1.0 / (8.0 * p * p - 8.0 * p + 3.0)};
  if (!(cf.sigma_tilde_minus < cf.beta_minus))
    throw std::logic_error("closed_form_diag2qubit: expected strict ordering");
  return cf;
}

const ConeInterval& IntervalReport::cone(const std::string& name) const {
  for (const ConeInterval& c : cones)
    if (c.cone == name) return c;
  throw std::invalid_argument("IntervalReport: no cone named " + name);
}

IntervalReport full_report(const OneParamFamily& family, int k, const SeeSawConfig& cfg) {
  const Dims dims = family.dims();
  if (k < 1 || k > dims.min_dim())
    throw std::invalid_argument("full_report: k must lie in [1, min(m,n)]");

  SpectralInterval delta = spectral_interval(family, Transform::Identity);
  SpectralInterval pt = spectral_interval(family, Transform::PartialTranspose);
  SpectralInterval ppt{std::max(delta.minus, pt.minus), std::min(delta.plus, pt.plus)};
  if (!std::isfinite(delta.minus) || !std::isfinite(delta.plus))
    throw std::logic_error("full_report: density interval must be finite");

  std::optional<PureFamilyForm> pure = detect_pure_form(family);

  IntervalReport report;
  report.dims = dims;
  report.k = k;
  {
    std::ostringstream os;
    os << (pure ? "pure " : "") << dims.m << "x" << dims.n << " family";
    report.family = os.str();
  }

  ConeInterval density{"density", spectral_endpoint(delta.minus), spectral_endpoint(delta.plus),
                       Endpoint{}, Endpoint{}};
  density.tilde_minus = duality_endpoint(family, density.plus);
  density.tilde_plus = duality_endpoint(family, density.minus);

  ConeInterval ppt_cone{"ppt", spectral_endpoint(ppt.minus), spectral_endpoint(ppt.plus),
                        Endpoint{}, Endpoint{}};  // dual-body interval not computed

  std::ostringstream schmidt_name, blockpos_name;
  schmidt_name << "schmidt-" << k;
  blockpos_name << "blockpositive-" << k;
  ConeInterval schmidt{schmidt_name.str(), Endpoint{}, Endpoint{}, Endpoint{}, Endpoint{}};
  ConeInterval blockpos{blockpos_name.str(), Endpoint{}, Endpoint{}, Endpoint{}, Endpoint{}};

  if (k == dims.min_dim()) {
    // Rank-k vectors exhaust the sphere: both bodies coincide with the states.
    schmidt.minus = spectral_endpoint(delta.minus);
    schmidt.plus = spectral_endpoint(delta.plus);
    blockpos.minus = spectral_endpoint(delta.minus);
    blockpos.plus = spectral_endpoint(delta.plus);
  } else {
    MembershipOracle bp_oracle = [k, &cfg](double, const BipartiteOperator& x) {
      return is_blockpositive_k(x, k, cfg);
    };
    double out_minus = find_outside(family, bp_oracle, Direction::Minus, 2.0 * delta.minus);
    blockpos.minus = Endpoint{bisect_endpoint(family, bp_oracle, Direction::Minus,
                                              {delta.minus, out_minus}, kSeesawBisectTol),
                              EndpointMethod::Bisection, kSeesawBisectTol};
    double out_plus = find_outside(family, bp_oracle, Direction::Plus, 2.0 * delta.plus);
    blockpos.plus = Endpoint{bisect_endpoint(family, bp_oracle, Direction::Plus,
                                             {delta.plus, out_plus}, kSeesawBisectTol),
                             EndpointMethod::Bisection, kSeesawBisectTol};

    if (k == 1) {
      bool low = (dims.m == 2 && dims.n == 2) || (dims.m == 2 && dims.n == 3) ||
                 (dims.m == 3 && dims.n == 2);
      MembershipOracle sep_oracle;
      if (low) {
        sep_oracle = [](double, const BipartiteOperator& x) { return low_dim_oracle(x); };
      } else if (pure) {
        // Certified-separability frontier: In iff the blended construction
        // verifies against X_lambda; everything else counts as Out.
        SchmidtSpectrum spectrum = pure->spectrum;
        bool schmidt_basis =
            (family.rho().matrix() -
             OneParamFamily::from_spectrum(spectrum).rho().matrix())
                .cwiseAbs()
                .maxCoeff() <= 1e-12;
        Matrix left = pure->left, right = pure->right;
        sep_oracle = [=](double lambda, const BipartiteOperator& x) -> MembershipVerdict {
          if (auto cert = certify_family_state(spectrum, lambda); cert) {
            ProductDecomposition candidate =
                schmidt_basis ? std::move(*cert) : rotate(*cert, left, right);
            candidate.target = x;
            DecompositionCheck check = verify_decomposition(candidate);
            if (check.ok())
              return MembershipVerdict{
                  Status::In, check.min_remainder,
                  DecompositionRef{std::make_shared<ProductDecomposition>(std::move(candidate))}};
          }
          return MembershipVerdict{Status::Out, -1.0, ClosedFormRule{"no-blend-certificate"}};
        };
      }
      if (sep_oracle) {
        // The PPT-based oracle admits states down to eigenvalue -1e-10, so
        // its frontier can skid past the exact one by ~|kPsdTol| / gap; the
        // recorded tolerance covers that. The certificate blend is crisp.
        double sep_tol = low ? kExactBisectTol + 5e-10 : kExactBisectTol;
        double sout_minus = find_outside(family, sep_oracle, Direction::Minus, delta.minus);
        schmidt.minus = Endpoint{bisect_endpoint(family, sep_oracle, Direction::Minus,
                                                 {0.0, sout_minus}, kExactBisectTol),
                                 EndpointMethod::Bisection, sep_tol};
        double sout_plus = find_outside(family, sep_oracle, Direction::Plus, delta.plus);
        schmidt.plus = Endpoint{bisect_endpoint(family, sep_oracle, Direction::Plus,
                                                {0.0, sout_plus}, kExactBisectTol),
                                EndpointMethod::Bisection, sep_tol};
      }
    }
  }

  // Supporting-hyperplane endpoints come from the dual body's membership
  // endpoints on the opposite side.
  schmidt.tilde_minus = duality_endpoint(family, blockpos.plus);
  schmidt.tilde_plus = duality_endpoint(family, blockpos.minus);
  blockpos.tilde_minus = duality_endpoint(family, schmidt.plus);
  blockpos.tilde_plus = duality_endpoint(family, schmidt.minus);

  report.cones = {density, ppt_cone, schmidt, blockpos};

  for (const ConeInterval& cone : report.cones) {
    if (cone.minus.resolved() && cone.plus.resolved() &&
        !(cone.minus.value < 0.0 && 0.0 < cone.plus.value))
      throw std::logic_error("full_report: interval must straddle the maximally mixed state");
    require_ordered(cone.tilde_minus, cone.minus, (cone.cone + " tilde-minus").c_str());
    require_ordered(cone.plus, cone.tilde_plus, (cone.cone + " tilde-plus").c_str());
  }
  const ConeInterval& d_ = report.cone("density");
  const ConeInterval& p_ = report.cone("ppt");
  const ConeInterval& s_ = report.cone(schmidt_name.str());
  const ConeInterval& b_ = report.cone(blockpos_name.str());
  require_ordered(p_.minus, p_.plus, "ppt nonempty");
  require_ordered(d_.minus, p_.minus, "ppt within density");
  require_ordered(p_.plus, d_.plus, "ppt within density");
  require_ordered(d_.minus, s_.minus, "schmidt within density");
  require_ordered(s_.plus, d_.plus, "schmidt within density");
  require_ordered(b_.minus, d_.minus, "density within blockpositive");
  require_ordered(d_.plus, b_.plus, "density within blockpositive");
  if (k == 1) {
    require_ordered(p_.minus, s_.minus, "schmidt-1 within ppt");
    require_ordered(s_.plus, p_.plus, "schmidt-1 within ppt");
  }
  return report;
}

GammaItemization gamma_itemization(const OneParamFamily& family) {
  SpectralInterval delta = spectral_interval(family, Transform::Identity);
  SpectralInterval state = spectral_interval(family, Transform::PartialTranspose);
  GammaItemization out;
  out.state = state;
  out.ppt = SpectralInterval{std::max(state.minus, delta.minus), std::min(state.plus, delta.plus)};
  if (auto pure = detect_pure_form(family)) out.isotropic = pure->spectrum.is_isotropic(1e-9);
  return out;
}

}  // namespace sfr
