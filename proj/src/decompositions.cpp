#include "sfr/decompositions.hpp"

#include <cmath>
#include <sstream>

namespace sfr {

namespace {

const cd_t kFourthRoots[4] = {cd_t(1, 0), cd_t(0, 1), cd_t(-1, 0), cd_t(0, -1)};

void require_pair(const SchmidtSpectrum& s, int i, int j, const char* who) {
  if (j < 0 || i <= j || i >= s.n()) {
    std::ostringstream os;
    os << who << ": need 0 <= j < i < n, got (" << i << ", " << j << ")";
    throw std::invalid_argument(os.str());
  }
}

// Splits target - sum(terms) into a diagonal remainder, checking that the
// split is exact (off-diagonal residual) and the diagonal is nonnegative.
Eigen::VectorXd diagonal_remainder(const Matrix& target, const Matrix& partial,
                                   const char* who) {
  Matrix rest = target - partial;
  const int d = static_cast<int>(rest.rows());
  Eigen::VectorXd diag(d);
  for (int a = 0; a < d; ++a) {
    double entry = rest(a, a).real();
    if (entry < kRemainderTol) {
      std::ostringstream os;
      os << who << ": remainder entry " << a << " is negative (" << entry << ")";
      throw std::runtime_error(os.str());
    }
    diag(a) = std::max(entry, 0.0);
    rest(a, a) = cd_t(0, 0);
  }
  double off = rest.cwiseAbs().maxCoeff();
  if (off > kEigResidualTol) {
    std::ostringstream os;
    os << who << ": non-diagonal residual " << off << " exceeds tolerance";
    throw std::runtime_error(os.str());
  }
  return diag;
}

// rho_ij = |phi><phi| for phi = sqrt(p_i p_j)(|ij> - |ji>), and its partial
// transpose swaps the off-diagonal couplings onto |ii><jj|.
Matrix pair_state_pt(const SchmidtSpectrum& s, int i, int j) {
  const int n = s.n();
  double w = s.p(i) * s.p(j);
  Matrix out = Matrix::Zero(n * n, n * n);
  int ij = i * n + j, ji = j * n + i, ii = i * n + i, jj = j * n + j;
  out(ij, ij) = w;
  out(ji, ji) = w;
  out(ii, jj) = -w;
  out(jj, ii) = -w;
  return out;
}

}  // namespace

Matrix reconstruction(const ProductDecomposition& d) {
  const int dim = d.target.dims().total();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const ProductTerm& t : d.terms) sum += t.weight * (t.amplitudes * t.amplitudes.adjoint());
  sum += d.remainder.cast<cd_t>().asDiagonal();
  return sum;
}

DecompositionCheck verify_decomposition(const ProductDecomposition& d) {
  DecompositionCheck check;
  check.residual = (reconstruction(d) - d.target.matrix()).cwiseAbs().maxCoeff();
  check.min_remainder = d.remainder.size() > 0 ? d.remainder.minCoeff() : 0.0;
  for (const ProductTerm& t : d.terms) {
    if (t.weight <= 0.0) {
      check.all_rank_one = false;
      break;
    }
    double nrm = t.amplitudes.norm();
    if (nrm <= 1e-14) continue;  // degenerate zero term, e.g. a vanished pair
    PureStateVector v{d.target.dims(), t.amplitudes / nrm};
    SchmidtDecomposition sd = schmidt_decompose(v);
    if (sd.coefficients.size() > 1 && sd.coefficients[1] > 1e-10) {
      check.all_rank_one = false;
      break;
    }
  }
  return check;
}

double sigma_plus_parameter(const SchmidtSpectrum& spectrum) {
  const int n = spectrum.n();
  if (n < 2) throw std::invalid_argument("sigma_plus_parameter: need n >= 2");
  return 1.0 / (1.0 + n * n * spectrum.p(0) * spectrum.p(1));
}

double delta_minus_parameter(const SchmidtSpectrum& spectrum) {
  const int n = spectrum.n();
  if (n < 2) throw std::invalid_argument("delta_minus_parameter: need n >= 2");
  return -1.0 / (n * n - 1.0);
}

Vector eta_alpha(const SchmidtSpectrum& spectrum, const std::vector<cd_t>& phases) {
  const int n = spectrum.n();
  if (static_cast<int>(phases.size()) != n)
    throw std::invalid_argument("eta_alpha: need one phase per Schmidt coefficient");
  for (const cd_t& a : phases)
    if (std::abs(std::abs(a) - 1.0) > 1e-12)
      throw std::invalid_argument("eta_alpha: phases must be unimodular");
  Vector eta(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      eta(i * n + j) =
          std::sqrt(spectrum.p(i) * spectrum.p(j)) * phases[i] * std::conj(phases[j]);
  return eta;
}

ProductDecomposition decompose_sigma_plus(const SchmidtSpectrum& spectrum) {
  const int n = spectrum.n();
  if (n < 2) throw std::invalid_argument("decompose_sigma_plus: need n >= 2");
  OneParamFamily family = OneParamFamily::from_spectrum(spectrum);
  double mu = sigma_plus_parameter(spectrum);

  // Enumerate fourth-root phase tuples with alpha_0 fixed to 1; the remaining
  // global-phase orbit contributes identical projectors.
  long count = 1;
  for (int i = 1; i < n; ++i) count *= 4;
  double weight = mu / static_cast<double>(count);

  ProductDecomposition d{family.state_at(mu), {}, Eigen::VectorXd::Zero(n * n)};
  std::vector<cd_t> phases(n, cd_t(1, 0));
  Matrix partial = Matrix::Zero(n * n, n * n);
  for (long t = 0; t < count; ++t) {
    long rest = t;
    for (int i = 1; i < n; ++i) {
      phases[i] = kFourthRoots[rest % 4];
      rest /= 4;
    }
    Vector eta = eta_alpha(spectrum, phases);
    partial += weight * (eta * eta.adjoint());
    d.terms.push_back(ProductTerm{weight, std::move(eta)});
  }
  d.remainder = diagonal_remainder(d.target.matrix(), partial, "decompose_sigma_plus");
  return d;
}

Vector eta_ij_alpha(const SchmidtSpectrum& spectrum, int i, int j, cd_t alpha) {
  require_pair(spectrum, i, j, "eta_ij_alpha");
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw std::invalid_argument("eta_ij_alpha: alpha must be unimodular");
  const int n = spectrum.n();
  double pi = spectrum.p(i), pj = spectrum.p(j);
  double root = std::sqrt(pi * pj);
  Vector eta = Vector::Zero(n * n);
  // (sqrt(p_j)|i> + alpha sqrt(p_i)|j>) (x) (sqrt(p_j)|i> - conj(alpha) sqrt(p_i)|j>)
  eta(i * n + i) = pj;
  eta(i * n + j) = -std::conj(alpha) * root;
  eta(j * n + i) = alpha * root;
  eta(j * n + j) = -pi;
  return eta;
}

ProductDecomposition decompose_delta_minus(const SchmidtSpectrum& spectrum) {
  const int n = spectrum.n();
  if (n < 2) throw std::invalid_argument("decompose_delta_minus: need n >= 2");
  OneParamFamily family = OneParamFamily::from_spectrum(spectrum);
  double delta = delta_minus_parameter(spectrum);
  double weight = 1.0 / (4.0 * (n * n - 1.0));

  ProductDecomposition d{family.state_at(delta), {}, Eigen::VectorXd::Zero(n * n)};
  Matrix partial = Matrix::Zero(n * n, n * n);
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      for (const cd_t& alpha : kFourthRoots) {
        Vector eta = eta_ij_alpha(spectrum, i, j, alpha);
        partial += weight * (eta * eta.adjoint());
        d.terms.push_back(ProductTerm{weight, std::move(eta)});
      }
    }
  }
  d.remainder = diagonal_remainder(d.target.matrix(), partial, "decompose_delta_minus");
  return d;
}

WitnessBundle witness_bundle(const SchmidtSpectrum& spectrum, int i, int j) {
  require_pair(spectrum, i, j, "witness_bundle");
  const int n = spectrum.n();
  double pij = spectrum.p(i) * spectrum.p(j);
  if (pij <= 0.0)
    throw std::invalid_argument("witness_bundle: pair requires p_i p_j > 0");

  WitnessBundle bundle{
      BipartiteOperator(Dims{n, n}, pair_state_pt(spectrum, i, j) / (2.0 * pij)),
      -(n * n * pij + 1.0) / (n * n - 1.0), 0.0};
  OneParamFamily family = OneParamFamily::from_spectrum(spectrum);
  bundle.action = hs_inner(bundle.witness, family.rho());
  return bundle;
}

WitnessDecomposition beta_witness_decomposition(const SchmidtSpectrum& spectrum) {
  const int n = spectrum.n();
  if (n < 2) throw std::invalid_argument("beta_witness_decomposition: need n >= 2");
  double scale = n * n * spectrum.p(0) * spectrum.p(0) - 1.0;
  if (scale <= 0.0)
    throw std::invalid_argument("beta_witness_decomposition: n^2 p_0^2 must exceed 1");

  OneParamFamily family = OneParamFamily::from_spectrum(spectrum);
  WitnessDecomposition d{scale, family.state_at(-1.0 / scale), {}, Eigen::VectorXd()};
  Matrix partial = Matrix::Zero(n * n, n * n);
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      Matrix term = pair_state_pt(spectrum, i, j);
      partial += term;
      d.terms.emplace_back(Dims{n, n}, std::move(term));
    }
  }
  d.diagonal =
      diagonal_remainder(scale * d.target.matrix(), partial, "beta_witness_decomposition");
  return d;
}

ProductDecomposition blend(const ProductDecomposition& a, const ProductDecomposition& b,
                           double t) {
  if (!(a.target.dims() == b.target.dims()))
    throw std::invalid_argument("blend: dimension mismatch");
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("blend: t must lie in [0, 1]");
  ProductDecomposition out{
      BipartiteOperator(a.target.dims(),
                        t * a.target.matrix() + (1.0 - t) * b.target.matrix()),
      {},
      t * a.remainder + (1.0 - t) * b.remainder};
  for (const ProductTerm& term : a.terms)
    if (t * term.weight > 0.0) out.terms.push_back(ProductTerm{t * term.weight, term.amplitudes});
  for (const ProductTerm& term : b.terms)
    if ((1.0 - t) * term.weight > 0.0)
      out.terms.push_back(ProductTerm{(1.0 - t) * term.weight, term.amplitudes});
  return out;
}

std::optional<ProductDecomposition> certify_family_state(const SchmidtSpectrum& spectrum,
                                                         double lambda) {
  double sigma = sigma_plus_parameter(spectrum);
  double delta = delta_minus_parameter(spectrum);
  double t = (sigma - lambda) / (sigma - delta);
  if (t < 0.0 || t > 1.0) return std::nullopt;
  return blend(decompose_delta_minus(spectrum), decompose_sigma_plus(spectrum), t);
}

Vector apply_local(const Matrix& u, const Matrix& w, const Vector& v) {
  const int m = static_cast<int>(u.rows()), mk = static_cast<int>(u.cols());
  const int n = static_cast<int>(w.rows()), nk = static_cast<int>(w.cols());
  if (v.size() != mk * nk) throw std::invalid_argument("apply_local: shape mismatch");
  // v = vec(C) row-major, so (U (x) W) v = vec(U C W^t).
  Matrix c(mk, nk);
  for (int i = 0; i < mk; ++i)
    for (int j = 0; j < nk; ++j) c(i, j) = v(i * nk + j);
  Matrix rotated = u * c * w.transpose();
  Vector out(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out(i * n + j) = rotated(i, j);
  return out;
}

ProductDecomposition rotate(const ProductDecomposition& d, const Matrix& u, const Matrix& w) {
  Dims dims = d.target.dims();
  if (u.rows() != dims.m || u.cols() != dims.m || w.rows() != dims.n || w.cols() != dims.n)
    throw std::invalid_argument("rotate: unitaries must match the factor dimensions");

  Matrix big = Matrix::Zero(dims.total(), dims.total());
  for (int i = 0; i < dims.m; ++i)
    for (int k = 0; k < dims.m; ++k) big.block(i * dims.n, k * dims.n, dims.n, dims.n) = u(i, k) * w;

  ProductDecomposition out{
      BipartiteOperator(dims, big * d.target.matrix() * big.adjoint()),
      {},
      Eigen::VectorXd::Zero(dims.total())};
  for (const ProductTerm& term : d.terms)
    out.terms.push_back(ProductTerm{term.weight, apply_local(u, w, term.amplitudes)});
  // diag(r) = sum_{ij} r_{ij} |ij><ij| rotates into product terms |u_i (x) w_j>.
  for (int i = 0; i < dims.m; ++i) {
    for (int j = 0; j < dims.n; ++j) {
      double r = d.remainder(i * dims.n + j);
      if (r <= 0.0) continue;
      Vector basis = Vector::Zero(dims.total());
      basis(i * dims.n + j) = cd_t(1, 0);
      out.terms.push_back(ProductTerm{r, apply_local(u, w, basis)});
    }
  }
  return out;
}

}  // namespace sfr
