#include "sfr/seesaw.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace sfr {

namespace {

constexpr int kStallWindow = 10;

int thread_cap() {
  static const int cap = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("SCHMIDT_FRONTIER_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1 && v < hw) hw = v;
    }
    return hw;
  }();
  return cap;
}

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  return std::mt19937_64(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(restart) + 1)));
}

Vector random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    double re = gauss(rng), im = gauss(rng);
    v(i) = cd_t(re, im);
  }
  double nrm = v.norm();
  return nrm > 0 ? Vector(v / nrm) : Vector::Unit(dim, 0);
}

// Runs fn(restart_index) for every restart, split across worker threads.
// Each restart is independent, so the schedule cannot affect the results.
template <typename Fn>
void for_each_restart(int restarts, Fn&& fn) {
  int threads = std::min(thread_cap(), restarts);
  if (threads <= 1) {
    for (int r = 0; r < restarts; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int r = t; r < restarts; r += threads) fn(r);
    });
  }
  for (std::thread& th : pool) th.join();
}

double expectation(const Matrix& x, const Vector& v) {
  return (v.adjoint() * x * v).value().real();
}

Vector kron_vec(const Vector& a, const Vector& b) {
  const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  Vector v(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) v(i * n + j) = a(i) * b(j);
  return v;
}

Matrix to_coeff(const Vector& v, int m, int n) {
  Matrix c(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = v(i * n + j);
  return c;
}

Vector to_vec(const Matrix& c) {
  const int m = static_cast<int>(c.rows()), n = static_cast<int>(c.cols());
  Vector v(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) v(i * n + j) = c(i, j);
  return v;
}

Matrix truncate_rank(const Matrix& c, int k) {
  if (k >= std::min(c.rows(), c.cols())) return c;
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
         svd.matrixV().leftCols(k).adjoint();
}

// One product-vector see-saw run: alternate exact eigensolves for a given b,
// then for the updated a.  Each half-step is globally optimal, so the value
// is non-increasing.
double alternate_rank_one(const Matrix& x, int m, int n, Vector a, Vector b,
                          const SeeSawConfig& cfg, Vector* out) {
  Matrix mb(m, m), na(n, n);
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    for (int i = 0; i < m; ++i)
      for (int kk = 0; kk < m; ++kk)
        mb(i, kk) = (b.adjoint() * x.block(i * n, kk * n, n, n) * b).value();
    Eigen::SelfAdjointEigenSolver<Matrix> sa(mb);
    a = sa.eigenvectors().col(0);

    na.setZero();
    for (int i = 0; i < m; ++i)
      for (int kk = 0; kk < m; ++kk)
        na += std::conj(a(i)) * a(kk) * x.block(i * n, kk * n, n, n);
    Eigen::SelfAdjointEigenSolver<Matrix> sb(na);
    b = sb.eigenvectors().col(0);

    double value = sb.eigenvalues()(0);
    if (best - value > cfg.step_tol) {
      best = value;
      stall = 0;
    } else if (++stall >= kStallWindow) {
      break;
    }
  }
  *out = kron_vec(a, b);
  return expectation(x, *out);
}

// One rank-k run: projected gradient on the coefficient matrix with backtracking
// line search and hard top-k truncation after every step.
double descend_rank_k(const Matrix& x, int m, int n, int k, Matrix c, const SeeSawConfig& cfg,
                      Vector* out) {
  double nrm = c.norm();
  if (nrm < 1e-14) c = to_coeff(Vector::Unit(m * n, 0), m, n);
  else c /= nrm;
  double value = expectation(x, to_vec(c));
  double eta = 0.25;
  int stall = 0;
  for (int it = 0; it < cfg.max_iters && stall < kStallWindow; ++it) {
    Matrix grad = to_coeff(x * to_vec(c), m, n);
    bool accepted = false;
    for (int trial = 0; trial < 24 && !accepted; ++trial) {
      Matrix cand = truncate_rank(c - eta * grad, k);
      double cn = cand.norm();
      if (cn < 1e-14) {
        eta *= 0.5;
        continue;
      }
      cand /= cn;
      double v = expectation(x, to_vec(cand));
      if (v < value - cfg.step_tol) {
        c = std::move(cand);
        value = v;
        accepted = true;
        eta = std::min(eta * 1.5, 1.0);
      } else {
        eta *= 0.5;
      }
    }
    if (!accepted) ++stall;
    if (eta < 1e-18) break;
  }
  *out = to_vec(c);
  return value;
}

}  // namespace

SeesawResult min_schmidt_k_expectation(const BipartiteOperator& x, int k,
                                       const SeeSawConfig& cfg) {
  const int m = x.dims().m, n = x.dims().n;
  if (k < 1 || k > std::min(m, n))
    throw std::invalid_argument("min_schmidt_k_expectation: k must lie in [1, min(m,n)]");
  if (cfg.restarts < 1 || cfg.max_iters < 1)
    throw std::invalid_argument("min_schmidt_k_expectation: restarts and max_iters must be positive");
  x.require_hermitian("min_schmidt_k_expectation");
  const Matrix& mat = x.matrix();

  // Rank min(m,n) vectors exhaust the unit sphere: the bottom eigenvector is exact.
  if (k == std::min(m, n)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(mat);
    return SeesawResult{solver.eigenvalues()(0),
                        PureStateVector{x.dims(), solver.eigenvectors().col(0)}};
  }

  std::vector<double> values(cfg.restarts + 2, std::numeric_limits<double>::infinity());
  std::vector<Vector> args(cfg.restarts + 2);

  if (k == 1) {
    for_each_restart(cfg.restarts, [&](int r) {
      std::mt19937_64 rng = restart_rng(cfg.seed, r);
      Vector a = random_unit(rng, m), b = random_unit(rng, n);
      values[r] = alternate_rank_one(mat, m, n, std::move(a), std::move(b), cfg, &args[r]);
    });
  } else {
    // Seed one run with the rank-(k-1) solution (makes the minimum
    // non-increasing in k) and one with the truncated bottom eigenvector.
    SeesawResult lower = min_schmidt_k_expectation(x, k - 1, cfg);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(mat);
    Matrix seeded = to_coeff(lower.arg.amplitudes, m, n);
    Matrix trunc = truncate_rank(to_coeff(solver.eigenvectors().col(0), m, n), k);
    for_each_restart(cfg.restarts + 2, [&](int r) {
      Matrix start;
      if (r == cfg.restarts) start = seeded;
      else if (r == cfg.restarts + 1) start = trunc;
      else {
        std::mt19937_64 rng = restart_rng(cfg.seed, r);
        start = truncate_rank(to_coeff(random_unit(rng, m * n), m, n), k);
      }
      values[r] = descend_rank_k(mat, m, n, k, std::move(start), cfg, &args[r]);
    });
  }

  int best = 0;
  for (size_t r = 1; r < values.size(); ++r)
    if (values[r] < values[best]) best = static_cast<int>(r);
  Vector v = args[best];
  if (v.size() == 0) v = Vector::Unit(m * n, 0);
  return SeesawResult{values[best], PureStateVector{x.dims(), std::move(v)}};
}

SeesawResult schmidt_k_norm(const BipartiteOperator& x, int k, const SeeSawConfig& cfg) {
  BipartiteOperator negated(x.dims(), -x.matrix());
  SeesawResult r = min_schmidt_k_expectation(negated, k, cfg);
  r.value = -r.value;
  return r;
}

}  // namespace sfr
