// Command-line surface for the interval toolkit: computes membership windows
// for one-parameter families through the maximally mixed state, emits
// separability certificates and entanglement witnesses, and checks the
// closed-form endpoint table against the numeric pipeline.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfr/decompositions.hpp"
#include "sfr/family.hpp"
#include "sfr/intervals.hpp"
#include "sfr/io.hpp"
#include "sfr/oracles.hpp"
#include "sfr/seesaw.hpp"
#include "sfr/tensor.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriterion = 1;
constexpr int kExitUnresolved = 2;
constexpr int kExitUsage = 64;

struct Options {
  int m = 0, n = 0;
  std::vector<double> spectrum;
  bool raw = false;
  int projection_d = 0;
  double diag_p = -1.0;
  std::string in_path;
  int k = 1;
  std::uint64_t seed = 0;
  int restarts = 64;
  double tol = 1e-3;
  std::string format = "text";
  std::string out_path;
  bool gamma = false;
  std::string target;
  int wi = 1, wj = 0;
  double nu = 0.0, lambda = std::numeric_limits<double>::quiet_NaN();
};

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << std::endl;
  return kExitUsage;
}

sfr::SeeSawConfig seesaw_config(const Options& opt) {
  sfr::SeeSawConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.seed = opt.seed;
  return cfg;
}

// Squared coefficients by default; --raw squares the inputs first. The list
// is sorted descending and renormalized, but a sum off by more than 1e-6 is
// rejected rather than silently fixed.
std::optional<sfr::SchmidtSpectrum> make_spectrum(const Options& opt, std::string& err) {
  if (opt.spectrum.empty()) {
    err = "no spectrum given (use --spectrum)";
    return std::nullopt;
  }
  std::vector<double> squares = opt.spectrum;
  if (opt.raw)
    for (double& v : squares) v *= v;
  double sum = 0.0;
  for (double v : squares) {
    if (v < 0.0) {
      err = "spectrum entries must be nonnegative";
      return std::nullopt;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "squared spectrum sums to " << sum << ", expected 1 within 1e-6";
    err = os.str();
    return std::nullopt;
  }
  for (double& v : squares) v /= sum;
  std::sort(squares.begin(), squares.end(), std::greater<double>());
  if (opt.n > 0 && static_cast<int>(squares.size()) != opt.n) {
    err = "--n disagrees with the spectrum length";
    return std::nullopt;
  }
  return sfr::SchmidtSpectrum::from_squares(squares);
}

std::optional<sfr::OneParamFamily> make_family(const Options& opt, std::string& err) {
  const int sources = !opt.spectrum.empty() + (opt.projection_d > 0) + (opt.diag_p >= 0.0) +
                      !opt.in_path.empty();
  if (sources != 1) {
    err = "specify exactly one of --spectrum, --projection-d, --diag2qubit, --in";
    return std::nullopt;
  }
  if (!opt.spectrum.empty()) {
    auto s = make_spectrum(opt, err);
    if (!s) return std::nullopt;
    return sfr::OneParamFamily::from_spectrum(*s);
  }
  if (opt.projection_d > 0) {
    if (opt.m < 1 || opt.n < 1) {
      err = "--projection-d requires --m and --n";
      return std::nullopt;
    }
    sfr::Dims dims{opt.m, opt.n};
    if (opt.projection_d >= dims.total()) {
      err = "--projection-d must be < m*n";
      return std::nullopt;
    }
    // Canonical subspace: the first d computational basis vectors.
    sfr::Matrix basis = sfr::Matrix::Identity(dims.total(), opt.projection_d);
    return sfr::OneParamFamily::projection(dims, basis);
  }
  if (opt.diag_p >= 0.0) {
    if (!(opt.diag_p > 0.0 && opt.diag_p < 1.0)) {
      err = "--diag2qubit requires 0 < p < 1";
      return std::nullopt;
    }
    return sfr::OneParamFamily::diag_two_qubit(opt.diag_p);
  }
  std::ifstream in(opt.in_path);
  if (!in) {
    err = "cannot open " + opt.in_path;
    return std::nullopt;
  }
  sfr::ojson j = sfr::ojson::parse(in, nullptr, true);
  return sfr::OneParamFamily(sfr::operator_from_json(j));
}

int write_output(const Options& opt, const std::string& payload) {
  if (opt.out_path.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  std::ofstream out(opt.out_path);
  if (!out) return usage_error("cannot write " + opt.out_path);
  out << payload;
  return kExitOk;
}

struct NamedEndpoint {
  const char* name;
  double closed;
  const sfr::Endpoint* numeric;
};

int cmd_theorem_table(const Options& opt) {
  std::string err;
  auto s = make_spectrum(opt, err);
  if (!s) return usage_error(err);
  if (s->n() < 2) return usage_error("need a spectrum of length >= 2");

  sfr::PureFamilyClosedForms cf = sfr::closed_forms_pure(*s);
  sfr::OneParamFamily family = sfr::OneParamFamily::from_spectrum(*s);
  sfr::IntervalReport report = sfr::full_report(family, 1, seesaw_config(opt));
  const sfr::ConeInterval& sigma = report.cone("schmidt-1");
  const sfr::ConeInterval& beta = report.cone("blockpositive-1");

  const NamedEndpoint rows[] = {
      {"beta_tilde_minus", cf.beta_tilde_minus, &beta.tilde_minus},
      {"beta_minus", cf.beta_minus, &beta.minus},
      {"sigma_minus", cf.sigma_minus, &sigma.minus},
      {"sigma_tilde_minus", cf.sigma_tilde_minus, &sigma.tilde_minus},
      {"sigma_plus", cf.sigma_plus, &sigma.plus},
      {"sigma_tilde_plus", cf.sigma_tilde_plus, &sigma.tilde_plus},
      {"beta_plus", cf.beta_plus, &beta.plus},
      {"beta_tilde_plus", cf.beta_tilde_plus, &beta.tilde_plus},
  };

  double worst = 0.0;
  sfr::ojson jrows = sfr::ojson::array();
  std::ostringstream text;
  text << "endpoint            closed-form        numeric            |diff|\n";
  for (const NamedEndpoint& row : rows) {
    if (!row.numeric->resolved()) return kExitUnresolved;
    double diff = std::abs(row.numeric->value - row.closed);
    worst = std::max(worst, diff);
    jrows.push_back(sfr::ojson{{"endpoint", row.name},
                               {"closed_form", row.closed},
                               {"numeric", row.numeric->value},
                               {"difference", diff}});
    char line[160];
    std::snprintf(line, sizeof(line), "%-19s %-18s %-18s %s\n", row.name,
                  sfr::format_double(row.closed).c_str(),
                  sfr::format_double(row.numeric->value).c_str(),
                  sfr::format_double(diff).c_str());
    text << line;
  }
  text << "max discrepancy: " << sfr::format_double(worst) << " (tol " << opt.tol << ")\n";

  std::string payload;
  if (opt.format == "json") {
    sfr::ojson j{{"family", report.family},
                 {"rows", std::move(jrows)},
                 {"max_discrepancy", worst},
                 {"tol", opt.tol}};
    payload = j.dump(2) + "\n";
  } else {
    payload = text.str();
  }
  int rc = write_output(opt, payload);
  if (rc != kExitOk) return rc;
  return worst <= opt.tol ? kExitOk : kExitCriterion;
}

int cmd_intervals(const Options& opt) {
  std::string err;
  auto family = make_family(opt, err);
  if (!family) return usage_error(err);
  if (opt.k < 1 || opt.k > family->dims().min_dim())
    return usage_error("--k must lie in [1, min(m,n)]");

  sfr::IntervalReport report = sfr::full_report(*family, opt.k, seesaw_config(opt));
  std::optional<sfr::GammaItemization> gamma;
  if (opt.gamma) gamma = sfr::gamma_itemization(*family);

  std::string payload;
  if (opt.format == "json") {
    sfr::ojson j = sfr::report_to_json(report);
    if (gamma) {
      auto interval_json = [](const sfr::SpectralInterval& iv) {
        auto num = [](double v) {
          return std::isinf(v) ? sfr::ojson(v > 0 ? "inf" : "-inf") : sfr::ojson(v);
        };
        return sfr::ojson{{"minus", num(iv.minus)}, {"plus", num(iv.plus)}};
      };
      j["gamma"] = sfr::ojson{{"partial_transpose_state", interval_json(gamma->state)},
                              {"ppt", interval_json(gamma->ppt)},
                              {"isotropic", gamma->isotropic}};
      if (gamma->isotropic)
        j["gamma"]["note"] =
            "isotropic family: the partial transpose traverses the Werner family";
    }
    payload = j.dump(2) + "\n";
  } else if (opt.format == "csv") {
    payload = sfr::report_to_csv(report);
  } else {
    std::ostringstream os;
    os << sfr::report_to_text(report);
    if (gamma) {
      os << "partial transpose is a state on [" << sfr::format_double(gamma->state.minus) << ", "
         << sfr::format_double(gamma->state.plus) << "]\n";
      os << "state and partial transpose both positive on ["
         << sfr::format_double(gamma->ppt.minus) << ", " << sfr::format_double(gamma->ppt.plus)
         << "]\n";
      if (gamma->isotropic)
        os << "note: isotropic family; the partial transpose traverses the Werner family\n";
    }
    payload = os.str();
  }
  return write_output(opt, payload);
}

int cmd_certify(const Options& opt) {
  std::string err;
  auto s = make_spectrum(opt, err);
  if (!s) return usage_error(err);
  if (s->n() < 2) return usage_error("need a spectrum of length >= 2");

  if (opt.target == "sigma-plus" || opt.target == "delta-minus") {
    sfr::ProductDecomposition dec = opt.target == "sigma-plus"
                                        ? sfr::decompose_sigma_plus(*s)
                                        : sfr::decompose_delta_minus(*s);
    sfr::DecompositionCheck check = sfr::verify_decomposition(dec);
    sfr::ojson j = sfr::decomposition_to_json(dec);
    j["lambda"] = opt.target == "sigma-plus" ? sfr::sigma_plus_parameter(*s)
                                             : sfr::delta_minus_parameter(*s);
    j["residual"] = check.residual;
    j["min_remainder"] = check.min_remainder;
    j["verified"] = check.ok();
    int rc = write_output(opt, j.dump(2) + "\n");
    if (rc != kExitOk) return rc;
    return check.ok() ? kExitOk : kExitCriterion;
  }
  if (opt.target == "beta-witness") {
    sfr::WitnessDecomposition dec = sfr::beta_witness_decomposition(*s);
    sfr::Matrix sum = sfr::Matrix::Zero(dec.target.matrix().rows(), dec.target.matrix().cols());
    for (const sfr::BipartiteOperator& term : dec.terms) sum += term.matrix();
    sum += dec.diagonal.cast<sfr::cd_t>().asDiagonal().toDenseMatrix();
    double residual = (sum - dec.scale * dec.target.matrix()).cwiseAbs().maxCoeff();
    double min_diag = dec.diagonal.minCoeff();
    bool ok = residual <= 1e-10 && min_diag >= -1e-12;

    sfr::ojson terms = sfr::ojson::array();
    for (const sfr::BipartiteOperator& term : dec.terms)
      terms.push_back(sfr::operator_to_json(term));
    sfr::ojson diag = sfr::ojson::array();
    for (Eigen::Index i = 0; i < dec.diagonal.size(); ++i) diag.push_back(dec.diagonal(i));
    sfr::ojson j{{"scale", dec.scale},
                 {"target", sfr::operator_to_json(dec.target)},
                 {"terms", std::move(terms)},
                 {"diagonal", std::move(diag)},
                 {"residual", residual},
                 {"min_diagonal", min_diag},
                 {"verified", ok}};
    int rc = write_output(opt, j.dump(2) + "\n");
    if (rc != kExitOk) return rc;
    return ok ? kExitOk : kExitCriterion;
  }
  return usage_error("--target must be sigma-plus, delta-minus, or beta-witness");
}

int cmd_witness(const Options& opt) {
  std::string err;
  auto s = make_spectrum(opt, err);
  if (!s) return usage_error(err);
  if (opt.wi <= opt.wj || opt.wj < 0 || opt.wi >= s->n())
    return usage_error("need 0 <= j < i < n");

  sfr::WitnessBundle bundle = sfr::witness_bundle(*s, opt.wi, opt.wj);
  sfr::OneParamFamily family = sfr::OneParamFamily::from_spectrum(*s);

  // The witness supports the family at nu: <W|X_lambda> must equal the
  // pairing line through (nu, action) for every lambda.
  double residual = family.perpendicularity_residual(bundle.nu, bundle.witness, 1.0);
  sfr::SeeSawConfig cfg = seesaw_config(opt);
  double min_k1 = sfr::min_schmidt_k_expectation(bundle.witness, 1, cfg).value;
  double min_k2 = s->n() >= 2 ? sfr::min_schmidt_k_expectation(bundle.witness, 2, cfg).value
                              : min_k1;
  bool ok = std::abs(residual) <= 1e-9 && min_k1 >= -1e-7 && min_k2 < -1e-6;

  std::string payload;
  if (opt.format == "json") {
    sfr::ojson j{{"i", opt.wi},
                 {"j", opt.wj},
                 {"nu", bundle.nu},
                 {"action", bundle.action},
                 {"hyperplane_residual", residual},
                 {"min_product_expectation", min_k1},
                 {"min_rank2_expectation", min_k2},
                 {"verified", ok},
                 {"witness", sfr::operator_to_json(bundle.witness)}};
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "pair (i=" << opt.wi << ", j=" << opt.wj << ")\n"
       << "nu (hyperplane parameter): " << sfr::format_double(bundle.nu) << "\n"
       << "action <W|rho>: " << sfr::format_double(bundle.action) << "\n"
       << "hyperplane residual: " << sfr::format_double(residual) << "\n"
       << "min expectation over product vectors: " << sfr::format_double(min_k1) << "\n"
       << "min expectation over rank-2 vectors:  " << sfr::format_double(min_k2) << "\n"
       << (ok ? "verified\n" : "verification FAILED\n");
    payload = os.str();
  }
  int rc = write_output(opt, payload);
  if (rc != kExitOk) return rc;
  return ok ? kExitOk : kExitCriterion;
}

int cmd_pairing(const Options& opt) {
  std::string err;
  auto family = make_family(opt, err);
  if (!family) return usage_error(err);
  if (opt.nu == 0.0) return usage_error("--nu must be nonzero");

  double partner = family->orthogonal_partner(opt.nu);
  std::string payload;
  if (opt.format == "json") {
    sfr::ojson j{{"slope", family->pairing_slope()},
                 {"nu", opt.nu},
                 {"orthogonal_partner", partner}};
    if (!std::isnan(opt.lambda)) {
      j["lambda"] = opt.lambda;
      j["pairing"] = family->pairing(opt.nu, opt.lambda);
    }
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "pairing slope: " << sfr::format_double(family->pairing_slope()) << "\n";
    if (!std::isnan(opt.lambda))
      os << "<X_nu|X_lambda> = " << sfr::format_double(family->pairing(opt.nu, opt.lambda))
         << "\n";
    os << "orthogonal partner of " << sfr::format_double(opt.nu) << ": "
       << sfr::format_double(partner) << "\n";
    payload = os.str();
  }
  return write_output(opt, payload);
}

void add_family_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--m", opt.m, "first factor dimension");
  cmd->add_option("--n", opt.n, "second factor dimension");
  cmd->add_option("--spectrum", opt.spectrum, "Schmidt spectrum (squared coefficients)")
      ->delimiter(',');
  cmd->add_flag("--raw", opt.raw, "treat --spectrum entries as raw coefficients");
  cmd->add_option("--projection-d", opt.projection_d, "subspace dimension for a projection family");
  cmd->add_option("--diag2qubit", opt.diag_p, "two-qubit diagonal family parameter p");
  cmd->add_option("--in", opt.in_path, "read the family state from a JSON file");
}

void add_output_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", opt.out_path, "write output to this file instead of stdout");
}

void add_solver_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "seed for the deterministic restart streams");
  cmd->add_option("--restarts", opt.restarts, "random restarts per optimization")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", opt.tol, "acceptance tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"membership intervals and certificates for one-parameter families "
               "of bipartite operators through the maximally mixed state"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* table = app.add_subcommand(
      "theorem-table", "compare closed-form endpoints against the numeric pipeline");
  add_family_flags(table, opt);
  add_output_flags(table, opt);
  add_solver_flags(table, opt);

  CLI::App* intervals = app.add_subcommand("intervals", "compute the full interval report");
  add_family_flags(intervals, opt);
  add_output_flags(intervals, opt);
  add_solver_flags(intervals, opt);
  intervals->add_option("--k", opt.k, "Schmidt rank parameter")->check(CLI::PositiveNumber);
  intervals->add_flag("--gamma", opt.gamma, "itemize the partial-transpose window");

  CLI::App* certify = app.add_subcommand("certify", "emit and re-verify a certificate");
  add_family_flags(certify, opt);
  add_output_flags(certify, opt);
  certify->add_option("--target", opt.target, "sigma-plus | delta-minus | beta-witness")
      ->required();

  CLI::App* witness = app.add_subcommand("witness", "pairwise entanglement witness for a pure family");
  add_family_flags(witness, opt);
  add_output_flags(witness, opt);
  add_solver_flags(witness, opt);
  witness->add_option("--i", opt.wi, "row index of the pair (default 1)");
  witness->add_option("--j", opt.wj, "column index of the pair (default 0)");

  CLI::App* pairing = app.add_subcommand("pairing", "evaluate the pairing line and its partner");
  add_family_flags(pairing, opt);
  add_output_flags(pairing, opt);
  pairing->add_option("--nu", opt.nu, "hyperplane parameter")->required();
  pairing->add_option("--lambda", opt.lambda, "family parameter to pair against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (table->parsed()) return cmd_theorem_table(opt);
    if (intervals->parsed()) return cmd_intervals(opt);
    if (certify->parsed()) return cmd_certify(opt);
    if (witness->parsed()) return cmd_witness(opt);
    if (pairing->parsed()) return cmd_pairing(opt);
  } catch (const sfr::UnresolvedError& e) {
    std::cerr << "unresolved: " << e.what() << std::endl;
    return kExitUnresolved;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUnresolved;
  }
  return kExitUsage;
}
