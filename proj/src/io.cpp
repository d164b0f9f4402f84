#include "sfr/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sfr {

namespace {

ojson complex_to_json(cd_t z) { return ojson::array({z.real(), z.imag()}); }

cd_t complex_from_json(const ojson& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("io: complex entry must be a [re, im] pair");
  return cd_t(j[0].get<double>(), j[1].get<double>());
}

const char* method_name(EndpointMethod m) {
  switch (m) {
    case EndpointMethod::Spectral: return "spectral";
    case EndpointMethod::Bisection: return "bisection";
    case EndpointMethod::ClosedForm: return "closed-form";
    case EndpointMethod::Duality: return "duality";
    case EndpointMethod::Unresolved: return "unresolved";
  }
  return "unresolved";
}

// CSV/text cell: empty for unresolved endpoints.
std::string cell(const Endpoint& e) { return e.resolved() ? format_double(e.value) : ""; }

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

ojson operator_to_json(const BipartiteOperator& x) {
  ojson entries = ojson::array();
  const Matrix& a = x.matrix();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) entries.push_back(complex_to_json(a(r, c)));
  return ojson{{"m", x.dims().m}, {"n", x.dims().n}, {"entries", std::move(entries)}};
}

BipartiteOperator operator_from_json(const ojson& j) {
  Dims dims{j.at("m").get<int>(), j.at("n").get<int>()};
  const ojson& entries = j.at("entries");
  const int d = dims.total();
  if (d <= 0 || entries.size() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("io: entry count does not match (mn)^2");
  Matrix a(d, d);
  std::size_t idx = 0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = complex_from_json(entries[idx++]);
  return BipartiteOperator(dims, std::move(a));
}

ojson vector_to_json(const Vector& v) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const ojson& j) {
  if (!j.is_array()) throw std::invalid_argument("io: vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

ojson verdict_to_json(const MembershipVerdict& v) {
  const char* status = v.status == Status::In ? "in" : v.status == Status::Out ? "out" : "unknown";
  ojson cert;
  if (std::holds_alternative<std::monostate>(v.certificate)) {
    cert = ojson{{"type", "none"}};
  } else if (const auto* w = std::get_if<EigenvectorWitness>(&v.certificate)) {
    cert = ojson{{"type", "eigenvector"}, {"vector", vector_to_json(w->vector)}};
  } else if (const auto* w = std::get_if<PptEigenvectorWitness>(&v.certificate)) {
    cert = ojson{{"type", "ppt-eigenvector"}, {"vector", vector_to_json(w->vector)}};
  } else if (const auto* w = std::get_if<ProductVectorWitness>(&v.certificate)) {
    cert = ojson{{"type", "product-vector"}, {"k", w->k}, {"vector", vector_to_json(w->vector)}};
  } else if (const auto* d = std::get_if<DecompositionRef>(&v.certificate)) {
    cert = ojson{{"type", "decomposition"},
                 {"decomposition", d->decomposition ? decomposition_to_json(*d->decomposition)
                                                    : ojson(nullptr)}};
  } else if (const auto* r = std::get_if<ClosedFormRule>(&v.certificate)) {
    cert = ojson{{"type", "rule"}, {"name", r->name}};
  }
  return ojson{{"status", status}, {"margin", v.margin}, {"certificate", std::move(cert)}};
}

ojson decomposition_to_json(const ProductDecomposition& d) {
  ojson terms = ojson::array();
  for (const ProductTerm& t : d.terms)
    terms.push_back(ojson{{"weight", t.weight}, {"vector", vector_to_json(t.amplitudes)}});
  ojson remainder = ojson::array();
  for (Eigen::Index i = 0; i < d.remainder.size(); ++i) remainder.push_back(d.remainder(i));
  return ojson{{"target", operator_to_json(d.target)},
               {"terms", std::move(terms)},
               {"remainder", std::move(remainder)}};
}

ProductDecomposition decomposition_from_json(const ojson& j) {
  BipartiteOperator target = operator_from_json(j.at("target"));
  std::vector<ProductTerm> terms;
  for (const ojson& t : j.at("terms"))
    terms.push_back(ProductTerm{t.at("weight").get<double>(), vector_from_json(t.at("vector"))});
  const ojson& rem = j.at("remainder");
  Eigen::VectorXd remainder(static_cast<Eigen::Index>(rem.size()));
  for (Eigen::Index i = 0; i < remainder.size(); ++i) remainder(i) = rem[i].get<double>();
  return ProductDecomposition{std::move(target), std::move(terms), std::move(remainder)};
}

ojson endpoint_to_json(const Endpoint& e) {
  ojson value;
  if (e.resolved()) {
    if (std::isinf(e.value))
      value = e.value > 0 ? "inf" : "-inf";
    else
      value = e.value;
  }  // else null
  return ojson{{"value", std::move(value)},
               {"method", method_name(e.method)},
               {"tol", e.resolved() ? ojson(e.tol) : ojson(nullptr)}};
}

ojson report_to_json(const IntervalReport& report) {
  ojson cones = ojson::array();
  for (const ConeInterval& c : report.cones)
    cones.push_back(ojson{{"cone", c.cone},
                          {"minus", endpoint_to_json(c.minus)},
                          {"plus", endpoint_to_json(c.plus)},
                          {"tilde_minus", endpoint_to_json(c.tilde_minus)},
                          {"tilde_plus", endpoint_to_json(c.tilde_plus)}});
  return ojson{{"family", report.family},
               {"dims", ojson{{"m", report.dims.m}, {"n", report.dims.n}}},
               {"k", report.k},
               {"cones", std::move(cones)}};
}

std::string report_to_csv(const IntervalReport& report) {
  std::ostringstream sigma_name, beta_name;
  sigma_name << "schmidt-" << report.k;
  beta_name << "blockpositive-" << report.k;
  const ConeInterval& s = report.cone(sigma_name.str());
  const ConeInterval& b = report.cone(beta_name.str());

  std::ostringstream os;
  os << "family,m,n,k,beta_tilde_minus,beta_minus,sigma_minus,sigma_tilde_minus,"
        "sigma_plus,sigma_tilde_plus,beta_plus,beta_tilde_plus\n";
  os << report.family << ',' << report.dims.m << ',' << report.dims.n << ',' << report.k << ','
     << cell(b.tilde_minus) << ',' << cell(b.minus) << ',' << cell(s.minus) << ','
     << cell(s.tilde_minus) << ',' << cell(s.plus) << ',' << cell(s.tilde_plus) << ','
     << cell(b.plus) << ',' << cell(b.tilde_plus) << '\n';
  return os.str();
}

std::string report_to_text(const IntervalReport& report) {
  std::ostringstream os;
  os << report.family << "  (m=" << report.dims.m << ", n=" << report.dims.n
     << ", k=" << report.k << ")\n";
  os << "cone              minus             plus              tilde_minus       tilde_plus\n";
  for (const ConeInterval& c : report.cones) {
    char line[256];
    auto col = [](const Endpoint& e) { return e.resolved() ? format_double(e.value) : "-"; };
    std::snprintf(line, sizeof(line), "%-17s %-17s %-17s %-17s %s\n", c.cone.c_str(),
                  col(c.minus).c_str(), col(c.plus).c_str(), col(c.tilde_minus).c_str(),
                  col(c.tilde_plus).c_str());
    os << line;
  }
  return os.str();
}

}  // namespace sfr
