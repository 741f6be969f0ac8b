#include "masscalc/json_io.hpp"

#include <cmath>
#include <sstream>

namespace masscalc {

using nlohmann::json;

json json_rational(const Rational& r) { return r.str(); }

json json_bigint(const BigInt& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

json json_weight(const DominantWeight& w) {
  json out = json::array();
  for (const auto& c : w.coords()) out.push_back(c.str());
  return out;
}

namespace {

json json_coeffs(const CoefficientVector& a) {
  json out = json::array();
  for (const auto& c : a.coeffs) out.push_back(c.str());
  return out;
}

json json_doubles(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

}  // namespace

json decomposition_report(const Decomposition& dec) {
  json out;
  out["kind"] = "decomposition";
  out["n"] = dec.rho.n();
  out["weight"] = json_weight(dec.rho);
  out["dim"] = json_bigint(dec.dim_V);
  out["casimir"] = json_rational(casimir(dec.rho));
  json summands = json::array();
  for (const auto& s : dec.summands) {
    json row;
    row["weight"] = json_weight(s.weight);
    row["dim"] = json_bigint(s.dim);
    row["conformal_weight"] = json_rational(s.conformal_weight);
    row["origin"] = s.origin.str();
    summands.push_back(std::move(row));
  }
  out["summands"] = std::move(summands);
  return out;
}

json casimir_report(const DominantWeight& rho) {
  json out;
  out["kind"] = "casimir";
  out["n"] = rho.n();
  out["weight"] = json_weight(rho);
  out["casimir"] = json_rational(casimir(rho));
  out["dim"] = json_bigint(weyl_dimension(rho));
  return out;
}

json weitzenbock_report(const Decomposition& dec, const WeitzenbockBasis& basis) {
  json out;
  out["kind"] = "weitzenbock";
  out["n"] = basis.n;
  out["weight"] = json_weight(dec.rho);
  out["num_summands"] = basis.N;
  out["dimension"] = static_cast<int>(basis.basis.size());
  out["expected_dimension"] = basis.expected_dim;
  out["dimension_anomaly"] = basis.dimension_anomaly;
  out["residual"] = basis.residual;
  out["universal_residual"] = basis.universal_residual;
  json vecs = json::array();
  for (const auto& b : basis.basis) {
    json row;
    row["values"] = json_doubles(b.values);
    row["exact"] = b.exact;
    if (b.exact) {
      json rat = json::array();
      for (const auto& r : b.rational) rat.push_back(r.str());
      row["rational"] = std::move(rat);
    } else {
      row["rational"] = nullptr;
    }
    vecs.push_back(std::move(row));
  }
  out["basis"] = std::move(vecs);
  return out;
}

json mu_report(const Decomposition& dec, const CoefficientVector& a) {
  const Rational mu = mass_coefficient(dec, a);
  json out;
  out["kind"] = "mu";
  out["n"] = dec.rho.n();
  out["weight"] = json_weight(dec.rho);
  out["coefficients"] = json_coeffs(a);
  out["mu"] = json_rational(mu);
  out["mu_value"] = mu.to_double();
  return out;
}

json classification_report(const Decomposition& dec, const CoefficientVector& a,
                           const ClassifyReport& rep) {
  json out;
  out["kind"] = "classify";
  out["n"] = dec.rho.n();
  out["weight"] = json_weight(dec.rho);
  out["coefficients"] = json_coeffs(a);
  out["mu"] = json_rational(rep.mu);
  out["mu_value"] = rep.mu.to_double();
  out["classification"] = rep.classification;
  out["p_plus_indices"] = rep.p_plus_indices;
  out["p_minus_indices"] = rep.p_minus_indices;
  out["span_checked"] = rep.span_checked;
  if (rep.span_checked) {
    out["in_span"] = rep.in_span;
    out["span_residual"] = rep.span_residual;
  } else {
    out["in_span"] = nullptr;
    out["span_residual"] = nullptr;
  }
  return out;
}

json verification_report(const RepVerification& v) {
  json out;
  out["kind"] = "verify-rep";
  out["n"] = v.n;
  out["family"] = v.family.str();
  out["dim"] = v.dim_V;
  out["reducible"] = v.reducible;
  out["all_passed"] = v.all_passed;
  json checks = json::array();
  for (const auto& c : v.checks) {
    json row;
    row["name"] = c.name;
    row["passed"] = c.passed;
    row["max_error"] = c.max_error;
    row["tolerance"] = c.tolerance;
    checks.push_back(std::move(row));
  }
  out["checks"] = std::move(checks);
  json spectrum = json::array();
  for (const auto& [value, mult] : v.spectrum) {
    json row;
    row["eigenvalue"] = value;
    row["multiplicity"] = mult;
    spectrum.push_back(std::move(row));
  }
  out["spectrum"] = std::move(spectrum);
  return out;
}

namespace {

void fill_mass_body(json& out, const MassReport& rep) {
  out["chart"] = rep.chart_name;
  out["radii"] = json_doubles(rep.radii);
  out["values"] = json_doubles(rep.values);
  out["limit"] = rep.limit;
  out["error_estimate"] = rep.error_estimate;
  out["model_exponent"] = rep.model_exponent;
  out["flagged"] = rep.flagged;
  out["flag_reason"] = rep.flag_reason;
}

}  // namespace

json mass_report_json(const MassReport& rep, int n, int quad_order) {
  json out;
  out["kind"] = "mass";
  out["n"] = n;
  out["quad_order"] = quad_order;
  fill_mass_body(out, rep);
  return out;
}

json boundary_report_json(const MassReport& rep, int n, const std::string& family,
                          const CoefficientVector& a, int quad_order, bool exact_frame) {
  json out;
  out["kind"] = "boundary";
  out["n"] = n;
  out["family"] = family;
  out["coefficients"] = json_coeffs(a);
  out["quad_order"] = quad_order;
  out["exact_frame"] = exact_frame;
  fill_mass_body(out, rep);
  return out;
}

json theorem_report(const json& mass, const json& boundary, const Rational& mu,
                    double tolerance) {
  json out;
  out["kind"] = "theorem-check";
  out["chart"] = mass.at("chart");
  out["family"] = boundary.at("family");
  out["coefficients"] = boundary.at("coefficients");
  out["mu"] = json_rational(mu);
  out["mu_value"] = mu.to_double();
  out["mass"] = mass;
  out["boundary"] = boundary;
  const double mass_limit = mass.at("limit").get<double>();
  out["tolerance"] = tolerance;
  if (mass_limit == 0 || !std::isfinite(mass_limit)) {
    out["ratio"] = nullptr;
    out["relative_deviation"] = nullptr;
    out["passed"] = false;
    return out;
  }
  const double ratio = boundary.at("limit").get<double>() / mass_limit;
  out["ratio"] = ratio;
  const double deviation =
      std::abs(ratio - mu.to_double()) / std::max(1.0, std::abs(mu.to_double()));
  out["relative_deviation"] = deviation;
  out["passed"] = deviation <= tolerance && !mass.at("flagged").get<bool>() &&
                  !boundary.at("flagged").get<bool>();
  return out;
}

namespace {

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string join_weight(const json& weight) {
  std::string out;
  for (const auto& c : weight) {
    if (!out.empty()) out += ",";
    out += c.get<std::string>();
  }
  return out;
}

void csv_row(std::ostringstream& os, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ",";
    os << cells[i];
  }
  os << "\n";
}

void per_radius_csv(std::ostringstream& os, const json& rep) {
  csv_row(os, {"radius", "value"});
  for (size_t i = 0; i < rep.at("radii").size(); ++i)
    csv_row(os, {cell(rep.at("radii")[i]), cell(rep.at("values")[i])});
}

void markdown_table(std::ostringstream& os, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  os << "|";
  for (const auto& h : header) os << " " << h << " |";
  os << "\n|";
  for (size_t i = 0; i < header.size(); ++i) os << " --- |";
  os << "\n";
  for (const auto& row : rows) {
    os << "|";
    for (const auto& c : row) os << " " << c << " |";
    os << "\n";
  }
}

}  // namespace

std::string to_csv(const json& report) {
  std::ostringstream os;
  const std::string kind = report.at("kind").get<std::string>();
  if (kind == "decomposition") {
    csv_row(os, {"weight", "dim", "conformal_weight", "origin"});
    for (const auto& s : report.at("summands"))
      csv_row(os, {"\"" + join_weight(s.at("weight")) + "\"", cell(s.at("dim")),
                   cell(s.at("conformal_weight")), cell(s.at("origin"))});
  } else if (kind == "casimir") {
    csv_row(os, {"n", "weight", "casimir", "dim"});
    csv_row(os, {cell(report.at("n")), "\"" + join_weight(report.at("weight")) + "\"",
                 cell(report.at("casimir")), cell(report.at("dim"))});
  } else if (kind == "weitzenbock") {
    csv_row(os, {"vector", "component", "value", "exact_value"});
    const auto& basis = report.at("basis");
    for (size_t v = 0; v < basis.size(); ++v) {
      const auto& vec = basis[v];
      for (size_t c = 0; c < vec.at("values").size(); ++c)
        csv_row(os, {std::to_string(v), std::to_string(c), cell(vec.at("values")[c]),
                     vec.at("exact").get<bool>() ? cell(vec.at("rational")[c]) : ""});
    }
  } else if (kind == "mu") {
    csv_row(os, {"n", "weight", "mu", "mu_value"});
    csv_row(os, {cell(report.at("n")), "\"" + join_weight(report.at("weight")) + "\"",
                 cell(report.at("mu")), cell(report.at("mu_value"))});
  } else if (kind == "classify") {
    csv_row(os, {"key", "value"});
    for (const char* key : {"mu", "classification", "span_checked", "in_span"})
      csv_row(os, {key, cell(report.at(key))});
  } else if (kind == "verify-rep") {
    csv_row(os, {"check", "passed", "max_error", "tolerance"});
    for (const auto& c : report.at("checks"))
      csv_row(os, {cell(c.at("name")), cell(c.at("passed")), cell(c.at("max_error")),
                   cell(c.at("tolerance"))});
  } else if (kind == "mass" || kind == "boundary") {
    per_radius_csv(os, report);
  } else if (kind == "theorem-check") {
    csv_row(os, {"radius", "boundary", "mass", "ratio"});
    const auto& mass = report.at("mass");
    const auto& bnd = report.at("boundary");
    for (size_t i = 0; i < mass.at("radii").size(); ++i) {
      const double b = bnd.at("values")[i].get<double>();
      const double m = mass.at("values")[i].get<double>();
      csv_row(os, {cell(mass.at("radii")[i]), cell(bnd.at("values")[i]),
                   cell(mass.at("values")[i]), cell(json(b / m))});
    }
  } else {
    throw std::invalid_argument("no CSV rendering for report kind '" + kind + "'");
  }
  return os.str();
}

std::string to_markdown(const json& report) {
  std::ostringstream os;
  const std::string kind = report.at("kind").get<std::string>();
  if (kind == "decomposition") {
    os << "Decomposition of R^" << cell(report.at("n")) << " (x) V("
       << join_weight(report.at("weight")) << "), dim " << cell(report.at("dim")) << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : report.at("summands"))
      rows.push_back({join_weight(s.at("weight")), cell(s.at("dim")),
                      cell(s.at("conformal_weight")), cell(s.at("origin"))});
    markdown_table(os, {"weight", "dim", "conformal weight", "origin"}, rows);
  } else if (kind == "casimir") {
    markdown_table(os, {"n", "weight", "casimir", "dim"},
                   {{cell(report.at("n")), join_weight(report.at("weight")),
                     cell(report.at("casimir")), cell(report.at("dim"))}});
  } else if (kind == "weitzenbock") {
    os << "Coefficient space dimension " << cell(report.at("dimension")) << " (expected "
       << cell(report.at("expected_dimension")) << "), residual "
       << cell(report.at("residual")) << "\n\n";
    std::vector<std::vector<std::string>> rows;
    const auto& basis = report.at("basis");
    for (size_t v = 0; v < basis.size(); ++v) {
      const auto& vec = basis[v];
      std::string entries;
      const bool exact = vec.at("exact").get<bool>();
      const auto& src = exact ? vec.at("rational") : vec.at("values");
      for (const auto& e : src) {
        if (!entries.empty()) entries += ", ";
        entries += cell(e);
      }
      rows.push_back({std::to_string(v), exact ? "yes" : "no", entries});
    }
    markdown_table(os, {"vector", "exact", "entries"}, rows);
  } else if (kind == "mu") {
    markdown_table(os, {"n", "weight", "mu"},
                   {{cell(report.at("n")), join_weight(report.at("weight")),
                     cell(report.at("mu"))}});
  } else if (kind == "classify") {
    std::vector<std::vector<std::string>> rows;
    for (const char* key :
         {"mu", "classification", "p_plus_indices", "p_minus_indices", "span_checked",
          "in_span"})
      rows.push_back({key, cell(report.at(key))});
    markdown_table(os, {"key", "value"}, rows);
  } else if (kind == "verify-rep") {
    os << "Family " << cell(report.at("family")) << ", n = " << cell(report.at("n"))
       << ", all passed: " << cell(report.at("all_passed")) << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : report.at("checks"))
      rows.push_back({cell(c.at("name")), cell(c.at("passed")), cell(c.at("max_error")),
                      cell(c.at("tolerance"))});
    markdown_table(os, {"check", "passed", "max error", "tolerance"}, rows);
  } else if (kind == "mass" || kind == "boundary") {
    os << "Chart " << cell(report.at("chart")) << ", limit " << cell(report.at("limit"))
       << " with error estimate " << cell(report.at("error_estimate")) << "\n\n";
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < report.at("radii").size(); ++i)
      rows.push_back({cell(report.at("radii")[i]), cell(report.at("values")[i])});
    markdown_table(os, {"radius", "value"}, rows);
  } else if (kind == "theorem-check") {
    markdown_table(
        os, {"quantity", "value"},
        {{"mu", cell(report.at("mu"))},
         {"boundary limit", cell(report.at("boundary").at("limit"))},
         {"mass limit", cell(report.at("mass").at("limit"))},
         {"ratio", cell(report.at("ratio"))},
         {"relative deviation", cell(report.at("relative_deviation"))},
         {"passed", cell(report.at("passed"))}});
  } else {
    throw std::invalid_argument("no markdown rendering for report kind '" + kind + "'");
  }
  return os.str();
}

}  // namespace masscalc
