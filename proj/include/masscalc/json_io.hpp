#pragma once

#include <string>

#include "json.hpp"
#include "masscalc/geometry.hpp"
#include "masscalc/weights.hpp"
#include "masscalc/weitzenbock.hpp"

namespace masscalc {

// Scalar encodings shared by every report: exact rationals as "p/q" strings,
// weights as arrays of coordinate strings, big integers as JSON integers when
// they fit and decimal strings otherwise.
nlohmann::json json_rational(const Rational& r);
nlohmann::json json_bigint(const BigInt& z);
nlohmann::json json_weight(const DominantWeight& w);

// Report builders. Every report carries a "kind" tag used by the text
// renderers and the schema files under schemas/.
nlohmann::json decomposition_report(const Decomposition& dec);
nlohmann::json casimir_report(const DominantWeight& rho);
nlohmann::json weitzenbock_report(const Decomposition& dec, const WeitzenbockBasis& basis);
nlohmann::json mu_report(const Decomposition& dec, const CoefficientVector& a);
nlohmann::json classification_report(const Decomposition& dec, const CoefficientVector& a,
                                     const ClassifyReport& rep);
nlohmann::json verification_report(const RepVerification& v);
nlohmann::json mass_report_json(const MassReport& rep, int n, int quad_order);
nlohmann::json boundary_report_json(const MassReport& rep, int n, const std::string& family,
                                    const CoefficientVector& a, int quad_order,
                                    bool exact_frame);
nlohmann::json theorem_report(const nlohmann::json& mass, const nlohmann::json& boundary,
                              const Rational& mu, double tolerance);

// Flat renderings of a report for plotting and docs; dispatch on "kind".
std::string to_csv(const nlohmann::json& report);
std::string to_markdown(const nlohmann::json& report);

}  // namespace masscalc
