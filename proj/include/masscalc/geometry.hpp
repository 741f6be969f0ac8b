#pragma once

#include <string>
#include <vector>

#include "masscalc/charts.hpp"
#include "masscalc/quadrature.hpp"
#include "masscalc/spectral.hpp"
#include "masscalc/weitzenbock.hpp"

namespace masscalc {

// Frame normalization H and connection coefficients at one point.
// omega[c](j, k) = omega_j^k(e_c), antisymmetric in (j, k).
struct FrameData {
  RMatrix H;
  std::vector<RMatrix> omega;
};

// Principal inverse square root: the unique symmetric positive H with
// H g H = identity.
RMatrix h_map(const RMatrix& g);

// Connection coefficients of the g-orthonormal frame {H e_j} against the
// flat derivative, from the metric 1-jet. Exact at the point.
FrameData connection_form_exact(const RMatrix& g, const std::vector<RMatrix>& dg);

// Leading-order form 1/2 [dg[j](c, k) - dg[k](c, j)] with H = identity.
FrameData connection_form_asymptotic(const std::vector<RMatrix>& dg);

// Trace compression of a connection array, normalized so that the insertion
// alpha -> i(alpha) below is a right inverse.
Eigen::VectorXd pi_projection(const std::vector<RMatrix>& omega);

// i(alpha)[c](j, k) = alpha_j delta_kc - alpha_k delta_jc.
std::vector<RMatrix> insertion_form(const Eigen::VectorXd& alpha);

// (div0 g - d tr0 g)(nu) with euclidean contractions and nu = x/|x|.
double adm_integrand(const MetricJet& jet, const Eigen::VectorXd& x);

// Power-law tail fit value(r) = limit + c r^{-s} over at least three radii.
struct FitResult {
  double limit = 0;
  double error_estimate = 0;
  double exponent = 0;
  bool flagged = false;
  std::string flag_reason;
};
FitResult fit_power_limit(const std::vector<double>& radii, const std::vector<double>& values);

struct MassReport {
  std::string chart_name;
  std::vector<double> radii;
  std::vector<double> values;
  double limit = 0;
  double error_estimate = 0;
  double model_exponent = 0;
  bool flagged = false;
  std::string flag_reason;
};

// Sphere integrals of the ADM integrand at each radius plus the fitted limit.
MassReport mass_quadrature(const MetricChart& chart, const std::vector<double>& radii,
                           int quad_order);

// Boundary pairing of the mass formula at one radius:
//   - sum over constant sections of <nu (x) sigma, A rho(omega) sigma>
// with A = sum_j a_j Pi_j. The default mode uses the euclidean normal,
// connection directions e_d, and euclidean area; exact_frame maps all three
// through H and the induced volume.
double boundary_term(const MetricChart& chart, const MatrixRep& rep, const ProjectionSet& proj,
                     const CoefficientVector& a, double radius, int quad_order,
                     bool exact_frame = false);

// boundary_term over several radii with the same tail fit as mass_quadrature.
MassReport boundary_term_report(const MetricChart& chart, const MatrixRep& rep,
                                const ProjectionSet& proj, const CoefficientVector& a,
                                const std::vector<double>& radii, int quad_order,
                                bool exact_frame = false);

}  // namespace masscalc
