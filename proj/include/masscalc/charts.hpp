#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace masscalc {

using RMatrix = Eigen::MatrixXd;

// Metric value and its coordinate derivatives at one chart point.
struct MetricJet {
  RMatrix g;
  std::vector<RMatrix> dg;  // dg[c](i, j) = d_c g_ij
};

// Asymptotically flat metric in one chart, with analytic derivatives.
struct MetricChart {
  int n = 0;
  double tau = 0;    // claimed decay order of g - delta
  double r_min = 0;  // chart valid for |x| > r_min
  std::string name;
  std::function<MetricJet(const Eigen::VectorXd&)> eval;
};

MetricChart flat_chart(int n);

// g = u^{4/(n-2)} delta with u = 1 + M/(2 r^{n-2}); tau = n-2,
// r_min = 2 M^{1/(n-2)}.
MetricChart schwarzschild_chart(int n, double M);

// One term A x^alpha r^{-q} of a matrix-valued field; A constant.
struct FieldTerm {
  RMatrix A;
  std::vector<int> alpha;  // monomial exponents, size n
  int q = 0;               // inverse radius power
};

// d_k (x^alpha r^{-q}) expressed again as terms of the same shape.
std::vector<FieldTerm> differentiate_term(const FieldTerm& term, int k);

// Evaluates sum of terms and, separately, the coordinate derivative arrays.
RMatrix eval_terms(const std::vector<FieldTerm>& terms, const Eigen::VectorXd& x);

// g = delta + h with h = sum of symmetric terms; decay order inferred as
// min(q - |alpha|) over the terms. Construction validates symmetry and
// positivity at sample points.
MetricChart perturbation_chart(int n, const std::vector<FieldTerm>& terms, double r_min,
                               const std::string& name = "perturbation");

// h = L_xi delta: h_ij = d_i xi_j + d_j xi_i for a covector field given as
// scalar terms xi_j = sum_t coeff x^alpha r^{-q}; returns the matrix terms.
struct CovectorTerm {
  int component = 0;  // j in xi_j
  double coeff = 0;
  std::vector<int> alpha;
  int q = 0;
};
std::vector<FieldTerm> gauge_terms(int n, const std::vector<CovectorTerm>& xi);

// F_j(x) = sum_i d_i beta_ij for an antisymmetric-matrix field given by
// terms; used to integrate the flux of a divergence across spheres.
Eigen::VectorXd two_form_divergence(const std::vector<FieldTerm>& beta,
                                    const Eigen::VectorXd& x);

}  // namespace masscalc
