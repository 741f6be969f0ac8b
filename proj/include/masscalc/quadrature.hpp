#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace masscalc {

// Product-angle quadrature on the euclidean sphere S_r in R^n, exact to
// rounding on polynomial integrands of total degree <= 2 * order.
struct SphereQuadrature {
  int n = 0;
  double radius = 0;
  int order = 0;
  std::vector<Eigen::VectorXd> nodes;
  std::vector<double> weights;
};

SphereQuadrature sphere_quadrature(int n, double radius, int order);

// Gauss-Legendre nodes and weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(int q);

// Pairwise tree reduction; deterministic for a fixed value order regardless
// of how the values were produced.
double tree_sum(std::vector<double> values);

// Integrates f over the quadrature nodes. Nodes may be evaluated in parallel
// (MASSCALC_THREADS, default 1); the reduction order is fixed, so the result
// is bit-identical at any thread count.
double integrate(const SphereQuadrature& quad,
                 const std::function<double(const Eigen::VectorXd&)>& f);

// Closed-form moment of x^alpha over S_r: zero when any exponent is odd,
// otherwise 2 r^{n-1+|alpha|} prod Gamma((alpha_i+1)/2) / Gamma((n+|alpha|)/2).
double sphere_moment(int n, const std::vector<int>& alpha, double radius);

}  // namespace masscalc
