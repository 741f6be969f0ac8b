#pragma once

#include <optional>
#include <string>
#include <vector>

#include "masscalc/spectral.hpp"

namespace masscalc {

// Coefficient vector (a_1, ..., a_N) aligned with the summand order of a
// decomposition.
struct CoefficientVector {
  std::vector<Rational> coeffs;

  int size() const { return static_cast<int>(coeffs.size()); }
  static CoefficientVector zero(int N) {
    return CoefficientVector{std::vector<Rational>(static_cast<size_t>(N), Rational(0))};
  }
  std::vector<double> to_doubles() const;
};

// One direction in the coefficient space whose symbol combination vanishes.
// `values` is the orthonormal numerical vector; when every entry of the
// rescaled vector rounds to a small-denominator rational, `rational` holds
// that exact form (first nonzero entry positive).
struct BasisVector {
  std::vector<double> values;
  bool exact = false;
  std::vector<Rational> rational;
};

struct WeitzenbockBasis {
  int n = 0;
  int N = 0;
  std::vector<BasisVector> basis;
  double residual = 0;           // worst symbol-condition residual over test directions
  int expected_dim = 0;          // floor(N/2), the literature count
  bool dimension_anomaly = false;
  double universal_residual = 0;  // distance of the normalized weight vector from the span
};

// Nullspace of a |-> sum_j a_j q_j(xi) over several random unit directions,
// via singular value decomposition of the stacked (real, imaginary) entries.
WeitzenbockBasis weitzenbock_basis(const ProjectionSet& proj, const Decomposition& decomp,
                                   int num_xi = 6, unsigned long seed = 12345);

// Coefficients equal to the conformal weights; always a valid choice.
CoefficientVector universal_vector(const Decomposition& decomp);

// mu(a) = -sum_j a_j dim(W_j) w_j / (2 n (n-1)), exact.
Rational mass_coefficient(const Decomposition& decomp, const CoefficientVector& a);

// (dim V) c(rho) / (n (n-1)), exact; equals -mu(universal_vector) and this is
// verified on every call.
Rational universal_mass_coefficient(const Decomposition& decomp);

struct ClassifyReport {
  Rational mu;
  std::string classification;        // "positive-mass" | "negative-mass" | "zero"
  std::vector<int> p_plus_indices;   // 0-based summand indices with a_j > 0
  std::vector<int> p_minus_indices;  // 0-based summand indices with a_j < 0
  bool span_checked = false;
  bool in_span = false;
  double span_residual = 0;
};

// Sign classification of mu(a) plus the P+/P- split by coefficient sign.
// When a basis is supplied, membership of a in the span is verified to 1e-9
// and flagged in the report (never thrown).
ClassifyReport classify(const Decomposition& decomp, const CoefficientVector& a,
                        const WeitzenbockBasis* basis = nullptr);

// Best rational p/q with q <= max_den approximating x; accepted only when
// |x - p/q| <= tol * max(1, |x|).
std::optional<Rational> rationalize(double x, long max_den, double tol);

}  // namespace masscalc
