#include "masscalc/weitzenbock.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "masscalc/errors.hpp"

namespace masscalc {

std::vector<double> CoefficientVector::to_doubles() const {
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(c.to_double());
  return out;
}

std::optional<Rational> rationalize(double x, long max_den, double tol) {
  // continued fraction expansion, truncated at the denominator bound
  long p_prev = 1, q_prev = 0;
  long p = static_cast<long>(std::floor(x)), q = 1;
  double frac = x - std::floor(x);
  for (int it = 0; it < 64 && q <= max_den; ++it) {
    const double approx = static_cast<double>(p) / static_cast<double>(q);
    if (std::abs(x - approx) <= tol * std::max(1.0, std::abs(x))) return Rational(p, q);
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const long a = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    const long p_next = a * p + p_prev, q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  if (q <= max_den &&
      std::abs(x - static_cast<double>(p) / static_cast<double>(q)) <=
          tol * std::max(1.0, std::abs(x)))
    return Rational(p, q);
  return std::nullopt;
}

WeitzenbockBasis weitzenbock_basis(const ProjectionSet& proj, const Decomposition& decomp,
                                   int num_xi, unsigned long seed) {
  const int n = proj.n, Nv = proj.dim_V;
  const int N = decomp.size();
  if (static_cast<int>(proj.projections.size()) != N)
    throw std::invalid_argument("projection set does not match the decomposition");
  if (num_xi < 2) throw std::invalid_argument("at least two test directions are required");

  WeitzenbockBasis out;
  out.n = n;
  out.N = N;
  out.expected_dim = N / 2;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> xis;
  for (int t = 0; t < num_xi; ++t) {
    Eigen::VectorXd xi(n);
    do {
      for (int i = 0; i < n; ++i) xi(i) = gauss(rng);
    } while (xi.norm() < 1e-3);
    xi.normalize();
    xis.push_back(xi);
  }

  // stack Re and Im of every entry of sum_j a_j q_j(xi) as rows
  const Eigen::Index rows_per_xi = 2 * static_cast<Eigen::Index>(Nv) * Nv;
  Eigen::MatrixXd A(rows_per_xi * num_xi, N);
  std::vector<std::vector<CMatrix>> symbols(static_cast<size_t>(num_xi));
  for (int t = 0; t < num_xi; ++t) {
    for (int j = 0; j < N; ++j) {
      const CMatrix q = symbol_matrix(proj, j, xis[static_cast<size_t>(t)]);
      symbols[static_cast<size_t>(t)].push_back(q);
      Eigen::Index r = rows_per_xi * t;
      for (Eigen::Index col = 0; col < Nv; ++col)
        for (Eigen::Index row = 0; row < Nv; ++row) {
          A(r, j) = q(row, col).real();
          A(r + static_cast<Eigen::Index>(Nv) * Nv, j) = q(row, col).imag();
          ++r;
        }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const Eigen::VectorXd sing = svd.singularValues();
  const double sigma1 = sing.size() ? sing(0) : 0.0;
  int null_dim = 0;
  for (Eigen::Index t = sing.size(); t-- > 0;) {
    if (sing(t) <= 1e-8 * std::max(sigma1, 1.0))
      ++null_dim;
    else
      break;
  }

  for (int t = 0; t < null_dim; ++t) {
    const Eigen::VectorXd v = svd.matrixV().col(N - 1 - t);
    BasisVector b;
    b.values.assign(v.data(), v.data() + N);

    // rescale so the largest-magnitude entry becomes exactly 1, then flip to
    // make the first nonzero entry positive
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    Eigen::VectorXd scaled = v / v(imax);
    Eigen::Index first = 0;
    while (first < N && std::abs(scaled(first)) < 1e-9) ++first;
    if (first < N && scaled(first) < 0) scaled = -scaled;
    bool all_exact = true;
    std::vector<Rational> rat;
    for (Eigen::Index s = 0; s < N; ++s) {
      const double entry = std::abs(scaled(s)) < 1e-9 ? 0.0 : scaled(s);
      auto r = rationalize(entry, 1000, 1e-9);
      if (!r) {
        all_exact = false;
        break;
      }
      rat.push_back(*r);
    }
    if (all_exact) {
      b.exact = true;
      b.rational = std::move(rat);
    }
    out.basis.push_back(std::move(b));
  }
  out.dimension_anomaly = static_cast<int>(out.basis.size()) != out.expected_dim;

  // worst symbol-condition residual of the basis over the test directions
  for (const auto& b : out.basis)
    for (int t = 0; t < num_xi; ++t) {
      CMatrix acc = CMatrix::Zero(Nv, Nv);
      for (int j = 0; j < N; ++j)
        acc += b.values[static_cast<size_t>(j)] * symbols[static_cast<size_t>(t)][static_cast<size_t>(j)];
      out.residual = std::max(out.residual, acc.cwiseAbs().maxCoeff());
    }

  // the conformal weight vector must lie in the span
  Eigen::VectorXd u(N);
  for (int j = 0; j < N; ++j)
    u(j) = decomp.summands[static_cast<size_t>(j)].conformal_weight.to_double();
  u.normalize();
  Eigen::VectorXd res = u;
  for (const auto& b : out.basis) {
    Eigen::Map<const Eigen::VectorXd> bv(b.values.data(), N);
    res -= bv.dot(res) * bv;
  }
  out.universal_residual = res.norm();
  return out;
}

CoefficientVector universal_vector(const Decomposition& decomp) {
  CoefficientVector a;
  for (const auto& s : decomp.summands) a.coeffs.push_back(s.conformal_weight);
  return a;
}

Rational mass_coefficient(const Decomposition& decomp, const CoefficientVector& a) {
  if (a.size() != decomp.size())
    throw std::invalid_argument("coefficient vector length does not match the decomposition");
  const int n = decomp.rho.n();
  Rational sum(0);
  for (int j = 0; j < decomp.size(); ++j) {
    const auto& s = decomp.summands[static_cast<size_t>(j)];
    sum += a.coeffs[static_cast<size_t>(j)] * Rational(s.dim) * s.conformal_weight;
  }
  return -sum / Rational(2L * n * (n - 1));
}

Rational universal_mass_coefficient(const Decomposition& decomp) {
  const int n = decomp.rho.n();
  const Rational value =
      Rational(decomp.dim_V) * casimir(decomp.rho) / Rational(static_cast<long>(n) * (n - 1));
  if (value != -mass_coefficient(decomp, universal_vector(decomp)))
    throw ConsistencyError("universal mass coefficient disagrees with the weight-sum identity");
  return value;
}

ClassifyReport classify(const Decomposition& decomp, const CoefficientVector& a,
                        const WeitzenbockBasis* basis) {
  if (a.size() != decomp.size())
    throw std::invalid_argument("coefficient vector length does not match the decomposition");
  ClassifyReport rep;
  rep.mu = mass_coefficient(decomp, a);
  rep.classification =
      rep.mu.sign() > 0 ? "positive-mass" : (rep.mu.sign() < 0 ? "negative-mass" : "zero");
  for (int j = 0; j < a.size(); ++j) {
    if (a.coeffs[static_cast<size_t>(j)].sign() > 0) rep.p_plus_indices.push_back(j);
    if (a.coeffs[static_cast<size_t>(j)].sign() < 0) rep.p_minus_indices.push_back(j);
  }
  if (basis) {
    rep.span_checked = true;
    const int N = a.size();
    Eigen::VectorXd v(N);
    for (int j = 0; j < N; ++j) v(j) = a.coeffs[static_cast<size_t>(j)].to_double();
    const double scale = v.norm();
    if (scale > 0) {
      v /= scale;
      for (const auto& b : basis->basis) {
        Eigen::Map<const Eigen::VectorXd> bv(b.values.data(), N);
        v -= bv.dot(v) * bv;
      }
      rep.span_residual = v.norm();
    }
    rep.in_span = rep.span_residual <= 1e-9;
  }
  return rep;
}

}  // namespace masscalc
