#include "masscalc/charts.hpp"

#include <cmath>
#include <stdexcept>

namespace masscalc {

namespace {

void check_point(int n, const Eigen::VectorXd& x, double r_min) {
  if (x.size() != n) throw std::invalid_argument("chart point has wrong dimension");
  if (x.norm() <= r_min) throw std::invalid_argument("chart point inside the inner radius");
}

double monomial(const std::vector<int>& alpha, const Eigen::VectorXd& x) {
  double v = 1;
  for (size_t i = 0; i < alpha.size(); ++i)
    for (int t = 0; t < alpha[i]; ++t) v *= x(static_cast<Eigen::Index>(i));
  return v;
}

// scalar derivative pieces of x^alpha r^{-q} along coordinate k
struct ScalarTerm {
  double coeff;
  std::vector<int> alpha;
  int q;
};

std::vector<ScalarTerm> d_scalar(double coeff, const std::vector<int>& alpha, int q, int k) {
  std::vector<ScalarTerm> out;
  if (alpha[static_cast<size_t>(k)] > 0) {
    ScalarTerm t{coeff * alpha[static_cast<size_t>(k)], alpha, q};
    --t.alpha[static_cast<size_t>(k)];
    out.push_back(std::move(t));
  }
  if (q != 0) {
    ScalarTerm t{-coeff * q, alpha, q + 2};
    ++t.alpha[static_cast<size_t>(k)];
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

MetricChart flat_chart(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  MetricChart chart;
  chart.n = n;
  chart.tau = 0;
  chart.r_min = 0;
  chart.name = "flat";
  chart.eval = [n](const Eigen::VectorXd& x) {
    check_point(n, x, 0);
    MetricJet jet;
    jet.g = RMatrix::Identity(n, n);
    jet.dg.assign(static_cast<size_t>(n), RMatrix::Zero(n, n));
    return jet;
  };
  return chart;
}

MetricChart schwarzschild_chart(int n, double M) {
  if (n < 3) throw std::invalid_argument("dimension must be at least 3");
  if (M <= 0) throw std::invalid_argument("mass parameter must be positive");
  MetricChart chart;
  chart.n = n;
  chart.tau = n - 2;
  chart.r_min = 2 * std::pow(M, 1.0 / (n - 2));
  chart.name = "schwarzschild";
  const double r_min = chart.r_min;
  chart.eval = [n, M, r_min](const Eigen::VectorXd& x) {
    check_point(n, x, r_min);
    const double r = x.norm();
    const double u = 1 + M / (2 * std::pow(r, n - 2));
    MetricJet jet;
    jet.g = std::pow(u, 4.0 / (n - 2)) * RMatrix::Identity(n, n);
    const double dcoef = -2 * M * std::pow(u, (6.0 - n) / (n - 2)) / std::pow(r, n);
    jet.dg.reserve(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) jet.dg.push_back(dcoef * x(c) * RMatrix::Identity(n, n));
    return jet;
  };
  return chart;
}

std::vector<FieldTerm> differentiate_term(const FieldTerm& term, int k) {
  std::vector<FieldTerm> out;
  for (const auto& piece : d_scalar(1.0, term.alpha, term.q, k)) {
    FieldTerm t;
    t.A = piece.coeff * term.A;
    t.alpha = piece.alpha;
    t.q = piece.q;
    out.push_back(std::move(t));
  }
  return out;
}

RMatrix eval_terms(const std::vector<FieldTerm>& terms, const Eigen::VectorXd& x) {
  if (terms.empty()) throw std::invalid_argument("no terms to evaluate");
  const Eigen::Index n = terms.front().A.rows();
  RMatrix out = RMatrix::Zero(n, n);
  const double r = x.norm();
  for (const auto& t : terms)
    out += t.A * (monomial(t.alpha, x) * std::pow(r, -t.q));
  return out;
}

MetricChart perturbation_chart(int n, const std::vector<FieldTerm>& terms, double r_min,
                               const std::string& name) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (r_min <= 0) throw std::invalid_argument("inner radius must be positive");
  double tau = 1e9;
  for (const auto& t : terms) {
    if (t.A.rows() != n || t.A.cols() != n || static_cast<int>(t.alpha.size()) != n)
      throw std::invalid_argument("term dimensions do not match the chart dimension");
    if ((t.A - t.A.transpose()).cwiseAbs().maxCoeff() != 0)
      throw std::invalid_argument("metric perturbation terms must be symmetric");
    int deg = 0;
    for (int a : t.alpha) {
      if (a < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
      deg += a;
    }
    tau = std::min(tau, static_cast<double>(t.q - deg));
  }
  if (terms.empty()) tau = 0;

  std::vector<std::vector<FieldTerm>> dterms(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c)
    for (const auto& t : terms)
      for (auto& piece : differentiate_term(t, c))
        dterms[static_cast<size_t>(c)].push_back(std::move(piece));

  MetricChart chart;
  chart.n = n;
  chart.tau = tau;
  chart.r_min = r_min;
  chart.name = name;
  chart.eval = [n, terms, dterms, r_min](const Eigen::VectorXd& x) {
    check_point(n, x, r_min);
    MetricJet jet;
    jet.g = RMatrix::Identity(n, n);
    if (!terms.empty()) jet.g += eval_terms(terms, x);
    jet.dg.reserve(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) {
      const auto& dt = dterms[static_cast<size_t>(c)];
      jet.dg.push_back(dt.empty() ? RMatrix::Zero(n, n) : eval_terms(dt, x));
    }
    return jet;
  };

  // positivity spot check along the coordinate axes near the inner radius
  for (int axis = 0; axis < n; ++axis)
    for (int sgn : {1, -1}) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      x(axis) = sgn * 2 * r_min;
      Eigen::LLT<RMatrix> llt(chart.eval(x).g);
      if (llt.info() != Eigen::Success)
        throw std::invalid_argument(
            "perturbed metric is not positive definite near the inner radius");
    }
  return chart;
}

std::vector<FieldTerm> gauge_terms(int n, const std::vector<CovectorTerm>& xi) {
  std::vector<FieldTerm> out;
  for (const auto& t : xi) {
    if (t.component < 0 || t.component >= n || static_cast<int>(t.alpha.size()) != n)
      throw std::invalid_argument("covector term does not match the dimension");
    for (int a = 0; a < n; ++a)
      for (const auto& piece : d_scalar(t.coeff, t.alpha, t.q, a)) {
        FieldTerm ft;
        ft.A = RMatrix::Zero(n, n);
        ft.A(a, t.component) += piece.coeff;
        ft.A(t.component, a) += piece.coeff;
        ft.alpha = piece.alpha;
        ft.q = piece.q;
        out.push_back(std::move(ft));
      }
  }
  return out;
}

Eigen::VectorXd two_form_divergence(const std::vector<FieldTerm>& beta,
                                    const Eigen::VectorXd& x) {
  if (beta.empty()) throw std::invalid_argument("no terms to evaluate");
  const Eigen::Index n = beta.front().A.rows();
  const double r = x.norm();
  Eigen::VectorXd F = Eigen::VectorXd::Zero(n);
  for (const auto& t : beta) {
    if ((t.A + t.A.transpose()).cwiseAbs().maxCoeff() != 0)
      throw std::invalid_argument("two-form terms must be antisymmetric");
    for (int i = 0; i < n; ++i)
      for (const auto& piece : d_scalar(1.0, t.alpha, t.q, i))
        F += piece.coeff * monomial(piece.alpha, x) * std::pow(r, -piece.q) *
             t.A.row(i).transpose();
  }
  return F;
}

}  // namespace masscalc
