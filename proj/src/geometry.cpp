#include "masscalc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "masscalc/errors.hpp"

namespace masscalc {

RMatrix h_map(const RMatrix& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("metric must be square");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("metric must be symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
  if (es.eigenvalues().minCoeff() <= 0)
    throw std::invalid_argument("metric must be positive definite");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

FrameData connection_form_exact(const RMatrix& g, const std::vector<RMatrix>& dg) {
  const int n = static_cast<int>(g.rows());
  if (static_cast<int>(dg.size()) != n)
    throw std::invalid_argument("metric derivative array must have n slices");

  Eigen::SelfAdjointEigenSolver<RMatrix> es(g);
  if (es.eigenvalues().minCoeff() <= 0)
    throw std::invalid_argument("metric must be positive definite");
  const RMatrix& Q = es.eigenvectors();
  const Eigen::VectorXd lam = es.eigenvalues();
  const Eigen::VectorXd sq = lam.cwiseSqrt();
  const RMatrix H = Q * sq.cwiseInverse().asDiagonal() * Q.transpose();
  const RMatrix K = Q * sq.asDiagonal() * Q.transpose();  // K = H^{-1} = g^{1/2}

  if ((H * g * H - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
    throw ConsistencyError("frame normalization failed: H g H is not the identity");

  // dH_c from K dH_c + dH_c K = -H dg_c H, solved in the eigenbasis of g
  std::vector<RMatrix> dH(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    const RMatrix rhs = Q.transpose() * (-H * dg[static_cast<size_t>(c)] * H) * Q;
    RMatrix sol(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) sol(a, b) = rhs(a, b) / (sq(a) + sq(b));
    dH[static_cast<size_t>(c)] = Q * sol * Q.transpose();
  }

  // directional derivatives along the frame vectors He_j
  std::vector<RMatrix> DH(static_cast<size_t>(n), RMatrix::Zero(n, n));
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < n; ++a) DH[static_cast<size_t>(j)] += H(a, j) * dH[static_cast<size_t>(a)];

  FrameData fd;
  fd.H = H;
  fd.omega.assign(static_cast<size_t>(n), RMatrix::Zero(n, n));
  std::vector<RMatrix> KDHK(static_cast<size_t>(n)), DHg(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    KDHK[static_cast<size_t>(j)] = K * DH[static_cast<size_t>(j)] * K;
    DHg[static_cast<size_t>(j)] = DH[static_cast<size_t>(j)] * g;
  }
  for (int c = 0; c < n; ++c) {
    const RMatrix dHK = dH[static_cast<size_t>(c)] * K;
    RMatrix& w = fd.omega[static_cast<size_t>(c)];
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double val = 0.5 * (dHK(j, k) - dHK(k, j)                          //
                                  - KDHK[static_cast<size_t>(j)](c, k)           //
                                  + KDHK[static_cast<size_t>(k)](c, j)           //
                                  - DHg[static_cast<size_t>(j)](k, c)            //
                                  + DHg[static_cast<size_t>(k)](j, c));
        w(j, k) = val;
        w(k, j) = -val;
      }
  }
  return fd;
}

FrameData connection_form_asymptotic(const std::vector<RMatrix>& dg) {
  const int n = static_cast<int>(dg.size());
  if (n == 0) throw std::invalid_argument("metric derivative array is empty");
  FrameData fd;
  fd.H = RMatrix::Identity(n, n);
  fd.omega.assign(static_cast<size_t>(n), RMatrix::Zero(n, n));
  for (int c = 0; c < n; ++c)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const double val =
            0.5 * (dg[static_cast<size_t>(j)](c, k) - dg[static_cast<size_t>(k)](c, j));
        fd.omega[static_cast<size_t>(c)](j, k) = val;
        fd.omega[static_cast<size_t>(c)](k, j) = -val;
      }
  return fd;
}

Eigen::VectorXd pi_projection(const std::vector<RMatrix>& omega) {
  const int n = static_cast<int>(omega.size());
  if (n == 0) throw std::invalid_argument("connection array is empty");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    double acc = 0;
    for (int j = 0; j < n; ++j) acc += omega[static_cast<size_t>(j)](j, k);
    out(k) = acc / (1.0 - n);
  }
  return out;
}

std::vector<RMatrix> insertion_form(const Eigen::VectorXd& alpha) {
  const int n = static_cast<int>(alpha.size());
  std::vector<RMatrix> out(static_cast<size_t>(n), RMatrix::Zero(n, n));
  for (int c = 0; c < n; ++c)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        out[static_cast<size_t>(c)](j, k) =
            alpha(j) * (k == c ? 1.0 : 0.0) - alpha(k) * (j == c ? 1.0 : 0.0);
  return out;
}

double adm_integrand(const MetricJet& jet, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(jet.g.rows());
  const double r = x.norm();
  if (r == 0) throw std::invalid_argument("integrand undefined at the origin");
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    double term = 0;
    for (int j = 0; j < n; ++j)
      term += jet.dg[static_cast<size_t>(j)](i, j) - jet.dg[static_cast<size_t>(i)](j, j);
    acc += term * x(i) / r;
  }
  return acc;
}

FitResult fit_power_limit(const std::vector<double>& radii, const std::vector<double>& values) {
  if (radii.size() != values.size() || radii.empty())
    throw std::invalid_argument("radii and values must be matched and nonempty");
  for (size_t t = 1; t < radii.size(); ++t)
    if (radii[t] <= radii[t - 1]) throw std::invalid_argument("radii must be increasing");

  FitResult fit;
  const double v_last = values.back();
  double spread = 0;
  for (double v : values) spread = std::max(spread, std::abs(v - v_last));
  const double scale = std::max(1.0, std::abs(v_last));

  if (values.size() < 3) {
    fit.limit = v_last;
    fit.error_estimate = std::max(spread, 1e-14 * scale);
    fit.flagged = true;
    fit.flag_reason = "fewer than three radii; tail model not fitted";
    return fit;
  }
  if (spread <= 1e-13 * scale) {
    fit.limit = v_last;
    fit.error_estimate = std::max(spread, 1e-14 * scale);
    return fit;
  }

  const auto sse_for = [&](double s, double& m_out, double& c_out) {
    // linear least squares for value = m + c r^{-s}
    double sw = static_cast<double>(values.size()), sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (size_t t = 0; t < radii.size(); ++t) {
      const double b = std::pow(radii[t], -s);
      sx += b;
      sxx += b * b;
      sy += values[t];
      sxy += b * values[t];
    }
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-300) {
      m_out = v_last;
      c_out = 0;
      return std::numeric_limits<double>::infinity();
    }
    m_out = (sxx * sy - sx * sxy) / det;
    c_out = (sw * sxy - sx * sy) / det;
    double sse = 0;
    for (size_t t = 0; t < radii.size(); ++t) {
      const double resid = values[t] - m_out - c_out * std::pow(radii[t], -s);
      sse += resid * resid;
    }
    return sse;
  };

  double best_s = 0.1, best_sse = std::numeric_limits<double>::infinity();
  double m = 0, c = 0;
  for (double s = 0.1; s <= 6.0 + 1e-12; s += 0.1) {
    double mt, ct;
    const double sse = sse_for(s, mt, ct);
    if (sse < best_sse) {
      best_sse = sse;
      best_s = s;
    }
  }
  // golden-section refinement around the best grid point
  double lo = std::max(0.05, best_s - 0.1), hi = best_s + 0.1;
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double mt, ct;
  double f1 = sse_for(x1, mt, ct), f2 = sse_for(x2, mt, ct);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = sse_for(x1, mt, ct);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = sse_for(x2, mt, ct);
    }
  }
  best_s = 0.5 * (lo + hi);
  sse_for(best_s, m, c);

  double max_resid = 0;
  for (size_t t = 0; t < radii.size(); ++t)
    max_resid = std::max(max_resid,
                         std::abs(values[t] - m - c * std::pow(radii[t], -best_s)));

  fit.limit = m;
  fit.exponent = best_s;
  fit.error_estimate = std::abs(c) * std::pow(radii.back(), -best_s) + max_resid;
  if (max_resid > 0.25 * spread) {
    fit.flagged = true;
    fit.flag_reason = "tail model leaves large residuals; convergence not power-like";
  }
  return fit;
}

MassReport mass_quadrature(const MetricChart& chart, const std::vector<double>& radii,
                           int quad_order) {
  if (radii.empty()) throw std::invalid_argument("at least one radius is required");
  for (double r : radii)
    if (r <= chart.r_min) throw std::invalid_argument("radius inside the chart inner radius");

  MassReport rep;
  rep.chart_name = chart.name;
  rep.radii = radii;
  for (double r : radii) {
    const SphereQuadrature quad = sphere_quadrature(chart.n, r, quad_order);
    rep.values.push_back(integrate(
        quad, [&](const Eigen::VectorXd& x) { return adm_integrand(chart.eval(x), x); }));
  }
  const FitResult fit = fit_power_limit(radii, rep.values);
  rep.limit = fit.limit;
  rep.error_estimate = fit.error_estimate;
  rep.model_exponent = fit.exponent;
  rep.flagged = fit.flagged;
  rep.flag_reason = fit.flag_reason;
  return rep;
}

namespace {

double boundary_node_value(const MetricChart& chart, const MatrixRep& rep, const CMatrix& A,
                           const Eigen::VectorXd& x, bool exact_frame) {
  const int n = rep.n, N = rep.dim_V;
  const MetricJet jet = chart.eval(x);
  const FrameData fd = connection_form_exact(jet.g, jet.dg);

  Eigen::VectorXd nu = x / x.norm();
  double area_factor = 1;
  std::vector<RMatrix> omega_dirs(static_cast<size_t>(n));
  if (!exact_frame) {
    for (int d = 0; d < n; ++d) omega_dirs[static_cast<size_t>(d)] = fd.omega[static_cast<size_t>(d)];
  } else {
    // connection evaluated in frame directions He_d, frame-mapped normal,
    // and the induced sphere volume of g
    for (int d = 0; d < n; ++d) {
      RMatrix w = RMatrix::Zero(n, n);
      for (int e = 0; e < n; ++e) w += fd.H(e, d) * fd.omega[static_cast<size_t>(e)];
      omega_dirs[static_cast<size_t>(d)] = std::move(w);
    }
    const Eigen::VectorXd Hnu = fd.H * nu;
    const double gram = nu.dot(jet.g.ldlt().solve(nu));
    area_factor = std::sqrt(jet.g.determinant()) * std::sqrt(gram);
    nu = Hnu / Hnu.norm();
  }

  std::vector<CMatrix> R(static_cast<size_t>(n));
  for (int d = 0; d < n; ++d)
    R[static_cast<size_t>(d)] = rep_from_coefficients(rep, omega_dirs[static_cast<size_t>(d)]);

  double acc = 0;
  for (int c = 0; c < n; ++c) {
    if (nu(c) == 0) continue;
    double inner = 0;
    for (int d = 0; d < n; ++d)
      inner += (A.block(static_cast<Eigen::Index>(c) * N, static_cast<Eigen::Index>(d) * N, N, N)
                    .cwiseProduct(R[static_cast<size_t>(d)].transpose()))
                   .sum()
                   .real();
    acc += nu(c) * inner;
  }
  return -acc * area_factor;
}

CMatrix coefficient_operator(const ProjectionSet& proj, const CoefficientVector& a) {
  if (a.size() != static_cast<int>(proj.projections.size()))
    throw std::invalid_argument("coefficient vector does not match the projection set");
  const Eigen::Index nN = static_cast<Eigen::Index>(proj.n) * proj.dim_V;
  CMatrix A = CMatrix::Zero(nN, nN);
  for (int j = 0; j < a.size(); ++j)
    A += a.coeffs[static_cast<size_t>(j)].to_double() * proj.projections[static_cast<size_t>(j)];
  return A;
}

}  // namespace

double boundary_term(const MetricChart& chart, const MatrixRep& rep, const ProjectionSet& proj,
                     const CoefficientVector& a, double radius, int quad_order,
                     bool exact_frame) {
  if (rep.n != chart.n || proj.n != rep.n || proj.dim_V != rep.dim_V)
    throw std::invalid_argument("chart, representation, and projections must share dimensions");
  if (radius <= chart.r_min) throw std::invalid_argument("radius inside the chart inner radius");
  const CMatrix A = coefficient_operator(proj, a);
  const SphereQuadrature quad = sphere_quadrature(chart.n, radius, quad_order);
  return integrate(quad, [&](const Eigen::VectorXd& x) {
    return boundary_node_value(chart, rep, A, x, exact_frame);
  });
}

MassReport boundary_term_report(const MetricChart& chart, const MatrixRep& rep,
                                const ProjectionSet& proj, const CoefficientVector& a,
                                const std::vector<double>& radii, int quad_order,
                                bool exact_frame) {
  if (radii.empty()) throw std::invalid_argument("at least one radius is required");
  MassReport out;
  out.chart_name = chart.name;
  out.radii = radii;
  for (double r : radii)
    out.values.push_back(boundary_term(chart, rep, proj, a, r, quad_order, exact_frame));
  const FitResult fit = fit_power_limit(radii, out.values);
  out.limit = fit.limit;
  out.error_estimate = fit.error_estimate;
  out.model_exponent = fit.exponent;
  out.flagged = fit.flagged;
  out.flag_reason = fit.flag_reason;
  return out;
}

}  // namespace masscalc
