#include "masscalc/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace masscalc {

std::vector<std::pair<double, double>> gauss_legendre(int q) {
  if (q < 1) throw std::invalid_argument("at least one node is required");
  std::vector<std::pair<double, double>> out(static_cast<size_t>(q));
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    out[static_cast<size_t>(i)] = {-x, w};
    out[static_cast<size_t>(q - 1 - i)] = {x, w};
  }
  return out;
}

SphereQuadrature sphere_quadrature(int n, double radius, int order) {
  if (n < 2) throw std::invalid_argument("sphere quadrature requires n >= 2");
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  if (order < 1) throw std::invalid_argument("order must be positive");
  const int D = 2 * order;

  SphereQuadrature quad;
  quad.n = n;
  quad.radius = radius;
  quad.order = order;

  // polar angles theta_i, i = 1..n-2, carrying measure sin^k theta with
  // k = n-1-i; each reduced to a rule in u = cos theta
  struct Rule {
    std::vector<double> u, s, w;  // cos theta, sin theta, folded weight
  };
  std::vector<Rule> rules;
  for (int i = 1; i <= n - 2; ++i) {
    const int k = n - 1 - i;
    Rule rule;
    if (k % 2 == 1) {
      // sin^k theta d theta = (1-u^2)^{(k-1)/2} du, a polynomial weight
      const int q = (D + k) / 2 + 1;
      for (const auto& [u, w] : gauss_legendre(q)) {
        rule.u.push_back(u);
        rule.s.push_back(std::sqrt(1 - u * u));
        rule.w.push_back(w * std::pow(1 - u * u, (k - 1) / 2));
      }
    } else {
      // (1-u^2)^{(k-2)/2} sqrt(1-u^2) du: second-kind Chebyshev rule with the
      // polynomial part folded into the weight
      const int m = (D + k - 1) / 2 + 1;
      for (int j = 1; j <= m; ++j) {
        const double t = j * M_PI / (m + 1);
        const double u = std::cos(t);
        const double base = M_PI / (m + 1) * std::sin(t) * std::sin(t);
        rule.u.push_back(u);
        rule.s.push_back(std::sin(t));
        rule.w.push_back(base * std::pow(1 - u * u, (k - 2) / 2));
      }
    }
    rules.push_back(std::move(rule));
  }

  int p = std::max(4, D + 1);
  if (p % 2 == 1) ++p;  // even count keeps antipodal symmetry in phi

  // iterate over the product of angle rules and the uniform phi rule
  std::vector<size_t> idx(rules.size(), 0);
  const double rpow = std::pow(radius, n - 1);
  while (true) {
    double wprod = 1;
    for (size_t t = 0; t < rules.size(); ++t) wprod *= rules[t].w[idx[t]];
    for (int s = 0; s < p; ++s) {
      const double phi = 2 * M_PI * s / p;
      Eigen::VectorXd x(n);
      double sin_chain = 1;
      for (size_t t = 0; t < rules.size(); ++t) {
        x(static_cast<Eigen::Index>(t)) = sin_chain * rules[t].u[idx[t]];
        sin_chain *= rules[t].s[idx[t]];
      }
      x(n - 2) = sin_chain * std::cos(phi);
      x(n - 1) = sin_chain * std::sin(phi);
      quad.nodes.push_back(radius * x);
      quad.weights.push_back(rpow * wprod * 2 * M_PI / p);
    }
    size_t t = 0;
    while (t < rules.size() && ++idx[t] == rules[t].u.size()) {
      idx[t] = 0;
      ++t;
    }
    if (t == rules.size()) break;
  }
  return quad;
}

double tree_sum(std::vector<double> values) {
  if (values.empty()) return 0;
  while (values.size() > 1) {
    std::vector<double> next;
    next.reserve((values.size() + 1) / 2);
    for (size_t i = 0; i + 1 < values.size(); i += 2) next.push_back(values[i] + values[i + 1]);
    if (values.size() % 2 == 1) next.push_back(values.back());
    values = std::move(next);
  }
  return values[0];
}

namespace {

int thread_count() {
  if (const char* env = std::getenv("MASSCALC_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

}  // namespace

double integrate(const SphereQuadrature& quad,
                 const std::function<double(const Eigen::VectorXd&)>& f) {
  const size_t count = quad.nodes.size();
  std::vector<double> vals(count);
  const int threads = std::min<int>(thread_count(), static_cast<int>(count ? count : 1));
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) vals[i] = quad.weights[i] * f(quad.nodes[i]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t]() {
        for (size_t i = static_cast<size_t>(t); i < count; i += static_cast<size_t>(threads))
          vals[i] = quad.weights[i] * f(quad.nodes[i]);
      });
    for (auto& th : pool) th.join();
  }
  return tree_sum(std::move(vals));
}

double sphere_moment(int n, const std::vector<int>& alpha, double radius) {
  if (static_cast<int>(alpha.size()) != n)
    throw std::invalid_argument("exponent list must have n entries");
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("exponents must be nonnegative");
    if (a % 2 == 1) return 0;
    total += a;
  }
  double log_num = 0;
  for (int a : alpha) log_num += std::lgamma((a + 1) / 2.0);
  const double log_den = std::lgamma((n + total) / 2.0);
  return 2.0 * std::pow(radius, n - 1 + total) * std::exp(log_num - log_den);
}

}  // namespace masscalc
