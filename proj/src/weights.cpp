#include "masscalc/weights.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "masscalc/errors.hpp"

namespace masscalc {

bool is_dominant(int n, const std::vector<HalfInt>& coords) {
  if (n < 3) throw std::invalid_argument("dimension must be at least 3");
  const int m = n / 2;
  if (static_cast<int>(coords.size()) != m)
    throw std::invalid_argument("weight must have floor(n/2) coordinates");
  // congruence: all integers or all half-odd
  for (int i = 1; i < m; ++i)
    if (((coords[0].doubled ^ coords[static_cast<size_t>(i)].doubled) & 1) != 0) return false;
  for (int i = 0; i + 1 < m - 1; ++i)
    if (coords[static_cast<size_t>(i)] < coords[static_cast<size_t>(i + 1)]) return false;
  if (n % 2 == 1) {
    if (m >= 2 && coords[static_cast<size_t>(m - 2)] < coords[static_cast<size_t>(m - 1)]) return false;
    return coords[static_cast<size_t>(m - 1)].doubled >= 0;
  }
  // n even: rho^{m-1} >= |rho^m|
  const std::int64_t last = coords[static_cast<size_t>(m - 1)].doubled;
  return coords[static_cast<size_t>(m - 2)].doubled >= std::llabs(last);
}

DominantWeight::DominantWeight(int n, std::vector<HalfInt> coords) : n_(n), coords_(std::move(coords)) {
  if (!is_dominant(n_, coords_)) throw std::invalid_argument("coordinates are not a dominant so(n) weight");
}

bool DominantWeight::is_zero() const {
  for (const auto& c : coords_)
    if (c.doubled != 0) return false;
  return true;
}

std::string DominantWeight::str() const {
  std::string out;
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ",";
    out += coords_[i].str();
  }
  return out;
}

DominantWeight DominantWeight::parse(int n, const std::string& text) {
  std::vector<HalfInt> coords;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t slash = tok.find('/');
    try {
      if (slash == std::string::npos) {
        coords.push_back(HalfInt::whole(std::stoll(tok)));
      } else {
        long long num = std::stoll(tok.substr(0, slash));
        long long den = std::stoll(tok.substr(slash + 1));
        if (den == 1)
          coords.push_back(HalfInt::whole(num));
        else if (den == 2)
          coords.push_back(HalfInt::from_doubled(num));
        else
          throw std::invalid_argument("weight coordinates must be integers or half-integers");
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("cannot parse weight coordinate '" + tok + "'");
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("weight coordinate out of range: '" + tok + "'");
    }
  }
  return DominantWeight(n, std::move(coords));
}

DominantWeight DominantWeight::zero(int n) {
  return DominantWeight(n, std::vector<HalfInt>(static_cast<size_t>(n / 2)));
}

DominantWeight DominantWeight::standard(int n) {
  std::vector<HalfInt> c(static_cast<size_t>(n / 2));
  c[0] = HalfInt::whole(1);
  return DominantWeight(n, c);
}

DominantWeight DominantWeight::spinor(int n) {
  std::vector<HalfInt> c(static_cast<size_t>(n / 2), HalfInt::half_odd(0));
  return DominantWeight(n, c);
}

DominantWeight DominantWeight::exterior_power(int n, int p) {
  if (p < 0 || p > n) throw std::invalid_argument("exterior power index must satisfy 0 <= p <= n");
  if (n % 2 == 0 && 2 * p == n)
    throw CapabilityError("the middle exterior power of an even-dimensional space is reducible "
                          "and carries no single dominant weight");
  const int q = std::min(p, n - p);
  std::vector<HalfInt> c(static_cast<size_t>(n / 2));
  for (int i = 0; i < q; ++i) c[static_cast<size_t>(i)] = HalfInt::whole(1);
  return DominantWeight(n, c);
}

DominantWeight DominantWeight::symmetric_traceless(int n, int k) {
  if (k < 0) throw std::invalid_argument("symmetric power index must be nonnegative");
  std::vector<HalfInt> c(static_cast<size_t>(n / 2));
  c[0] = HalfInt::whole(k);
  return DominantWeight(n, c);
}

std::string Origin::str() const {
  switch (kind) {
    case Kind::Plus: return "plus(" + std::to_string(index) + ")";
    case Kind::Minus: return "minus(" + std::to_string(index) + ")";
    case Kind::Equal: return "equal";
  }
  return "";
}

Rational casimir(const DominantWeight& rho) {
  const int n = rho.n();
  BigInt sum = 0;
  for (int i = 1; i <= rho.m(); ++i) {
    const BigInt d = rho.coord(i).doubled;
    sum += d * (d + 2 * n - 4 * i);
  }
  return Rational(sum, BigInt(4));
}

Rational casimir_standard(int n) { return Rational(n - 1); }

BigInt weyl_dimension(const DominantWeight& rho) {
  const int n = rho.n();
  const int m = rho.m();
  // doubled coordinates of rho + delta and of delta
  std::vector<BigInt> D(static_cast<size_t>(m)), E(static_cast<size_t>(m));
  for (int i = 1; i <= m; ++i) {
    D[static_cast<size_t>(i - 1)] = BigInt(rho.coord(i).doubled) + (n - 2 * i);
    E[static_cast<size_t>(i - 1)] = n - 2 * i;
  }
  BigInt num = 1, den = 1;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      num *= (D[static_cast<size_t>(i)] - D[static_cast<size_t>(j)]) *
             (D[static_cast<size_t>(i)] + D[static_cast<size_t>(j)]);
      den *= (E[static_cast<size_t>(i)] - E[static_cast<size_t>(j)]) *
             (E[static_cast<size_t>(i)] + E[static_cast<size_t>(j)]);
    }
    if (n % 2 == 1) {
      num *= D[static_cast<size_t>(i)];
      den *= E[static_cast<size_t>(i)];
    }
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw ConsistencyError("Weyl dimension product is not integral");
  BigInt dim;
  mpz_divexact(dim.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return dim;
}

Rational conformal_weight_closed_form(const DominantWeight& rho, const Origin& origin) {
  const int n = rho.n();
  switch (origin.kind) {
    case Origin::Kind::Plus: {
      const std::int64_t d = rho.coord(origin.index).doubled;
      return Rational(BigInt(2 + d - 2 * origin.index), BigInt(2));
    }
    case Origin::Kind::Minus: {
      const std::int64_t d = rho.coord(origin.index).doubled;
      return Rational(BigInt(2 - 2 * n - d + 2 * origin.index), BigInt(2));
    }
    case Origin::Kind::Equal:
      return Rational(1 - n, 2);
  }
  throw std::invalid_argument("unknown origin tag");
}

std::optional<Origin> find_origin(const DominantWeight& lambda, const DominantWeight& rho) {
  if (lambda.n() != rho.n()) return std::nullopt;
  int diff_index = 0;
  std::int64_t diff = 0;
  for (int i = 1; i <= rho.m(); ++i) {
    const std::int64_t d = lambda.coord(i).doubled - rho.coord(i).doubled;
    if (d == 0) continue;
    if (diff_index != 0 || (d != 2 && d != -2)) return std::nullopt;
    diff_index = i;
    diff = d;
  }
  if (diff_index == 0) {
    if (rho.n() % 2 == 1 && rho.coord(rho.m()).doubled > 0) return Origin{Origin::Kind::Equal, 0};
    return std::nullopt;
  }
  return Origin{diff > 0 ? Origin::Kind::Plus : Origin::Kind::Minus, diff_index};
}

Rational conformal_weight(const DominantWeight& lambda, const DominantWeight& rho) {
  auto origin = find_origin(lambda, rho);
  if (!origin) throw std::invalid_argument("weight is not a summand of the tensor product");
  const Rational by_casimir =
      (casimir(lambda) - casimir(rho) - casimir_standard(rho.n())) * Rational(1, 2);
  const Rational by_table = conformal_weight_closed_form(rho, *origin);
  if (by_casimir != by_table)
    throw ConsistencyError("Casimir-difference conformal weight disagrees with the closed form for " +
                           lambda.str() + " in R^n (x) V(" + rho.str() + ")");
  return by_casimir;
}

namespace {

bool summand_order(const Summand& a, const Summand& b) {
  if (a.conformal_weight != b.conformal_weight) return a.conformal_weight > b.conformal_weight;
  const auto& ca = a.weight.coords();
  const auto& cb = b.weight.coords();
  for (size_t i = 0; i < ca.size(); ++i)
    if (ca[i] != cb[i]) return ca[i] > cb[i];
  return false;
}

}  // namespace

Decomposition decompose(const DominantWeight& rho) {
  const int n = rho.n();
  const int m = rho.m();
  Decomposition out{rho, weyl_dimension(rho), {}};

  auto add_candidate = [&](std::vector<HalfInt> coords) {
    if (!is_dominant(n, coords)) return;
    DominantWeight lambda(n, std::move(coords));
    out.summands.push_back(
        Summand{lambda, conformal_weight(lambda, rho), weyl_dimension(lambda),
                *find_origin(lambda, rho)});
  };

  for (int i = 1; i <= m; ++i) {
    for (int s : {+2, -2}) {
      auto coords = rho.coords();
      coords[static_cast<size_t>(i - 1)].doubled += s;
      add_candidate(std::move(coords));
    }
  }
  if (n % 2 == 1 && rho.coord(m).doubled > 0) add_candidate(rho.coords());

  std::sort(out.summands.begin(), out.summands.end(), summand_order);

  // exact sum rules; any violation is an internal defect
  BigInt dim_sum = 0;
  Rational w_sum(0), w2_sum(0);
  for (const auto& s : out.summands) {
    dim_sum += s.dim;
    w_sum += s.conformal_weight * Rational(s.dim);
    w2_sum += s.conformal_weight * s.conformal_weight * Rational(s.dim);
  }
  if (dim_sum != BigInt(n) * out.dim_V)
    throw ConsistencyError("summand dimensions do not add up to n * dim V for rho=" + rho.str());
  if (!w_sum.is_zero())
    throw ConsistencyError("weighted dimension sum (trace of B) is nonzero for rho=" + rho.str());
  if (w2_sum != Rational(2) * Rational(out.dim_V) * casimir(rho))
    throw ConsistencyError("quadratic weight sum differs from 2 dimV c(rho) for rho=" + rho.str());
  for (size_t i = 0; i + 1 < out.summands.size(); ++i)
    for (size_t j = i + 1; j < out.summands.size(); ++j)
      if (out.summands[i].weight == out.summands[j].weight)
        throw ConsistencyError("repeated summand weight for rho=" + rho.str());

  return out;
}

}  // namespace masscalc
