#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "masscalc/errors.hpp"
#include "masscalc/weights.hpp"
#include "test_util.hpp"

using namespace masscalc;

namespace {

HalfInt h(std::int64_t doubled) { return HalfInt::from_doubled(doubled); }

DominantWeight w(int n, std::initializer_list<std::int64_t> doubled) {
  std::vector<HalfInt> c;
  for (auto d : doubled) c.push_back(h(d));
  return DominantWeight(n, std::move(c));
}

}  // namespace

TEST_CASE("dominance test accepts and rejects the documented coordinate patterns") {
  CHECK(is_dominant(5, {h(2), h(2)}));
  CHECK(is_dominant(4, {h(2), h(-2)}));
  CHECK_FALSE(is_dominant(5, {h(2), h(3)}));  // (1, 3/2): ordering and congruence both fail
  CHECK_FALSE(is_dominant(5, {h(2), h(-2)}));
  CHECK_FALSE(is_dominant(4, {h(2), h(-4)}));
  CHECK_FALSE(is_dominant(6, {h(2), h(1), h(1)}));
  CHECK(is_dominant(6, {h(3), h(1), h(-1)}));
  CHECK_THROWS_AS((void)is_dominant(5, {h(2)}), std::invalid_argument);
  CHECK_THROWS_AS(DominantWeight(5, {h(2), h(4)}), std::invalid_argument);
}

TEST_CASE("weight text format round-trips") {
  CHECK(DominantWeight::parse(5, "1,1").str() == "1,1");
  CHECK(DominantWeight::parse(3, "1/2").str() == "1/2");
  CHECK(DominantWeight::parse(4, "1,-1").str() == "1,-1");
  CHECK(DominantWeight::parse(7, "3/2,1/2,1/2").str() == "3/2,1/2,1/2");
  CHECK_THROWS_AS(DominantWeight::parse(5, "1,x"), std::invalid_argument);
  CHECK_THROWS_AS(DominantWeight::parse(5, "1,3/4"), std::invalid_argument);
  CHECK_THROWS_AS(DominantWeight::parse(5, "1"), std::invalid_argument);
}

TEST_CASE("casimir of the standard representation is n-1") {
  for (int n = 3; n <= 12; ++n)
    CHECK(casimir(DominantWeight::standard(n)) == Rational(n - 1));
  CHECK(casimir(DominantWeight::zero(7)) == Rational(0));
}

// Independent oracle: the spin representation of so(3) on C^2 built from
// Pauli matrices. The quadratic Casimir -sum rho(e_i ^ e_j)^2 must be 3/4.
TEST_CASE("casimir matches the explicit 2x2 gamma-matrix spin representation") {
  using Mat = Eigen::Matrix2cd;
  const std::complex<double> I(0, 1);
  Mat s1, s2, s3;
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;
  const std::vector<Mat> gamma = {s1, s2, s3};
  Mat cas = Mat::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Mat gen = 0.5 * gamma[j] * gamma[i];
      cas -= gen * gen;
    }
  CHECK((cas - 0.75 * Mat::Identity()).norm() < 1e-14);
  CHECK(casimir(w(3, {1})) == Rational(3, 4));
}

// Independent oracle: Lambda^2 R^5 realized as antisymmetric 5x5 matrices with
// the adjoint action. The Casimir matrix on that 10-dimensional space must be
// 6 times the identity, and 6 = p(n-p) for p=2, n=5.
TEST_CASE("casimir matches the explicit two-form representation of so(5)") {
  const int n = 5;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  const int N = static_cast<int>(pairs.size());

  auto so_elem = [&](int a, int b) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
    X(b, a) = 1;
    X(a, b) = -1;
    return X;
  };
  auto to_coords = [&](const Eigen::MatrixXd& X) {
    Eigen::VectorXd v(N);
    for (int k = 0; k < N; ++k) v(k) = X(pairs[static_cast<size_t>(k)].second,
                                          pairs[static_cast<size_t>(k)].first);
    return v;
  };

  std::vector<Eigen::MatrixXd> gens;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Eigen::MatrixXd G(N, N);
      const Eigen::MatrixXd Y = so_elem(a, b);
      for (int k = 0; k < N; ++k) {
        const Eigen::MatrixXd X = so_elem(pairs[static_cast<size_t>(k)].first,
                                          pairs[static_cast<size_t>(k)].second);
        G.col(k) = to_coords(Y * X - X * Y);
      }
      gens.push_back(G);
    }

  Eigen::MatrixXd cas = Eigen::MatrixXd::Zero(N, N);
  for (const auto& G : gens) cas -= G * G;
  CHECK((cas - 6.0 * Eigen::MatrixXd::Identity(N, N)).norm() < 1e-12);
  CHECK(casimir(w(5, {2, 2})) == Rational(6));
}

TEST_CASE("weyl dimension reproduces the known small cases") {
  CHECK(weyl_dimension(w(3, {3})) == BigInt(4));
  CHECK(weyl_dimension(DominantWeight::zero(6)) == BigInt(1));
  CHECK(weyl_dimension(w(5, {4, 2})) == BigInt(35));
  CHECK(weyl_dimension(w(5, {2, 2})) == BigInt(10));
  CHECK(weyl_dimension(w(3, {4})) == BigInt(5));
  for (int n = 3; n <= 12; ++n) {
    CHECK(weyl_dimension(DominantWeight::standard(n)) == BigInt(n));
    const BigInt spin_dim = weyl_dimension(DominantWeight::spinor(n));
    const int mexp = (n % 2 == 1) ? n / 2 : n / 2 - 1;
    CHECK(spin_dim == BigInt(1) << mexp);
  }
}

TEST_CASE("decomposition of R^5 (x) Lambda^2 matches the frozen table") {
  const Decomposition d = decompose(w(5, {2, 2}));
  REQUIRE(d.size() == 3);
  CHECK(d.dim_V == BigInt(10));

  CHECK(d.summands[0].weight == w(5, {4, 2}));
  CHECK(d.summands[0].conformal_weight == Rational(1));
  CHECK(d.summands[0].dim == BigInt(35));
  CHECK(d.summands[0].origin == Origin{Origin::Kind::Plus, 1});

  CHECK(d.summands[1].weight == w(5, {2, 2}));
  CHECK(d.summands[1].conformal_weight == Rational(-2));
  CHECK(d.summands[1].dim == BigInt(10));
  CHECK(d.summands[1].origin == Origin{Origin::Kind::Equal, 0});

  CHECK(d.summands[2].weight == w(5, {2, 0}));
  CHECK(d.summands[2].conformal_weight == Rational(-3));
  CHECK(d.summands[2].dim == BigInt(5));
  CHECK(d.summands[2].origin == Origin{Origin::Kind::Minus, 2});
}

TEST_CASE("decomposition of the trivial and spin cases") {
  for (int n : {3, 4, 5, 8, 11}) {
    const Decomposition d = decompose(DominantWeight::zero(n));
    REQUIRE(d.size() == 1);
    CHECK(d.summands[0].weight == DominantWeight::standard(n));
    CHECK(d.summands[0].conformal_weight == Rational(0));
    CHECK(d.summands[0].dim == BigInt(n));
  }

  const Decomposition s3 = decompose(w(3, {1}));
  REQUIRE(s3.size() == 2);
  CHECK(s3.summands[0].weight == w(3, {3}));
  CHECK(s3.summands[0].conformal_weight == Rational(1, 2));
  CHECK(s3.summands[0].dim == BigInt(4));
  CHECK(s3.summands[1].weight == w(3, {1}));
  CHECK(s3.summands[1].conformal_weight == Rational(-1));
  CHECK(s3.summands[1].dim == BigInt(2));
}

TEST_CASE("middle-degree forms in even dimension split into a mirror pair") {
  const Decomposition d = decompose(DominantWeight::standard(4));
  REQUIRE(d.size() == 4);
  CHECK(d.summands[0].weight == w(4, {4, 0}));
  CHECK(d.summands[0].conformal_weight == Rational(1));
  CHECK(d.summands[0].dim == BigInt(9));
  CHECK(d.summands[1].weight == w(4, {2, 2}));
  CHECK(d.summands[1].conformal_weight == Rational(-1));
  CHECK(d.summands[2].weight == w(4, {2, -2}));
  CHECK(d.summands[2].conformal_weight == Rational(-1));
  CHECK(d.summands[1].dim == BigInt(3));
  CHECK(d.summands[2].dim == BigInt(3));
  CHECK(d.summands[3].weight == DominantWeight::zero(4));
  CHECK(d.summands[3].conformal_weight == Rational(-3));
  CHECK(d.summands[3].dim == BigInt(1));
}

TEST_CASE("conformal weights for p-forms follow the closed pattern") {
  for (int n = 4; n <= 9; ++n) {
    const int m = n / 2;
    for (int p = 1; p < m; ++p) {
      const DominantWeight rho = DominantWeight::exterior_power(n, p);
      const Decomposition d = decompose(rho);
      bool saw_minus_p = false, saw_p_minus_n = false, saw_one = false;
      for (const auto& s : d.summands) {
        if (s.conformal_weight == Rational(1)) saw_one = true;
        if (s.conformal_weight == Rational(-p)) saw_minus_p = true;
        if (s.conformal_weight == Rational(p - n)) saw_p_minus_n = true;
      }
      CHECK(saw_one);
      CHECK(saw_minus_p);
      CHECK(saw_p_minus_n);
    }
  }
}

TEST_CASE("spin-adjacent weights (k,...,k,+-k) carry the two-summand pattern") {
  for (int n : {4, 6, 8, 10}) {
    const int m = n / 2;
    for (int k = 1; k <= 3; ++k) {
      for (int sign : {+1, -1}) {
        std::vector<HalfInt> c(static_cast<size_t>(m), HalfInt::whole(k));
        c[static_cast<size_t>(m - 1)] = HalfInt::whole(sign * k);
        const Decomposition d = decompose(DominantWeight(n, c));
        REQUIRE(d.size() == 2);
        CHECK(d.summands[0].conformal_weight == Rational(k));
        CHECK(d.summands[1].conformal_weight == Rational(2 - n - 2 * k, 2));
      }
    }
  }
}

TEST_CASE("conformal weight rejects non-summands and validates both routes") {
  CHECK_THROWS_AS(conformal_weight(w(5, {6, 2}), w(5, {2, 2})), std::invalid_argument);
  CHECK_THROWS_AS(conformal_weight(w(5, {4, 2}), w(5, {2, 0})), std::invalid_argument);
  // equal-origin requires n odd with positive last coordinate
  CHECK_THROWS_AS(conformal_weight(w(4, {2, 0}), w(4, {2, 0})), std::invalid_argument);
  CHECK(conformal_weight(DominantWeight::standard(6), DominantWeight::zero(6)) == Rational(0));
}

TEST_CASE("exterior and spinor weight builders") {
  CHECK(DominantWeight::exterior_power(5, 2) == w(5, {2, 2}));
  CHECK(DominantWeight::exterior_power(5, 3) == w(5, {2, 2}));
  CHECK(DominantWeight::exterior_power(6, 5) == w(6, {2, 0, 0}));
  CHECK(DominantWeight::exterior_power(7, 0) == DominantWeight::zero(7));
  CHECK(DominantWeight::exterior_power(6, 6) == DominantWeight::zero(6));
  CHECK_THROWS_AS(DominantWeight::exterior_power(6, 3), CapabilityError);
  CHECK(DominantWeight::spinor(4) == w(4, {1, 1}));
  CHECK(DominantWeight::symmetric_traceless(3, 2) == w(3, {4}));
  CHECK(weyl_dimension(DominantWeight::symmetric_traceless(3, 2)) == BigInt(5));
}

TEST_CASE("random decompositions satisfy the exact sum rules") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 12)(rng);
    const DominantWeight rho = testutil::random_dominant_weight(rng, n);
    const Decomposition d = decompose(rho);

    BigInt dim_sum = 0;
    Rational w_sum(0), w2_sum(0);
    for (const auto& s : d.summands) {
      dim_sum += s.dim;
      w_sum += s.conformal_weight * Rational(s.dim);
      w2_sum += s.conformal_weight * s.conformal_weight * Rational(s.dim);
      CHECK(s.dim > 0);
      CHECK(conformal_weight_closed_form(rho, s.origin) == s.conformal_weight);
      CHECK(conformal_weight(s.weight, rho) == s.conformal_weight);
    }
    CHECK(dim_sum == BigInt(n) * d.dim_V);
    CHECK(w_sum == Rational(0));
    CHECK(w2_sum == Rational(2) * Rational(d.dim_V) * casimir(rho));

    for (int i = 0; i < d.size(); ++i)
      for (int j = i + 1; j < d.size(); ++j) {
        CHECK_FALSE(d.summands[static_cast<size_t>(i)].weight ==
                    d.summands[static_cast<size_t>(j)].weight);
        CHECK(d.summands[static_cast<size_t>(i)].conformal_weight >=
              d.summands[static_cast<size_t>(j)].conformal_weight);
      }

    // determinism: a second call produces the identical summand order
    const Decomposition d2 = decompose(rho);
    REQUIRE(d2.size() == d.size());
    for (int i = 0; i < d.size(); ++i)
      CHECK(d2.summands[static_cast<size_t>(i)].weight == d.summands[static_cast<size_t>(i)].weight);
  }
}
