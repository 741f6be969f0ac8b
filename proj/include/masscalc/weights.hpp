#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "masscalc/half_integer.hpp"
#include "masscalc/rational.hpp"

namespace masscalc {

// Dominance test for so(n) weight coordinates: weakly decreasing, last entry
// >= 0 for n odd / bounded below by -rho^{m-1} for n even, and all entries
// congruent mod 1 (all integers or all half-odd).
bool is_dominant(int n, const std::vector<HalfInt>& coords);

// Highest weight of an irreducible so(n)-representation, n >= 3,
// m = floor(n/2) exact half-integer coordinates.
class DominantWeight {
public:
  DominantWeight(int n, std::vector<HalfInt> coords);

  int n() const { return n_; }
  int m() const { return static_cast<int>(coords_.size()); }
  const std::vector<HalfInt>& coords() const { return coords_; }
  HalfInt coord(int i) const { return coords_[static_cast<size_t>(i - 1)]; }  // 1-based

  bool is_zero() const;
  bool spin_type() const { return !coords_[0].is_integer(); }

  // "1,1" / "1/2,1/2" / "3/2,-1/2"; the CLI and file format.
  std::string str() const;
  static DominantWeight parse(int n, const std::string& text);

  static DominantWeight zero(int n);
  static DominantWeight standard(int n);                 // (1,0,...,0)
  static DominantWeight spinor(int n);                   // (1/2,...,1/2), chirality +, n even
  static DominantWeight exterior_power(int n, int p);    // min(p,n-p) ones; rejects p=n/2, n even
  static DominantWeight symmetric_traceless(int n, int k);  // (k,0,...,0)

  friend bool operator==(const DominantWeight& a, const DominantWeight& b) {
    return a.n_ == b.n_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const DominantWeight& a, const DominantWeight& b) { return !(a == b); }

private:
  int n_;
  std::vector<HalfInt> coords_;
};

// How a summand weight arises from rho: lambda = rho + mu_i, rho - mu_i,
// or lambda = rho (n odd, rho^m > 0).
struct Origin {
  enum class Kind { Plus, Minus, Equal };
  Kind kind = Kind::Equal;
  int index = 0;  // 1-based basis-weight index for Plus/Minus, 0 for Equal

  std::string str() const;
  friend bool operator==(const Origin& a, const Origin& b) {
    return a.kind == b.kind && a.index == b.index;
  }
};

struct Summand {
  DominantWeight weight;
  Rational conformal_weight;
  BigInt dim;
  Origin origin;
};

// Splitting of R^n (x) V(rho) into irreducibles, ordered by descending
// conformal weight with descending-lexicographic tiebreak on coordinates.
struct Decomposition {
  DominantWeight rho;
  BigInt dim_V;
  std::vector<Summand> summands;

  int size() const { return static_cast<int>(summands.size()); }
};

// Casimir number c(rho) = sum_i rho_i (rho_i + n - 2i), exact.
Rational casimir(const DominantWeight& rho);

// Casimir of the standard representation, n - 1.
Rational casimir_standard(int n);

// Weyl dimension formula over the positive roots of so(n), exact.
BigInt weyl_dimension(const DominantWeight& rho);

// Closed-form conformal weight for a summand origin:
// plus(i) -> 1 + rho_i - i; minus(i) -> 1 - n - rho_i + i; equal -> (1-n)/2.
Rational conformal_weight_closed_form(const DominantWeight& rho, const Origin& origin);

// w(lambda, rho) = (c(lambda) - c(rho) - c(tau)) / 2, cross-checked against
// the closed form for the origin tag; mismatch raises ConsistencyError and
// lambda not reachable from rho raises std::invalid_argument.
Rational conformal_weight(const DominantWeight& lambda, const DominantWeight& rho);

// Origin tag of lambda relative to rho if lambda is a valid summand weight.
std::optional<Origin> find_origin(const DominantWeight& lambda, const DominantWeight& rho);

// All summands of R^n (x) V(rho) per the selection rule: candidates
// rho +- mu_i filtered by dominance, plus rho itself when n is odd and
// rho^m > 0. Verifies the exact sum rules before returning.
Decomposition decompose(const DominantWeight& rho);

}  // namespace masscalc
