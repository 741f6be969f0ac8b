#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "masscalc/weights.hpp"

namespace masscalc {

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Verification family tag: exterior(p), spin, symmetric_traceless(k).
struct FamilySpec {
  enum class Kind { Exterior, Spin, SymmetricTraceless };
  Kind kind = Kind::Exterior;
  int param = 0;  // p for exterior, k for symmetric_traceless

  static FamilySpec exterior(int p) { return {Kind::Exterior, p}; }
  static FamilySpec spin() { return {Kind::Spin, 0}; }
  static FamilySpec symmetric_traceless(int k) { return {Kind::SymmetricTraceless, k}; }

  std::string str() const;
  // Highest weight realized by the family; CapabilityError when none exists
  // (middle exterior power in even dimension).
  DominantWeight weight(int n) const;
};

// Family able to realize a given weight, if one of the supported ones can.
std::optional<FamilySpec> family_for_weight(const DominantWeight& rho);

// Generators rho(e_i ^ e_j), i < j (0-based), acting on the subset basis of
// Lambda^p R^n by the derivation action; real entries, any 0 <= p <= n.
std::vector<RMatrix> exterior_generators(int n, int p);

// Gamma matrices of the positive Clifford algebra on C^{2^floor(n/2)},
// hermitian, gamma_a gamma_b + gamma_b gamma_a = 2 delta_ab.
std::vector<CMatrix> spin_gammas(int n);

// Explicit skew-adjoint generator matrices for one verification family.
struct MatrixRep {
  int n = 0;
  FamilySpec family;
  int dim_V = 0;
  bool complex_scalars = false;
  std::vector<CMatrix> generators;  // index pair_index(i, j), i < j

  int pair_index(int i, int j) const;  // 0-based, i < j
  const CMatrix& gen(int i, int j) const;
  CMatrix act(int i, int j) const;  // rho(e_i ^ e_j) for any i != j
};

// Builds the family representation and verifies skew-adjointness, the
// bracket relations, and the dimension against the Weyl formula.
// CapabilityError for exterior(n/2) with n even (reducible).
MatrixRep build_rep(int n, const FamilySpec& family);

// Conformal weight operator on R^n (x) V in the basis {e_i (x) sigma_kappa},
// block (i, k) = rho(e_i ^ e_k).
struct BOperator {
  int n = 0;
  int dim_V = 0;
  bool complex_scalars = false;
  CMatrix matrix;
};

BOperator build_B(const MatrixRep& rep);

// Spectral projections onto the summands, aligned with decomposition order.
struct ProjectionSet {
  int n = 0;
  int dim_V = 0;
  std::vector<CMatrix> projections;
};

// Lagrange interpolation in B over the distinct conformal weights; a weight
// shared by a mirror pair of summands is split by the central element built
// from perfect matchings (even n), keeping the construction eigenvector-free.
ProjectionSet build_projections(const BOperator& B, const Decomposition& decomp);

// Principal symbol compression q_j(xi) on V: entry (a,b) =
// <xi (x) sigma_a, Pi_j (xi (x) sigma_b)>; xi must be euclidean-unit.
CMatrix symbol_matrix(const ProjectionSet& proj, int j, const Eigen::VectorXd& xi);

// Image of a Lie algebra element with coefficients W(j,k) (j < k) in the
// e_j ^ e_k basis; entries below the diagonal are ignored.
CMatrix rep_from_coefficients(const MatrixRep& rep, const RMatrix& W);

// Predicted B spectrum (conformal weight, multiplicity), descending.
// For the reducible middle exterior power the two mirror decompositions are
// merged, so the prediction covers every supported family tag.
std::vector<std::pair<Rational, BigInt>> predicted_b_spectrum(int n, const FamilySpec& family);

// One named verification check with its worst residual.
struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0;
  double tolerance = 0;
};

struct RepVerification {
  int n = 0;
  FamilySpec family;
  int dim_V = 0;
  bool reducible = false;  // middle exterior power: spectrum-only checks
  std::vector<CheckResult> checks;
  std::vector<std::pair<double, long>> spectrum;  // grouped (eigenvalue, multiplicity)
  bool all_passed = false;
};

// Runs the spectral cross-check suite for one family: generator invariants,
// Casimir scalar, B spectrum against the weight-calculus prediction, tr B^2,
// projection and symbol identities (irreducible families).
RepVerification verify_rep(int n, const FamilySpec& family, int num_xi = 8,
                           unsigned long seed = 12345);

}  // namespace masscalc
