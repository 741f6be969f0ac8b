#include "masscalc/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "masscalc/errors.hpp"

namespace masscalc {

namespace {

using Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

double inf_norm(const CMatrix& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

CMatrix kron2(const CMatrix& A, const CMatrix& B) {
  CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

std::vector<std::vector<int>> subsets_of_size(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n - (p - static_cast<int>(cur.size())); ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// multi-indices alpha with |alpha| = k over n variables, lexicographic
std::vector<std::vector<int>> multi_indices(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(n));
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[static_cast<size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (k >= 0) rec(rec, 0, k);
  return out;
}

double factorial_product(const std::vector<int>& alpha) {
  double f = 1;
  for (int a : alpha)
    for (int t = 2; t <= a; ++t) f *= t;
  return f;
}

}  // namespace

std::string FamilySpec::str() const {
  switch (kind) {
    case Kind::Exterior: return "exterior(" + std::to_string(param) + ")";
    case Kind::Spin: return "spin";
    case Kind::SymmetricTraceless: return "symmetric_traceless(" + std::to_string(param) + ")";
  }
  return "";
}

DominantWeight FamilySpec::weight(int n) const {
  switch (kind) {
    case Kind::Exterior: return DominantWeight::exterior_power(n, param);
    case Kind::Spin: return DominantWeight::spinor(n);
    case Kind::SymmetricTraceless: return DominantWeight::symmetric_traceless(n, param);
  }
  throw std::invalid_argument("unknown family kind");
}

std::optional<FamilySpec> family_for_weight(const DominantWeight& rho) {
  const int n = rho.n();
  const int m = rho.m();
  if (rho.is_zero()) return FamilySpec::exterior(0);
  if (rho.spin_type()) {
    for (int i = 1; i <= m; ++i)
      if (rho.coord(i).doubled != 1) return std::nullopt;
    return FamilySpec::spin();
  }
  if (rho.coord(1).doubled >= 2) {
    bool rest_zero = true;
    for (int i = 2; i <= m; ++i) rest_zero = rest_zero && rho.coord(i).doubled == 0;
    if (rest_zero) {
      const int k = static_cast<int>(rho.coord(1).doubled / 2);
      return k == 1 ? FamilySpec::exterior(1) : FamilySpec::symmetric_traceless(k);
    }
  }
  int p = 0;
  while (p < m && rho.coord(p + 1).doubled == 2) ++p;
  for (int i = p + 1; i <= m; ++i)
    if (rho.coord(i).doubled != 0) return std::nullopt;
  if (n % 2 == 0 && p == m) return std::nullopt;  // chirality half of the middle power
  return FamilySpec::exterior(p);
}

std::vector<RMatrix> exterior_generators(int n, int p) {
  if (p < 0 || p > n) throw std::invalid_argument("exterior power index must satisfy 0 <= p <= n");
  const auto basis = subsets_of_size(n, p);
  std::map<std::vector<int>, int> index;
  for (size_t s = 0; s < basis.size(); ++s) index[basis[s]] = static_cast<int>(s);
  const int N = static_cast<int>(basis.size());

  auto replace = [&](const std::vector<int>& S, int from, int to, int& sign_out) {
    // elements of S strictly between from and to each cost one transposition
    int c = 0;
    std::vector<int> T;
    T.reserve(S.size());
    const int lo = std::min(from, to), hi = std::max(from, to);
    for (int v : S) {
      if (v == from) continue;
      if (v > lo && v < hi) ++c;
      T.push_back(v);
    }
    T.insert(std::lower_bound(T.begin(), T.end(), to), to);
    sign_out = (c % 2 == 0) ? 1 : -1;
    return T;
  };

  std::vector<RMatrix> gens;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      RMatrix G = RMatrix::Zero(N, N);
      for (int s = 0; s < N; ++s) {
        const auto& S = basis[static_cast<size_t>(s)];
        const bool has_i = std::binary_search(S.begin(), S.end(), i);
        const bool has_j = std::binary_search(S.begin(), S.end(), j);
        if (has_i && !has_j) {
          int sg;
          G(index[replace(S, i, j, sg)], s) += sg;  // e_i -> e_j
        } else if (has_j && !has_i) {
          int sg;
          G(index[replace(S, j, i, sg)], s) -= sg;  // e_j -> -e_i
        }
      }
      gens.push_back(std::move(G));
    }
  }
  return gens;
}

std::vector<CMatrix> spin_gammas(int n) {
  if (n < 3) throw std::invalid_argument("dimension must be at least 3");
  const int m = n / 2;
  CMatrix s1(2, 2), s2(2, 2), s3(2, 2), id2 = CMatrix::Identity(2, 2);
  const std::complex<double> I(0, 1);
  s1 << 0, 1, 1, 0;
  s2 << 0, -I, I, 0;
  s3 << 1, 0, 0, -1;

  auto chain = [&](int slot, const CMatrix& mid) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int t = 0; t < m; ++t) out = kron2(out, t < slot ? s3 : (t == slot ? mid : id2));
    return out;
  };

  std::vector<CMatrix> gammas;
  for (int k = 0; k < m; ++k) {
    gammas.push_back(chain(k, s1));
    gammas.push_back(chain(k, s2));
  }
  if (n % 2 == 1) gammas.push_back(chain(m, s3));  // sigma_3 in every slot
  return gammas;
}

int MatrixRep::pair_index(int i, int j) const {
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

const CMatrix& MatrixRep::gen(int i, int j) const {
  return generators[static_cast<size_t>(pair_index(i, j))];
}

CMatrix MatrixRep::act(int i, int j) const {
  if (i == j) return CMatrix::Zero(dim_V, dim_V);
  if (i < j) return gen(i, j);
  return -gen(j, i);
}

namespace {

MatrixRep build_exterior_rep(int n, int p) {
  MatrixRep rep;
  rep.n = n;
  rep.family = FamilySpec::exterior(p);
  rep.complex_scalars = false;
  auto gens = exterior_generators(n, p);
  rep.generators.reserve(gens.size());
  for (auto& g : gens) rep.generators.push_back(g.cast<std::complex<double>>());
  rep.dim_V = static_cast<int>(rep.generators.front().rows());
  return rep;
}

MatrixRep build_spin_rep(int n) {
  MatrixRep rep;
  rep.n = n;
  rep.family = FamilySpec::spin();
  rep.complex_scalars = true;
  const auto gammas = spin_gammas(n);
  const int full = static_cast<int>(gammas.front().rows());

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const CMatrix anti = gammas[static_cast<size_t>(a)] * gammas[static_cast<size_t>(b)] +
                           gammas[static_cast<size_t>(b)] * gammas[static_cast<size_t>(a)];
      const CMatrix expect = (a == b) ? CMatrix(2.0 * CMatrix::Identity(full, full))
                                      : CMatrix(CMatrix::Zero(full, full));
      if (inf_norm(anti - expect) > 1e-12)
        throw ConsistencyError("gamma matrices violate the Clifford relations");
    }

  std::vector<CMatrix> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      gens.push_back(0.5 * gammas[static_cast<size_t>(j)] * gammas[static_cast<size_t>(i)]);

  if (n % 2 == 1) {
    rep.generators = std::move(gens);
    rep.dim_V = full;
    return rep;
  }

  // even n: generators preserve the chirality splitting; keep the + eigenspace
  std::vector<int> plus, minus;
  for (int idx = 0; idx < full; ++idx)
    (std::popcount(static_cast<unsigned>(idx)) % 2 == 0 ? plus : minus).push_back(idx);
  CMatrix P = CMatrix::Zero(full, full / 2), Q = CMatrix::Zero(full, full / 2);
  for (size_t c = 0; c < plus.size(); ++c) P(plus[c], static_cast<Eigen::Index>(c)) = 1;
  for (size_t c = 0; c < minus.size(); ++c) Q(minus[c], static_cast<Eigen::Index>(c)) = 1;
  for (auto& g : gens) {
    if (inf_norm(CMatrix(Q.adjoint() * g * P)) > 1e-12)
      throw ConsistencyError("spin generator does not preserve chirality");
    g = CMatrix(P.adjoint() * g * P);
  }
  rep.generators = std::move(gens);
  rep.dim_V = full / 2;
  return rep;
}

MatrixRep build_symmetric_traceless_rep(int n, int k) {
  if (k < 1) throw std::invalid_argument("symmetric_traceless requires k >= 1");
  MatrixRep rep;
  rep.n = n;
  rep.family = FamilySpec::symmetric_traceless(k);
  rep.complex_scalars = false;

  const auto monos = multi_indices(n, k);
  const int M = static_cast<int>(monos.size());
  std::map<std::vector<int>, int> mono_index;
  for (size_t s = 0; s < monos.size(); ++s) mono_index[monos[s]] = static_cast<int>(s);

  // harmonic subspace: kernel of the Laplacian coefficient map P_k -> P_{k-2}
  RMatrix kernel;
  if (k < 2) {
    kernel = RMatrix::Identity(M, M);
  } else {
    const auto lower = multi_indices(n, k - 2);
    std::map<std::vector<int>, int> lower_index;
    for (size_t s = 0; s < lower.size(); ++s) lower_index[lower[s]] = static_cast<int>(s);
    RMatrix L = RMatrix::Zero(static_cast<Eigen::Index>(lower.size()), M);
    for (int s = 0; s < M; ++s) {
      const auto& a = monos[static_cast<size_t>(s)];
      for (int v = 0; v < n; ++v) {
        if (a[static_cast<size_t>(v)] < 2) continue;
        auto b = a;
        b[static_cast<size_t>(v)] -= 2;
        L(lower_index[b], s) +=
            a[static_cast<size_t>(v)] * (a[static_cast<size_t>(v)] - 1);
      }
    }
    Eigen::FullPivLU<RMatrix> lu(L);
    kernel = lu.kernel();
  }
  const int N = static_cast<int>(kernel.cols());

  // orthonormalize w.r.t. the apolar pairing <x^a, x^b> = delta_ab a!
  VectorXd D(M);
  for (int s = 0; s < M; ++s) D(s) = factorial_product(monos[static_cast<size_t>(s)]);
  const RMatrix gram = kernel.transpose() * D.asDiagonal() * kernel;
  Eigen::LLT<RMatrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw ConsistencyError("harmonic polynomial Gram matrix is not positive definite");
  const RMatrix Lo = llt.matrixL();
  const RMatrix H =
      Lo.triangularView<Eigen::Lower>().solve(kernel.transpose()).transpose();
  if ((H.transpose() * D.asDiagonal() * H - RMatrix::Identity(N, N)).cwiseAbs().maxCoeff() > 1e-8)
    throw ConsistencyError("harmonic basis failed to orthonormalize");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // x_j d_i - x_i d_j on monomial coefficients
      RMatrix act = RMatrix::Zero(M, M);
      for (int s = 0; s < M; ++s) {
        const auto& a = monos[static_cast<size_t>(s)];
        if (a[static_cast<size_t>(i)] >= 1) {
          auto b = a;
          b[static_cast<size_t>(i)] -= 1;
          b[static_cast<size_t>(j)] += 1;
          act(mono_index[b], s) += a[static_cast<size_t>(i)];
        }
        if (a[static_cast<size_t>(j)] >= 1) {
          auto b = a;
          b[static_cast<size_t>(j)] -= 1;
          b[static_cast<size_t>(i)] += 1;
          act(mono_index[b], s) -= a[static_cast<size_t>(j)];
        }
      }
      const RMatrix G = H.transpose() * D.asDiagonal() * act * H;
      rep.generators.push_back(G.cast<std::complex<double>>());
    }
  rep.dim_V = N;
  return rep;
}

}  // namespace

MatrixRep build_rep(int n, const FamilySpec& family) {
  if (n < 3) throw std::invalid_argument("dimension must be at least 3");
  const DominantWeight rho = family.weight(n);  // CapabilityError for reducible cases

  MatrixRep rep;
  switch (family.kind) {
    case FamilySpec::Kind::Exterior: rep = build_exterior_rep(n, family.param); break;
    case FamilySpec::Kind::Spin: rep = build_spin_rep(n); break;
    case FamilySpec::Kind::SymmetricTraceless:
      rep = build_symmetric_traceless_rep(n, family.param);
      break;
  }

  if (BigInt(rep.dim_V) != weyl_dimension(rho))
    throw ConsistencyError("constructed dimension disagrees with the Weyl formula for " +
                           family.str());
  for (const auto& g : rep.generators)
    if (inf_norm(CMatrix(g + g.adjoint())) > 1e-11)
      throw ConsistencyError("generator fails skew-adjointness for " + family.str());
  return rep;
}

BOperator build_B(const MatrixRep& rep) {
  const int n = rep.n, N = rep.dim_V;
  BOperator B;
  B.n = n;
  B.dim_V = N;
  B.complex_scalars = rep.complex_scalars;
  B.matrix = CMatrix::Zero(static_cast<Eigen::Index>(n) * N, static_cast<Eigen::Index>(n) * N);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      B.matrix.block(static_cast<Eigen::Index>(i) * N, static_cast<Eigen::Index>(k) * N, N, N) =
          rep.act(i, k);
    }
  if (inf_norm(CMatrix(B.matrix - B.matrix.adjoint())) > 1e-12)
    throw ConsistencyError("B operator is not self-adjoint");
  return B;
}

namespace {

// rho-hat(e_i ^ e_j) X for the action on R^n (x) V: blockwise rho plus the
// defining rotation mixing the row blocks; i < j.
CMatrix apply_pair_on_tensor(const MatrixRep& rep, int i, int j, const CMatrix& X) {
  const int N = rep.dim_V;
  CMatrix out(X.rows(), X.cols());
  const CMatrix& g = rep.gen(i, j);
  for (int a = 0; a < rep.n; ++a)
    out.middleRows(static_cast<Eigen::Index>(a) * N, N) =
        g * X.middleRows(static_cast<Eigen::Index>(a) * N, N);
  out.middleRows(static_cast<Eigen::Index>(j) * N, N) +=
      X.middleRows(static_cast<Eigen::Index>(i) * N, N);
  out.middleRows(static_cast<Eigen::Index>(i) * N, N) -=
      X.middleRows(static_cast<Eigen::Index>(j) * N, N);
  return out;
}

void enumerate_matchings(std::vector<int>& free_idx, std::vector<std::pair<int, int>>& cur,
                         std::vector<std::pair<std::vector<std::pair<int, int>>, int>>& out) {
  if (free_idx.empty()) {
    std::vector<int> word;
    for (auto& pr : cur) {
      word.push_back(pr.first);
      word.push_back(pr.second);
    }
    int inv = 0;
    for (size_t a = 0; a < word.size(); ++a)
      for (size_t b = a + 1; b < word.size(); ++b)
        if (word[a] > word[b]) ++inv;
    out.emplace_back(cur, inv % 2 == 0 ? 1 : -1);
    return;
  }
  const int a = free_idx.front();
  for (size_t t = 1; t < free_idx.size(); ++t) {
    const int b = free_idx[t];
    std::vector<int> rest;
    for (size_t s = 1; s < free_idx.size(); ++s)
      if (s != t) rest.push_back(free_idx[s]);
    cur.emplace_back(a, b);
    enumerate_matchings(rest, cur, out);
    cur.pop_back();
  }
}

// Central element: sum over perfect matchings of signed products of the
// rho-hat images of the paired basis rotations. Scalar on each irreducible
// summand, with opposite values on the two halves of a mirror pair.
CMatrix matching_sum_applied(const MatrixRep& rep, const CMatrix& X) {
  std::vector<int> idx(static_cast<size_t>(rep.n));
  for (int i = 0; i < rep.n; ++i) idx[static_cast<size_t>(i)] = i;
  std::vector<std::pair<std::vector<std::pair<int, int>>, int>> matchings;
  std::vector<std::pair<int, int>> cur;
  enumerate_matchings(idx, cur, matchings);

  CMatrix total = CMatrix::Zero(X.rows(), X.cols());
  for (const auto& [pairs, sign] : matchings) {
    CMatrix term = X;
    for (const auto& [i, j] : pairs) term = apply_pair_on_tensor(rep, i, j, term);
    total += static_cast<double>(sign) * term;
  }
  return total;
}

// Coordinates (w.r.t. the columns of Y) of the joint weight vector with the
// given half-integer weight, via a generic combination of the Cartan rotations.
CVector weight_vector_coords(const MatrixRep& rep, const CMatrix& Y,
                             const std::vector<double>& target_weight) {
  const int m = rep.n / 2;
  static const double primes[] = {2, 3, 5, 7, 11, 13};
  const std::complex<double> I(0, 1);

  CMatrix combo = CMatrix::Zero(Y.rows(), Y.cols());
  double target = 0;
  for (int k = 0; k < m; ++k) {
    const double t = std::sqrt(primes[k]);
    combo += t * apply_pair_on_tensor(rep, 2 * k, 2 * k + 1, Y);
    target += t * target_weight[static_cast<size_t>(k)];
  }
  // Cartan rotations have eigenvalue -i * weight; i * combo is hermitian on the span
  const CMatrix compressed = Y.adjoint() * (I * combo);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(compressed);
  int best = 0;
  double best_gap = std::abs(es.eigenvalues()(0) - target);
  for (int t = 1; t < es.eigenvalues().size(); ++t) {
    const double gap = std::abs(es.eigenvalues()(t) - target);
    if (gap < best_gap) {
      best_gap = gap;
      best = t;
    }
  }
  if (best_gap > 1e-6)
    throw ConsistencyError("expected highest weight not found in the degenerate pair subspace");
  return es.eigenvectors().col(best);
}

}  // namespace

ProjectionSet build_projections(const BOperator& B, const Decomposition& decomp) {
  const int n = B.n, N = B.dim_V;
  const Eigen::Index nN = static_cast<Eigen::Index>(n) * N;
  if (decomp.rho.n() != n)
    throw std::invalid_argument("decomposition dimension does not match the representation");

  // group summands with equal conformal weight (exact comparison)
  std::vector<Rational> values;
  std::vector<std::vector<int>> groups;
  for (int s = 0; s < decomp.size(); ++s) {
    const Rational& w = decomp.summands[static_cast<size_t>(s)].conformal_weight;
    bool found = false;
    for (size_t g = 0; g < values.size(); ++g)
      if (values[g] == w) {
        groups[g].push_back(s);
        found = true;
        break;
      }
    if (!found) {
      values.push_back(w);
      groups.push_back({s});
    }
  }

  {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(B.matrix, Eigen::EigenvaluesOnly);
    for (Eigen::Index t = 0; t < es.eigenvalues().size(); ++t) {
      double gap = std::numeric_limits<double>::infinity();
      for (const auto& w : values) gap = std::min(gap, std::abs(es.eigenvalues()(t) - w.to_double()));
      if (gap > 1e-6)
        throw ConsistencyError("B eigenvalue does not match any predicted conformal weight; "
                               "representation and decomposition are mismatched");
    }
  }

  std::vector<CMatrix> group_proj(values.size());
  for (size_t g = 0; g < values.size(); ++g) {
    CMatrix P = CMatrix::Identity(nN, nN);
    for (size_t h = 0; h < values.size(); ++h) {
      if (h == g) continue;
      const double wg = values[g].to_double(), wh = values[h].to_double();
      P = P * ((B.matrix - wh * CMatrix::Identity(nN, nN)) / (wg - wh));
    }
    group_proj[g] = std::move(P);
  }

  ProjectionSet out;
  out.n = n;
  out.dim_V = N;
  out.projections.assign(static_cast<size_t>(decomp.size()), CMatrix());

  // generators are needed only when a mirror pair must be split; B itself
  // stores them blockwise, so the split works for any realization
  const MatrixRep* rep_for_split = nullptr;
  MatrixRep rep_storage;

  for (size_t g = 0; g < values.size(); ++g) {
    if (groups[g].size() == 1) {
      out.projections[static_cast<size_t>(groups[g][0])] = std::move(group_proj[g]);
      continue;
    }
    if (groups[g].size() != 2)
      throw ConsistencyError("more than two summands share a conformal weight");
    const int s0 = groups[g][0], s1 = groups[g][1];
    const auto& w0 = decomp.summands[static_cast<size_t>(s0)].weight;
    const auto& w1 = decomp.summands[static_cast<size_t>(s1)].weight;
    bool mirror = n % 2 == 0;
    for (int i = 1; i < w0.m(); ++i) mirror = mirror && w0.coord(i) == w1.coord(i);
    mirror = mirror && w0.coord(w0.m()).doubled == -w1.coord(w1.m()).doubled;
    if (!mirror)
      throw ConsistencyError("two summands share a conformal weight but are not a mirror pair");

    if (!rep_for_split) {
      rep_storage.n = n;
      rep_storage.dim_V = N;
      rep_storage.complex_scalars = B.complex_scalars;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          rep_storage.generators.push_back(B.matrix.block(
              static_cast<Eigen::Index>(i) * N, static_cast<Eigen::Index>(j) * N, N, N));
      rep_for_split = &rep_storage;
    }

    const CMatrix& Pi = group_proj[g];
    const Eigen::Index r = static_cast<Eigen::Index>(std::llround(std::real(Pi.trace())));
    Eigen::SelfAdjointEigenSolver<CMatrix> pes(Pi);
    for (Eigen::Index t = 0; t < nN; ++t) {
      const double expect = t >= nN - r ? 1.0 : 0.0;
      if (std::abs(pes.eigenvalues()(t) - expect) > 1e-8)
        throw ConsistencyError("pair projection has an eigenvalue away from 0 and 1");
    }
    const CMatrix Y = pes.eigenvectors().rightCols(r);

    // compress the matching-sum central element to the pair subspace; its
    // square is a nonzero real scalar there, positive when the number of
    // matching factors is even and negative when odd (conjugate pair)
    const CMatrix Mt = Y.adjoint() * matching_sum_applied(*rep_for_split, Y);
    const CMatrix Mt2 = Mt * Mt;
    const std::complex<double> s_c = Mt2.trace() / static_cast<double>(r);
    const double s_val = s_c.real();
    if (std::abs(s_c.imag()) > 1e-8 * std::max(1.0, std::abs(s_val)) || s_val == 0 ||
        inf_norm(CMatrix(Mt2 - s_val * CMatrix::Identity(r, r))) >
            1e-6 * std::max(1.0, std::abs(s_val)))
      throw ConsistencyError("central element is not scalar on the mirror pair subspace");
    const std::complex<double> theta =
        s_val > 0 ? std::complex<double>(std::sqrt(s_val), 0)
                  : std::complex<double>(0, std::sqrt(-s_val));
    const CMatrix D = Mt / theta;  // hermitian involution on the pair subspace

    // orient the split: the first-listed summand must contain the weight
    // vector of its own highest weight
    std::vector<double> target;
    for (int i = 1; i <= w0.m(); ++i) target.push_back(w0.coord(i).to_double());
    const CVector u = weight_vector_coords(*rep_for_split, Y, target);
    const double d_plus = 0.5 * (D * u - u).norm();
    const double d_minus = 0.5 * (D * u + u).norm();
    if (d_plus > 1e-6 && d_minus > 1e-6)
      throw ConsistencyError("highest weight vector lies in neither half of the mirror split");
    const double orient = d_plus <= d_minus ? 1.0 : -1.0;
    const CMatrix half_plus = 0.5 * (CMatrix::Identity(r, r) + orient * D);
    out.projections[static_cast<size_t>(s0)] = Y * half_plus * Y.adjoint();
    out.projections[static_cast<size_t>(s1)] =
        Y * (CMatrix::Identity(r, r) - half_plus) * Y.adjoint();
  }

  // invariant verification
  CMatrix sum = CMatrix::Zero(nN, nN);
  for (int s = 0; s < decomp.size(); ++s) {
    const CMatrix& P = out.projections[static_cast<size_t>(s)];
    sum += P;
    if (inf_norm(CMatrix(P - P.adjoint())) > 1e-9 || inf_norm(CMatrix(P * P - P)) > 1e-9)
      throw ConsistencyError("projection fails self-adjoint idempotency");
    const double dim = Rational(decomp.summands[static_cast<size_t>(s)].dim).to_double();
    if (std::abs(std::real(P.trace()) - dim) > 1e-6)
      throw ConsistencyError("projection rank differs from the summand dimension");
    const double w = decomp.summands[static_cast<size_t>(s)].conformal_weight.to_double();
    if (inf_norm(CMatrix(B.matrix * P - w * P)) > 1e-9)
      throw ConsistencyError("projection is not a B eigenprojection");
  }
  if (inf_norm(CMatrix(sum - CMatrix::Identity(nN, nN))) > 1e-9)
    throw ConsistencyError("projections do not resolve the identity");
  return out;
}

CMatrix symbol_matrix(const ProjectionSet& proj, int j, const Eigen::VectorXd& xi) {
  const int n = proj.n, N = proj.dim_V;
  if (xi.size() != n) throw std::invalid_argument("direction vector has wrong dimension");
  if (std::abs(xi.norm() - 1.0) > 1e-12) throw std::invalid_argument("direction vector must be unit");
  if (j < 0 || j >= static_cast<int>(proj.projections.size()))
    throw std::invalid_argument("summand index out of range");
  const CMatrix& P = proj.projections[static_cast<size_t>(j)];
  CMatrix q = CMatrix::Zero(N, N);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      q += xi(i) * xi(k) *
           P.block(static_cast<Eigen::Index>(i) * N, static_cast<Eigen::Index>(k) * N, N, N);
  return q;
}

CMatrix rep_from_coefficients(const MatrixRep& rep, const RMatrix& W) {
  CMatrix out = CMatrix::Zero(rep.dim_V, rep.dim_V);
  for (int j = 0; j < rep.n; ++j)
    for (int k = j + 1; k < rep.n; ++k)
      if (W(j, k) != 0.0) out += W(j, k) * rep.gen(j, k);
  return out;
}

std::vector<std::pair<Rational, BigInt>> predicted_b_spectrum(int n, const FamilySpec& family) {
  std::map<Rational, BigInt, std::greater<Rational>> acc;
  auto add = [&](const DominantWeight& rho) {
    for (const auto& s : decompose(rho).summands) acc[s.conformal_weight] += s.dim;
  };
  if (family.kind == FamilySpec::Kind::Exterior && n % 2 == 0 && 2 * family.param == n) {
    const int m = n / 2;
    for (int sign : {+1, -1}) {
      std::vector<HalfInt> c(static_cast<size_t>(m), HalfInt::whole(1));
      c[static_cast<size_t>(m - 1)] = HalfInt::whole(sign);
      add(DominantWeight(n, c));
    }
  } else {
    add(family.weight(n));
  }
  return {acc.begin(), acc.end()};
}

RepVerification verify_rep(int n, const FamilySpec& family, int num_xi, unsigned long seed) {
  RepVerification R;
  R.n = n;
  R.family = family;
  R.reducible = family.kind == FamilySpec::Kind::Exterior && n % 2 == 0 && 2 * family.param == n;

  const MatrixRep rep = R.reducible ? build_exterior_rep(n, family.param) : build_rep(n, family);
  R.dim_V = rep.dim_V;
  auto record = [&](const std::string& name, double err, double tol) {
    R.checks.push_back(CheckResult{name, err <= tol, err, tol});
  };

  {
    double err = 0;
    for (const auto& g : rep.generators) err = std::max(err, inf_norm(CMatrix(g + g.adjoint())));
    record("skew_adjoint", err, 1e-12);
  }
  {
    double err = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            const CMatrix lhs = rep.gen(a, b) * rep.gen(c, d) - rep.gen(c, d) * rep.gen(a, b);
            CMatrix rhs = CMatrix::Zero(rep.dim_V, rep.dim_V);
            if (a == c) rhs += rep.act(b, d);
            if (b == d) rhs += rep.act(a, c);
            if (a == d) rhs -= rep.act(b, c);
            if (b == c) rhs -= rep.act(a, d);
            err = std::max(err, inf_norm(CMatrix(lhs - rhs)));
          }
    record("commutation_relations", err, 1e-12);
  }

  const auto spectrum = predicted_b_spectrum(n, family);
  {
    // Casimir is the same scalar on both mirror halves, so this check also
    // covers the reducible middle power.
    Rational cval(0);
    if (R.reducible) {
      std::vector<HalfInt> coords(static_cast<size_t>(n / 2), HalfInt::whole(1));
      cval = casimir(DominantWeight(n, coords));
    } else {
      cval = casimir(family.weight(n));
    }
    CMatrix cas = CMatrix::Zero(rep.dim_V, rep.dim_V);
    for (const auto& g : rep.generators) cas -= g * g;
    record("casimir_scalar",
           inf_norm(CMatrix(cas - cval.to_double() * CMatrix::Identity(rep.dim_V, rep.dim_V))),
           1e-9);
  }

  const BOperator B = build_B(rep);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(B.matrix, Eigen::EigenvaluesOnly);
  const VectorXd ev = es.eigenvalues();
  {
    std::vector<double> expected;
    for (const auto& [w, mult] : spectrum)
      for (BigInt t = 0; t < mult; ++t) expected.push_back(w.to_double());
    std::sort(expected.begin(), expected.end());
    double err = expected.size() == static_cast<size_t>(ev.size())
                     ? 0.0
                     : std::numeric_limits<double>::infinity();
    if (err == 0.0)
      for (Eigen::Index t = 0; t < ev.size(); ++t)
        err = std::max(err, std::abs(ev(t) - expected[static_cast<size_t>(t)]));
    record("b_spectrum", err, 1e-9);

    for (const auto& [w, mult] : spectrum)
      R.spectrum.emplace_back(w.to_double(), static_cast<long>(mult.get_si()));
  }
  {
    Rational expect(0);
    if (R.reducible) {
      for (int sign : {+1, -1}) {
        std::vector<HalfInt> c(static_cast<size_t>(n / 2), HalfInt::whole(1));
        c[static_cast<size_t>(n / 2 - 1)] = HalfInt::whole(sign);
        const DominantWeight rho(n, c);
        expect += Rational(2) * Rational(weyl_dimension(rho)) * casimir(rho);
      }
    } else {
      const DominantWeight rho = family.weight(n);
      expect = Rational(2) * Rational(weyl_dimension(rho)) * casimir(rho);
    }
    const double tr2 = ev.array().square().sum();
    record("tr_b_squared", std::abs(tr2 - expect.to_double()) / std::max(1.0, expect.to_double()),
           1e-9);
  }

  if (!R.reducible) {
    const Decomposition decomp = decompose(family.weight(n));
    const ProjectionSet proj = build_projections(B, decomp);
    const Eigen::Index nN = static_cast<Eigen::Index>(n) * rep.dim_V;
    {
      CMatrix sum = CMatrix::Zero(nN, nN);
      double err = 0;
      for (int s = 0; s < decomp.size(); ++s) {
        const CMatrix& P = proj.projections[static_cast<size_t>(s)];
        sum += P;
        err = std::max(err, inf_norm(CMatrix(P * P - P)));
        err = std::max(err, inf_norm(CMatrix(P - P.adjoint())));
        for (int t = s + 1; t < decomp.size(); ++t)
          err = std::max(err, inf_norm(CMatrix(P * proj.projections[static_cast<size_t>(t)])));
        const double w = decomp.summands[static_cast<size_t>(s)].conformal_weight.to_double();
        err = std::max(err, inf_norm(CMatrix(B.matrix * P - w * P)));
      }
      err = std::max(err, inf_norm(CMatrix(sum - CMatrix::Identity(nN, nN))));
      record("projection_identities", err, 1e-9);

      double rank_err = 0;
      for (int s = 0; s < decomp.size(); ++s)
        rank_err = std::max(
            rank_err,
            std::abs(std::real(proj.projections[static_cast<size_t>(s)].trace()) -
                     Rational(decomp.summands[static_cast<size_t>(s)].dim).to_double()));
      record("projection_ranks", rank_err, 1e-6);
    }
    {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      double err_sum = 0, err_wsum = 0, err_psd = 0, err_invariance = 0, err_spin_ratio = 0;
      std::vector<VectorXd> first_spectra;
      for (int trial = 0; trial < num_xi; ++trial) {
        VectorXd xi(n);
        do {
          for (int i = 0; i < n; ++i) xi(i) = gauss(rng);
        } while (xi.norm() < 1e-3);
        xi.normalize();
        CMatrix qsum = CMatrix::Zero(rep.dim_V, rep.dim_V);
        CMatrix wsum = CMatrix::Zero(rep.dim_V, rep.dim_V);
        for (int s = 0; s < decomp.size(); ++s) {
          const CMatrix q = symbol_matrix(proj, s, xi);
          qsum += q;
          wsum += decomp.summands[static_cast<size_t>(s)].conformal_weight.to_double() * q;
          Eigen::SelfAdjointEigenSolver<CMatrix> qes(q, Eigen::EigenvaluesOnly);
          err_psd = std::max(err_psd, std::max(0.0, -qes.eigenvalues().minCoeff()));
          if (trial == 0) {
            first_spectra.push_back(qes.eigenvalues());
          } else {
            err_invariance =
                std::max(err_invariance,
                         (qes.eigenvalues() - first_spectra[static_cast<size_t>(s)])
                             .cwiseAbs()
                             .maxCoeff());
          }
          if (family.kind == FamilySpec::Kind::Spin && s == 1) {
            const CMatrix q0 = symbol_matrix(proj, 0, xi);
            err_spin_ratio = std::max(err_spin_ratio, inf_norm(CMatrix(q0 - (n - 1.0) * q)));
          }
        }
        err_sum = std::max(err_sum,
                           inf_norm(CMatrix(qsum - CMatrix::Identity(rep.dim_V, rep.dim_V))));
        err_wsum = std::max(err_wsum, inf_norm(wsum));
      }
      record("symbols_resolve_identity", err_sum, 1e-9);
      record("symbol_b_compression_vanishes", err_wsum, 1e-9);
      record("symbols_positive_semidefinite", err_psd, 1e-9);
      record("symbol_spectrum_direction_invariance", err_invariance, 1e-9);
      if (family.kind == FamilySpec::Kind::Spin)
        record("twistor_spinor_symbol_ratio", err_spin_ratio, 1e-9);
    }
  }

  R.all_passed = true;
  for (const auto& c : R.checks) R.all_passed = R.all_passed && c.passed;
  return R;
}

}  // namespace masscalc
