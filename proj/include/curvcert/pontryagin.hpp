#pragma once

// Pontryagin forms of an algebraic curvature tensor, computed along two
// independent routes that must agree exactly:
//
//  * determinant route: the elementary symmetric polynomial sigma_{2k} of
//    the n x n matrix of curvature 2-forms, expanded minor by minor in the
//    commutative ring of even-degree forms;
//  * operator route: the alternating pairing of the k-fold star power of
//    the curvature operator with itself.
//
// Both routes return the coefficients of (2 pi)^{2k} p_k; the transcendental
// factor is carried as an integer exponent, never evaluated numerically.

#include <cstdint>
#include <vector>

#include "curvcert/curvature.hpp"

namespace curvcert {

// Generalized causal pairing <e_I, e_J> for multi-indices of equal length:
// zero when I has a repeated entry or J is not a rearrangement of I,
// otherwise eps_I times the sign of the permutation taking I to J.
template <class T = int>
int sgn_multi(const ScalarSpace& space, const std::vector<int>& I, const std::vector<int>& J) {
  const std::size_t k = I.size();
  if (J.size() != k) throw DimensionError("sgn_multi: multi-indices of different lengths");
  std::uint32_t seen = 0;
  for (int i : I) {
    if (i < 0 || i >= space.dim()) throw PreconditionFailed("sgn_multi: index out of range");
    std::uint32_t bit = std::uint32_t{1} << i;
    if (seen & bit) return 0;
    seen |= bit;
  }
  // Positions of each value of J inside I; fails when the multisets differ.
  std::vector<int> perm(k);
  for (std::size_t a = 0; a < k; ++a) {
    if (J[a] < 0 || J[a] >= space.dim())
      throw PreconditionFailed("sgn_multi: index out of range");
    int pos = -1;
    for (std::size_t b = 0; b < k; ++b)
      if (I[b] == J[a]) {
        pos = static_cast<int>(b);
        break;
      }
    if (pos < 0) return 0;
    perm[a] = pos;
  }
  int inversions = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (perm[a] > perm[b]) ++inversions;
  int s = (inversions & 1) ? -1 : +1;
  std::vector<int> mem = I;
  return s * causal_sign(space, mem);
}

// Elementary symmetric polynomial sigma_k of a square scalar matrix: the sum
// of its principal k x k minors. sigma_1 is the trace, sigma_n the
// determinant.
template <class T>
T sigma_poly(const Mat<T>& a, int k) {
  if (a.rows() != a.cols()) throw DimensionError("sigma_poly: matrix must be square");
  const int n = a.rows();
  if (k < 0 || k > n) throw PreconditionFailed("sigma_poly: need 0 <= k <= n");
  if (k == 0) return T(1);
  if (n > kMaxDimension) throw DimensionError("sigma_poly: matrix too large");
  T acc{};
  SubsetTable tab(n);
  for (std::uint32_t s : tab.masks(k)) {
    auto rows = members_of(s);
    Mat<T> sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = a(rows[i], rows[j]);
    acc += det(sub);
  }
  return acc;
}

// The n x n grid of curvature 2-forms, in one of two normalizations:
//  * kConnection: Omega_i^j(x, y) = eps_j C(x, y, e_i, e_j), the matrix of
//    2-forms whose sigma polynomials give characteristic forms;
//  * kOperatorPair: Omega^{ij} = (1/2) eps_i eps_j C(., ., e_i, e_j), the
//    coefficient forms of the curvature operator on the basis 2-vectors.
template <class T>
struct FormMatrix {
  enum Kind { kConnection, kOperatorPair };

  ScalarSpace space;
  Kind kind;
  std::vector<KForm<T>> entries;  // row-major n x n; entry(i, j)

  const KForm<T>& operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * space.dim() + j];
  }
};

template <class T>
FormMatrix<T> curvature_matrix(const CurvatureTensor<T>& c,
                               typename FormMatrix<T>::Kind kind) {
  const ScalarSpace& space = c.space();
  const int n = space.dim();
  const SubsetTable& tab = space.table();
  const auto& pairs = tab.masks(2);
  FormMatrix<T> out{space, kind, {}};
  out.entries.reserve(static_cast<std::size_t>(n) * n);
  const T half = T(1) / T(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      KForm<T> f(space, 2);
      if (i != j) {
        T factor = kind == FormMatrix<T>::kConnection
                       ? T(space.sign(j))
                       : half * T(space.sign(i) * space.sign(j));
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          auto xy = members_of(pairs[p]);
          f.coeffs[p] = factor * c.component(xy[0], xy[1], i, j);
        }
      }
      out.entries.push_back(std::move(f));
    }
  return out;
}

namespace detail {

// Determinant of the principal block of a form matrix on the rows/columns in
// `sub`, in the commutative ring of even-degree forms: dynamic programming
// over column subsets, expanding one row at a time.
template <class T>
KForm<T> form_block_det(const FormMatrix<T>& omega, const std::vector<int>& sub) {
  const ScalarSpace& space = omega.space;
  const int m = static_cast<int>(sub.size());
  std::vector<KForm<T>> f;
  f.reserve(std::size_t{1} << m);
  f.emplace_back(space, 0);
  f[0].coeffs[0] = T(1);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    const int r = std::popcount(mask);
    KForm<T> acc(space, 2 * r);
    int idx = 0;  // position of the chosen column within the sorted mask
    for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++idx) {
      const int c = std::countr_zero(rest);
      const KForm<T>& entry = omega(sub[r - 1], sub[c]);
      if (entry.is_zero()) continue;
      KForm<T> term = wedge(f[mask ^ (std::uint32_t{1} << c)], entry);
      if (((r - 1 + idx) & 1) == 0)
        acc = acc + term;
      else
        acc = acc - term;
    }
    f.push_back(std::move(acc));
  }
  return f.back();
}

}  // namespace detail

// sigma_m of a matrix of 2-forms, defined for even m only: the odd symmetric
// polynomials never appear in the characteristic form expansion, and the
// guard makes any accidental use loud.
template <class T>
KForm<T> sigma_forms_even(const FormMatrix<T>& omega, int m) {
  const ScalarSpace& space = omega.space;
  const int n = space.dim();
  if (m % 2 != 0)
    throw PreconditionFailed("sigma_forms_even: odd symmetric polynomials are not used");
  if (m < 2 || m > n) throw PreconditionFailed("sigma_forms_even: need 2 <= m <= n");
  if (2 * m > n) throw DimensionError("sigma_forms_even: output degree exceeds dimension");
  KForm<T> acc(space, 2 * m);
  for (std::uint32_t s : space.table().masks(m))
    acc = acc + detail::form_block_det(omega, members_of(s));
  return acc;
}

// Alternating pairing of two operators on k-vectors, yielding a 2k-form: on
// a basis 2k-subset R,
//   (A, B)(e_R) = sum over ordered splits R = S u T into k-subsets of
//                 sgn(S, T) <A(e_S), B(e_T)>,
// the collapsed form of the signed sum over all arrangements of R, which
// counts each split k!^2 times.
template <class T>
KForm<T> split_pairing(const ExtOperator<T>& a, const ExtOperator<T>& b) {
  if (a.space != b.space) throw PreconditionFailed("pairing: different spaces");
  if (a.degree != b.degree) throw DimensionError("pairing: operand degrees differ");
  const ScalarSpace& space = a.space;
  const int k = a.degree;
  if (2 * k > space.dim()) throw DimensionError("pairing: output degree exceeds dimension");
  const SubsetTable& tab = space.table();
  const auto& kmasks = tab.masks(k);
  const int dk = static_cast<int>(kmasks.size());
  // Precompute G_k A and B columns for the inner products.
  KForm<T> out(space, 2 * k);
  const auto& rmasks = tab.masks(2 * k);
  for (std::size_t ri = 0; ri < rmasks.size(); ++ri) {
    const std::uint32_t rmask = rmasks[ri];
    T acc{};
    // Enumerate k-element subsets S of R; T is the complement inside R.
    for (std::size_t si = 0; si < kmasks.size(); ++si) {
      const std::uint32_t smask = kmasks[si];
      if ((smask & rmask) != smask) continue;
      const std::uint32_t tmask = rmask & ~smask;
      const int sgn = merge_sign(smask, tmask);
      const long long tr = tab.rank(tmask);
      // <A(e_S), B(e_T)> with the diagonal induced metric.
      T inner{};
      for (int u = 0; u < dk; ++u) {
        T term = a.mat(u, static_cast<int>(si)) * b.mat(u, static_cast<int>(tr));
        if (scalar_traits<T>::is_zero(term)) continue;
        if (space.subset_sign(kmasks[u]) < 0)
          inner -= term;
        else
          inner += term;
      }
      if (sgn > 0)
        acc += inner;
      else
        acc -= inner;
    }
    out.coeffs[ri] = acc;
  }
  return out;
}

// A Pontryagin form scaled by (2 pi)^{2k}; the exponent rides along as data.
// When 4k exceeds the dimension the form vanishes identically and is
// reported through the flag (no coefficients exist in that degree).
template <class T>
struct PontryaginForm {
  int k = 0;
  int two_pi_exponent = 0;
  bool degree_exceeds_dim = false;
  KForm<T> reduced;

  bool is_zero() const { return degree_exceeds_dim || reduced.is_zero(); }
};

namespace detail {
template <class T>
void check_pontryagin_pre(const CurvatureTensor<T>& c, int k) {
  if (k < 1) throw PreconditionFailed("pontryagin: k must be >= 1");
  if (2 * k > c.space().dim())
    throw PreconditionFailed("pontryagin: need 2k <= dimension");
}
}  // namespace detail

// Determinant route: sigma_{2k} of the connection-normalized form matrix.
template <class T>
PontryaginForm<T> pontryagin_form_det(const CurvatureTensor<T>& c, int k) {
  detail::check_pontryagin_pre(c, k);
  const ScalarSpace& space = c.space();
  if (4 * k > space.dim())
    return PontryaginForm<T>{k, 2 * k, true, KForm<T>(space, 0)};
  FormMatrix<T> omega = curvature_matrix(c, FormMatrix<T>::kConnection);
  return PontryaginForm<T>{k, 2 * k, false, sigma_forms_even(omega, 2 * k)};
}

// Operator route: pair the k-fold star power of the curvature operator with
// itself. The star power sums over ordered partitions of its input into
// increasing pairs, so each unordered partition is produced k! times on each
// side of the pairing; dividing by k!^2 removes the overcount and makes the
// result agree with the determinant route term by term.
template <class T>
PontryaginForm<T> pontryagin_form_op(const CurvatureTensor<T>& c, int k) {
  detail::check_pontryagin_pre(c, k);
  const ScalarSpace& space = c.space();
  if (4 * k > space.dim())
    return PontryaginForm<T>{k, 2 * k, true, KForm<T>(space, 0)};
  ExtOperator<T> power = higher_curvature_operator(c, k);
  T fact(1);
  for (int i = 2; i <= k; ++i) fact *= T(i);
  return PontryaginForm<T>{k, 2 * k, false,
                           (T(1) / (fact * fact)) * split_pairing(power, power)};
}

// Wedge product of Pontryagin forms for a multi-degree alpha; carries
// (2 pi)^{2 |alpha|}. Factors are computed along the operator route.
template <class T>
struct PontryaginProduct {
  std::vector<int> alpha;
  int two_pi_exponent = 0;
  bool degree_exceeds_dim = false;
  KForm<T> form;

  bool is_zero() const { return degree_exceeds_dim || form.is_zero(); }
};

template <class T>
PontryaginProduct<T> pontryagin_product(const CurvatureTensor<T>& c,
                                        const std::vector<int>& alpha) {
  if (alpha.empty()) throw PreconditionFailed("pontryagin_product: empty multi-degree");
  int total = 0;
  for (int a : alpha) {
    detail::check_pontryagin_pre(c, a);
    total += a;
  }
  const ScalarSpace& space = c.space();
  if (4 * total > space.dim())
    return PontryaginProduct<T>{alpha, 2 * total, true, KForm<T>(space, 0)};
  KForm<T> acc(space, 0);
  acc.coeffs[0] = T(1);
  for (int a : alpha) acc = wedge(acc, pontryagin_form_op(c, a).reduced);
  return PontryaginProduct<T>{alpha, 2 * total, false, std::move(acc)};
}

}  // namespace curvcert
