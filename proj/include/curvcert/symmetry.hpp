#pragma once

// Isometry actions on curvature tensors: pullbacks, parity (even/odd)
// splittings with respect to orientation-reversing involutions, and the
// exact vanishing certificates for top-degree Pontryagin products of
// definite-parity tensors.

#include <optional>
#include <vector>

#include "curvcert/pontryagin.hpp"

namespace curvcert {

// Reflection through the hyperplane orthogonal to a non-null vector u:
//   theta(x) = x - 2 g(x,u)/g(u,u) u.
template <class T>
Isometry<T> reflection(const ScalarSpace& space, const std::vector<T>& u) {
  const int n = space.dim();
  if (static_cast<int>(u.size()) != n) throw DimensionError("reflection: axis of wrong length");
  T uu{};
  for (int i = 0; i < n; ++i) {
    T t = u[i] * u[i];
    if (space.sign(i) < 0)
      uu -= t;
    else
      uu += t;
  }
  bool null;
  if constexpr (scalar_traits<T>::exact)
    null = scalar_traits<T>::is_zero(uu);
  else
    null = scalar_traits<T>::abs(uu) <= scalar_traits<T>::default_tolerance();
  if (null) throw NullVectorError("reflection: axis has vanishing scalar square");
  Mat<T> m = Mat<T>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // g(e_j, u) = eps_j u_j.
      T guj = space.sign(j) < 0 ? T(-u[j]) : u[j];
      m(i, j) -= T(2) * u[i] * guj / uu;
    }
  return make_isometry(space, std::move(m));
}

// Pullback (theta^* C)(w,x,y,z) = C(theta w, theta x, theta y, theta z).
// On pair matrices this is congruence by the induced map on 2-vectors.
template <class T>
CurvatureTensor<T> pullback(const Isometry<T>& theta, const CurvatureTensor<T>& c) {
  if (theta.space != c.space())
    throw PreconditionFailed("pullback: isometry and tensor live on different spaces");
  ExtOperator<T> lam = ext_power_map(theta, 2);
  Mat<T> m = lam.mat.transposed() * c.pair_matrix() * lam.mat;
  return CurvatureTensor<T>::from_pair_matrix(c.space(), std::move(m));
}

namespace detail {
template <class T>
bool approx_equal(const Mat<T>& a, const Mat<T>& b, const T& tolerance) {
  if constexpr (scalar_traits<T>::exact) {
    (void)tolerance;
    return a == b;
  } else {
    T scale(1);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) {
        T s = scalar_traits<T>::abs(a(i, j));
        if (s > scale) scale = s;
      }
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        if (scalar_traits<T>::abs(a(i, j) - b(i, j)) > tolerance * scale) return false;
    return true;
  }
}
}  // namespace detail

// Sign s with theta^* C = s C, when one exists.
template <class T>
std::optional<int> parity_of(const CurvatureTensor<T>& c, const Isometry<T>& theta,
                             const T& tolerance = scalar_traits<T>::default_tolerance()) {
  CurvatureTensor<T> pb = pullback(theta, c);
  if (detail::approx_equal(pb.pair_matrix(), c.pair_matrix(), tolerance)) return +1;
  if (detail::approx_equal(pb.pair_matrix(), (-c).pair_matrix(), tolerance)) return -1;
  return std::nullopt;
}

// Independent route to the same sign: the curvature operator commutes
// (anticommutes) with the induced map on 2-vectors exactly when the pullback
// fixes (negates) the tensor.
template <class T>
std::optional<int> commutation_sign(const CurvatureTensor<T>& c, const Isometry<T>& theta,
                                    const T& tolerance = scalar_traits<T>::default_tolerance()) {
  ExtOperator<T> lam = ext_power_map(theta, 2);
  Mat<T> lhs = curvature_operator(c).mat * lam.mat;
  Mat<T> rhs = lam.mat * curvature_operator(c).mat;
  if (detail::approx_equal(lhs, rhs, tolerance)) return +1;
  if (detail::approx_equal(lhs, (T(-1) * rhs), tolerance)) return -1;
  return std::nullopt;
}

// Parity splitting along an isometric involution:
//   even = (C + theta^* C)/2,  odd = (C - theta^* C)/2.
template <class T>
struct ParitySplit {
  Isometry<T> theta;
  CurvatureTensor<T> even;
  CurvatureTensor<T> odd;
};

template <class T>
ParitySplit<T> parity_split(const CurvatureTensor<T>& c, const Isometry<T>& theta,
                            const T& tolerance = scalar_traits<T>::default_tolerance()) {
  if (!detail::approx_equal(theta.mat * theta.mat, Mat<T>::identity(theta.space.dim()),
                            tolerance))
    throw PreconditionFailed("parity_split: isometry is not an involution");
  CurvatureTensor<T> pb = pullback(theta, c);
  const T half = T(1) / T(2);
  return ParitySplit<T>{theta, half * (c + pb), half * (c - pb)};
}

// Splitting with respect to the reflection through u^perp.
template <class T>
ParitySplit<T> em_split(const CurvatureTensor<T>& c, const std::vector<T>& u) {
  return parity_split(c, reflection(c.space(), u));
}

// Component criterion data for parity with respect to a reflection axis: a
// basis of u^perp obtained by projecting away the pivot coordinate.
namespace detail {
template <class T>
std::vector<std::vector<T>> perp_basis(const ScalarSpace& space, const std::vector<T>& u,
                                       int* pivot_out) {
  const int n = space.dim();
  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (!scalar_traits<T>::is_zero(u[i])) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw NullVectorError("parity criterion: axis is zero");
  T uu{};
  for (int i = 0; i < n; ++i) {
    T t = u[i] * u[i];
    if (space.sign(i) < 0)
      uu -= t;
    else
      uu += t;
  }
  if constexpr (scalar_traits<T>::exact) {
    if (scalar_traits<T>::is_zero(uu))
      throw NullVectorError("parity criterion: axis has vanishing scalar square");
  }
  std::vector<std::vector<T>> w;
  for (int i = 0; i < n; ++i) {
    if (i == pivot) continue;
    // w_i = e_i - (g(e_i,u)/g(u,u)) u.
    std::vector<T> v(n, T{});
    v[i] = T(1);
    T giu = space.sign(i) < 0 ? T(-u[i]) : u[i];
    T f = giu / uu;
    for (int j = 0; j < n; ++j) v[j] -= f * u[j];
    w.push_back(std::move(v));
  }
  *pivot_out = pivot;
  return w;
}

// Relative scale for float-mode zero tests against a tensor's entries.
template <class T>
T parity_scale(const CurvatureTensor<T>& c) {
  T scale(1);
  for (int i = 0; i < c.pair_matrix().rows(); ++i)
    for (int j = 0; j < c.pair_matrix().cols(); ++j) {
      T s = scalar_traits<T>::abs(c.pair_matrix()(i, j));
      if (s > scale) scale = s;
    }
  return scale;
}

// Multilinear evaluation of C on four arbitrary vectors.
template <class T>
T evaluate(const CurvatureTensor<T>& c, const std::vector<T>& a, const std::vector<T>& b,
           const std::vector<T>& x, const std::vector<T>& y) {
  // C(a,b,x,y) = <C_hat(a ^ b), x ^ y> = (a ^ b)^T M (x ^ y) on coefficients.
  const ScalarSpace& space = c.space();
  KVector<T> va(space, 1), vb(space, 1), vx(space, 1), vy(space, 1);
  va.coeffs = a;
  vb.coeffs = b;
  vx.coeffs = x;
  vy.coeffs = y;
  KVector<T> ab = wedge(va, vb), xy = wedge(vx, vy);
  T acc{};
  const int d = static_cast<int>(ab.coeffs.size());
  for (int i = 0; i < d; ++i) {
    if (scalar_traits<T>::is_zero(ab.coeffs[i])) continue;
    for (int j = 0; j < d; ++j) acc += ab.coeffs[i] * c.pair_matrix()(i, j) * xy.coeffs[j];
  }
  return acc;
}
}  // namespace detail

// Both routes to a parity decision: comparing the pullback against +-C, and
// the component criterion in a basis adapted to the reflection axis. The two
// must agree; disagreement would be an internal defect and throws.
struct ParityEvidence {
  bool pullback_route = false;
  bool component_route = false;
  bool holds() const { return pullback_route; }
};

// Even parity (theta^* C = +C for the reflection through u^perp).
// Component criterion: every component with an odd number of u-slots
// vanishes; by the pair symmetries these reduce to C(u, w_i, w_j, w_k).
template <class T>
ParityEvidence parity_even_evidence(const CurvatureTensor<T>& c, const std::vector<T>& u,
                                    const T& tolerance = scalar_traits<T>::default_tolerance()) {
  const ScalarSpace& space = c.space();
  ParityEvidence ev;
  ev.pullback_route = parity_of(c, reflection(space, u), tolerance) == std::optional<int>(+1);
  int pivot = -1;
  auto w = detail::perp_basis(space, u, &pivot);
  const int m = static_cast<int>(w.size());
  bool ok = true;
  T scale = detail::parity_scale(c);
  for (int i = 0; i < m && ok; ++i)
    for (int j = 0; j < m && ok; ++j)
      for (int k = 0; k < m && ok; ++k) {
        T v = detail::evaluate(c, u, w[i], w[j], w[k]);
        if (scalar_traits<T>::abs(v) > tolerance * scale) ok = false;
      }
  ev.component_route = ok;
  if (ev.pullback_route != ev.component_route)
    throw Error("parity_even_evidence: the two parity criteria disagree");
  return ev;
}

// Odd parity (theta^* C = -C). Component criterion: components with an even
// number of u-slots vanish; these reduce to C(w,w,w,w) and C(u,w,u,w).
template <class T>
ParityEvidence parity_odd_evidence(const CurvatureTensor<T>& c, const std::vector<T>& u,
                                   const T& tolerance = scalar_traits<T>::default_tolerance()) {
  const ScalarSpace& space = c.space();
  ParityEvidence ev;
  ev.pullback_route = parity_of(c, reflection(space, u), tolerance) == std::optional<int>(-1);
  int pivot = -1;
  auto w = detail::perp_basis(space, u, &pivot);
  const int m = static_cast<int>(w.size());
  bool ok = true;
  T scale = detail::parity_scale(c);
  for (int i = 0; i < m && ok; ++i)
    for (int j = 0; j < m && ok; ++j) {
      T v = detail::evaluate(c, u, w[i], u, w[j]);
      if (scalar_traits<T>::abs(v) > tolerance * scale) ok = false;
    }
  for (int i = 0; i < m && ok; ++i)
    for (int j = 0; j < m && ok; ++j)
      for (int k = 0; k < m && ok; ++k)
        for (int l = 0; l < m && ok; ++l) {
          T v = detail::evaluate(c, w[i], w[j], w[k], w[l]);
          if (scalar_traits<T>::abs(v) > tolerance * scale) ok = false;
        }
  ev.component_route = ok;
  if (ev.pullback_route != ev.component_route)
    throw Error("parity_odd_evidence: the two parity criteria disagree");
  return ev;
}

template <class T>
bool is_parity_even(const CurvatureTensor<T>& c, const std::vector<T>& u,
                    const T& tolerance = scalar_traits<T>::default_tolerance()) {
  return parity_even_evidence(c, u, tolerance).holds();
}

template <class T>
bool is_parity_odd(const CurvatureTensor<T>& c, const std::vector<T>& u,
                   const T& tolerance = scalar_traits<T>::default_tolerance()) {
  return parity_odd_evidence(c, u, tolerance).holds();
}

// Whether a form is fixed by the pullback along theta.
template <class T>
bool form_fixed_check(const KForm<T>& form, const Isometry<T>& theta,
                      const T& tolerance = scalar_traits<T>::default_tolerance()) {
  KForm<T> pb = pullback_form(theta, form);
  if constexpr (scalar_traits<T>::exact) {
    (void)tolerance;
    return pb == form;
  } else {
    T scale(1);
    for (const T& x : form.coeffs) {
      T s = scalar_traits<T>::abs(x);
      if (s > scale) scale = s;
    }
    for (std::size_t i = 0; i < form.coeffs.size(); ++i)
      if (scalar_traits<T>::abs(pb.coeffs[i] - form.coeffs[i]) > tolerance * scale)
        return false;
    return true;
  }
}

// Machine-checked record that the top-degree Pontryagin product of a
// definite-parity tensor vanishes. Preconditions: the dimension equals four
// times the total degree |alpha|, theta reverses orientation (det = -1),
// theta is an involution, and C has definite parity under it. The witness is
// the single top-degree coefficient of the (2 pi)-scaled product; the
// underlying theorem forces it to vanish, so in exact mode all_zero = false
// can only mean an implementation defect upstream.
template <class T>
struct VanishingCertificate {
  int dimension = 0;
  std::vector<int> alpha;
  int parity = 0;  // +1: even, -1: odd
  bool all_zero = false;
  T witness{};
  int two_pi_exponent = 0;
};

template <class T>
VanishingCertificate<T> vanishing_certificate(
    const CurvatureTensor<T>& c, const Isometry<T>& theta, const std::vector<int>& alpha,
    const T& tolerance = scalar_traits<T>::default_tolerance()) {
  const ScalarSpace& space = c.space();
  const int n = space.dim();
  int total = 0;
  for (int a : alpha) {
    if (a < 1) throw PreconditionFailed("vanishing_certificate: degrees must be >= 1");
    total += a;
  }
  if (n != 4 * total)
    throw PreconditionFailed("vanishing_certificate: dimension must equal 4 |alpha|");
  if (theta.space != space)
    throw PreconditionFailed("vanishing_certificate: isometry on the wrong space");
  if (theta.det_sign != -1)
    throw PreconditionFailed("vanishing_certificate: isometry must reverse orientation");
  if (!detail::approx_equal(theta.mat * theta.mat, Mat<T>::identity(n), tolerance))
    throw PreconditionFailed("vanishing_certificate: isometry is not an involution");
  std::optional<int> par = parity_of(c, theta, tolerance);
  if (!par)
    throw PreconditionFailed("vanishing_certificate: tensor has no definite parity");
  PontryaginProduct<T> prod = pontryagin_product(c, alpha);
  // n = 4 |alpha|, so the product lives in the top degree: one coefficient.
  T witness = prod.form.coeffs.at(0);
  bool zero;
  if constexpr (scalar_traits<T>::exact)
    zero = scalar_traits<T>::is_zero(witness);
  else
    zero = scalar_traits<T>::abs(witness) <= tolerance * detail::parity_scale(c);
  return VanishingCertificate<T>{n, alpha, *par, zero, witness, prod.two_pi_exponent};
}

}  // namespace curvcert
