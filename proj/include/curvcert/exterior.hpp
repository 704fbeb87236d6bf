#pragma once

// Exterior powers of a scalar product space. Degree-k elements are stored
// densely on the increasing-subset basis in rank order. The same coefficient
// array serves two readings: as a k-vector, or as a k-form (coefficients
// against the basis e^I dual to e_I); metric_dual converts between the two.

#include <cstdint>
#include <vector>

#include "curvcert/linalg.hpp"
#include "curvcert/space.hpp"

namespace curvcert {

template <class T>
struct KVector {
  ScalarSpace space;
  int degree = 0;
  std::vector<T> coeffs;

  KVector(ScalarSpace s, int k)
      : space(std::move(s)), degree(k) {
    if (k < 0 || k > space.dim())
      throw DimensionError("KVector: degree must lie between 0 and the dimension");
    coeffs.assign(static_cast<std::size_t>(space.table().count(k)), T{});
  }

  bool is_zero() const {
    for (const T& c : coeffs)
      if (!scalar_traits<T>::is_zero(c)) return false;
    return true;
  }

  friend bool operator==(const KVector& a, const KVector& b) {
    return a.space == b.space && a.degree == b.degree && a.coeffs == b.coeffs;
  }
  friend bool operator!=(const KVector& a, const KVector& b) { return !(a == b); }
};

template <class T>
using KForm = KVector<T>;

template <class T>
KVector<T> basis_kvector(const ScalarSpace& space, int k, long long rank) {
  KVector<T> v(space, k);
  v.coeffs.at(static_cast<std::size_t>(rank)) = T(1);
  return v;
}

namespace detail {
template <class T>
void require_compatible(const KVector<T>& a, const KVector<T>& b) {
  if (a.space != b.space) throw PreconditionFailed("k-vectors live on different spaces");
  if (a.degree != b.degree) throw DimensionError("k-vector degrees differ");
}
}  // namespace detail

template <class T>
KVector<T> operator+(const KVector<T>& a, const KVector<T>& b) {
  detail::require_compatible(a, b);
  KVector<T> c = a;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] += b.coeffs[i];
  return c;
}

template <class T>
KVector<T> operator-(const KVector<T>& a, const KVector<T>& b) {
  detail::require_compatible(a, b);
  KVector<T> c = a;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] -= b.coeffs[i];
  return c;
}

template <class T>
KVector<T> operator*(const T& s, const KVector<T>& a) {
  KVector<T> c = a;
  for (T& x : c.coeffs) x = s * x;
  return c;
}

// Wedge product on the subset basis: e_I ^ e_J = sgn(I,J) e_{I u J} for
// disjoint I, J and zero otherwise.
template <class T>
KVector<T> wedge(const KVector<T>& a, const KVector<T>& b) {
  if (a.space != b.space) throw PreconditionFailed("wedge: operands on different spaces");
  const int k = a.degree + b.degree;
  if (k > a.space.dim()) throw DimensionError("wedge: degree exceeds dimension");
  const SubsetTable& tab = a.space.table();
  KVector<T> out(a.space, k);
  const auto& amasks = tab.masks(a.degree);
  const auto& bmasks = tab.masks(b.degree);
  for (std::size_t ia = 0; ia < amasks.size(); ++ia) {
    if (scalar_traits<T>::is_zero(a.coeffs[ia])) continue;
    for (std::size_t ib = 0; ib < bmasks.size(); ++ib) {
      if (scalar_traits<T>::is_zero(b.coeffs[ib])) continue;
      int sg = merge_sign(amasks[ia], bmasks[ib]);
      if (sg == 0) continue;
      T term = a.coeffs[ia] * b.coeffs[ib];
      std::size_t r = static_cast<std::size_t>(tab.rank(amasks[ia] | bmasks[ib]));
      if (sg > 0)
        out.coeffs[r] += term;
      else
        out.coeffs[r] -= term;
    }
  }
  return out;
}

// Induced scalar product: diagonal on the subset basis with signs eps_I.
template <class T>
T induced_inner(const KVector<T>& a, const KVector<T>& b) {
  detail::require_compatible(a, b);
  const auto& masks = a.space.table().masks(a.degree);
  T acc{};
  for (std::size_t i = 0; i < masks.size(); ++i) {
    T term = a.coeffs[i] * b.coeffs[i];
    if (a.space.subset_sign(masks[i]) < 0)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

// Multiply each coefficient by eps_I: converts the k-vector reading to the
// k-form reading of the same element and back (the map is an involution).
template <class T>
KVector<T> metric_dual(const KVector<T>& a) {
  KVector<T> c = a;
  const auto& masks = a.space.table().masks(a.degree);
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (a.space.subset_sign(masks[i]) < 0) c.coeffs[i] = -c.coeffs[i];
  return c;
}

// Natural pairing of a k-form (coefficients against e^I) with a k-vector.
template <class T>
T natural_pairing(const KForm<T>& form, const KVector<T>& v) {
  detail::require_compatible(form, v);
  T acc{};
  for (std::size_t i = 0; i < form.coeffs.size(); ++i) acc += form.coeffs[i] * v.coeffs[i];
  return acc;
}

// A linear endomorphism of the degree-k exterior power; column r holds the
// image of the basis element with subset rank r.
template <class T>
struct ExtOperator {
  ScalarSpace space;
  int degree = 0;
  Mat<T> mat;

  ExtOperator(ScalarSpace s, int k)
      : space(std::move(s)), degree(k) {
    if (k < 0 || k > space.dim())
      throw DimensionError("ExtOperator: degree must lie between 0 and the dimension");
    const int d = static_cast<int>(space.table().count(k));
    mat = Mat<T>(d, d);
  }

  friend bool operator==(const ExtOperator& a, const ExtOperator& b) {
    return a.space == b.space && a.degree == b.degree && a.mat == b.mat;
  }
  friend bool operator!=(const ExtOperator& a, const ExtOperator& b) { return !(a == b); }
};

template <class T>
ExtOperator<T> identity_operator(const ScalarSpace& space, int k) {
  ExtOperator<T> op(space, k);
  op.mat = Mat<T>::identity(op.mat.rows());
  return op;
}

template <class T>
KVector<T> apply(const ExtOperator<T>& op, const KVector<T>& v) {
  if (op.space != v.space || op.degree != v.degree)
    throw PreconditionFailed("apply: operator and argument are incompatible");
  KVector<T> out(v.space, v.degree);
  const int d = op.mat.rows();
  for (int j = 0; j < d; ++j) {
    if (scalar_traits<T>::is_zero(v.coeffs[j])) continue;
    for (int i = 0; i < d; ++i) out.coeffs[i] += op.mat(i, j) * v.coeffs[j];
  }
  return out;
}

template <class T>
ExtOperator<T> compose(const ExtOperator<T>& a, const ExtOperator<T>& b) {
  if (a.space != b.space || a.degree != b.degree)
    throw PreconditionFailed("compose: operators are incompatible");
  ExtOperator<T> c(a.space, a.degree);
  c.mat = a.mat * b.mat;
  return c;
}

// Self-adjointness with respect to the induced scalar product, i.e. the
// matrix eps_I * A(I,J) is symmetric.
template <class T>
bool is_self_adjoint(const ExtOperator<T>& op) {
  const auto& masks = op.space.table().masks(op.degree);
  const int d = op.mat.rows();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      T lhs = op.mat(i, j);
      if (op.space.subset_sign(masks[i]) < 0) lhs = -lhs;
      T rhs = op.mat(j, i);
      if (op.space.subset_sign(masks[j]) < 0) rhs = -rhs;
      if (lhs != rhs) return false;
    }
  return true;
}

// Linear isometry of the underlying space; columns are images of the basis.
template <class T>
struct Isometry {
  ScalarSpace space;
  Mat<T> mat;
  int det_sign = +1;
};

template <class T>
Isometry<T> make_isometry(const ScalarSpace& space, Mat<T> m,
                          const T& tolerance = scalar_traits<T>::default_tolerance()) {
  const int n = space.dim();
  if (m.rows() != n || m.cols() != n) throw DimensionError("make_isometry: wrong matrix size");
  // theta^T G theta = G entry by entry.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      T acc{};
      for (int k = 0; k < n; ++k) {
        T term = m(k, i) * m(k, j);
        if (space.sign(k) < 0)
          acc -= term;
        else
          acc += term;
      }
      T expect = (i == j) ? T(space.sign(i)) : T{};
      T diff = acc - expect;
      if (scalar_traits<T>::abs(diff) > tolerance)
        throw PreconditionFailed("make_isometry: matrix does not preserve the scalar product");
    }
  T d = det(m);
  int ds;
  if constexpr (scalar_traits<T>::exact) {
    if (d == T(1))
      ds = +1;
    else if (d == T(-1))
      ds = -1;
    else
      throw PreconditionFailed("make_isometry: determinant is not +-1");
  } else {
    ds = d < 0 ? -1 : +1;
  }
  return Isometry<T>{space, std::move(m), ds};
}

// Image of a single vector (coefficients on the standard basis).
template <class T>
std::vector<T> apply(const Isometry<T>& theta, const std::vector<T>& v) {
  const int n = theta.space.dim();
  if (static_cast<int>(v.size()) != n) throw DimensionError("apply: vector of wrong length");
  std::vector<T> out(n, T{});
  for (int j = 0; j < n; ++j) {
    if (scalar_traits<T>::is_zero(v[j])) continue;
    for (int i = 0; i < n; ++i) out[i] += theta.mat(i, j) * v[j];
  }
  return out;
}

// Induced map on the degree-k exterior power: entry (J, I) is the k x k
// minor of theta with rows J and columns I, assembled by iterated wedging.
template <class T>
ExtOperator<T> ext_power_map(const Isometry<T>& theta, int k) {
  const ScalarSpace& space = theta.space;
  if (k < 0 || k > space.dim()) throw DimensionError("ext_power_map: bad degree");
  ExtOperator<T> out(space, k);
  const auto& masks = space.table().masks(k);
  for (std::size_t col = 0; col < masks.size(); ++col) {
    KVector<T> image(space, 0);
    image.coeffs[0] = T(1);
    for (int i : members_of(masks[col])) {
      KVector<T> column(space, 1);
      for (int r = 0; r < space.dim(); ++r) column.coeffs[r] = theta.mat(r, i);
      image = wedge(image, column);
    }
    for (int row = 0; row < out.mat.rows(); ++row) out.mat(row, col) = image.coeffs[row];
  }
  return out;
}

// Pullback of a k-form along an isometry: (theta^* phi)(v_1,...,v_k) =
// phi(theta v_1,...,theta v_k); on coefficients this is the transpose of the
// induced exterior power map.
template <class T>
KForm<T> pullback_form(const Isometry<T>& theta, const KForm<T>& phi) {
  if (theta.space != phi.space)
    throw PreconditionFailed("pullback_form: isometry and form live on different spaces");
  ExtOperator<T> lam = ext_power_map(theta, phi.degree);
  KForm<T> out(phi.space, phi.degree);
  const int d = lam.mat.rows();
  for (int i = 0; i < d; ++i) {
    T acc{};
    for (int j = 0; j < d; ++j) acc += lam.mat(j, i) * phi.coeffs[j];
    out.coeffs[i] = acc;
  }
  return out;
}

// Hodge star on 2-vectors of a 4-dimensional space with exactly one timelike
// direction, defined by xi ^ (star eta) = -<xi, eta> omega where omega is the
// oriented unit volume element. On the subset basis:
//   star e_J = -orientation * eps_J * sgn(J, J^c) * e_{J^c}.
template <class T>
KVector<T> hodge_star(const KVector<T>& v) {
  const ScalarSpace& space = v.space;
  if (space.dim() != 4) throw SignatureError("hodge_star: dimension must be 4");
  if (space.timelike_count() != 1)
    throw SignatureError("hodge_star: metric must have exactly one timelike direction");
  if (v.degree != 2) throw DimensionError("hodge_star: degree must be 2");
  const SubsetTable& tab = space.table();
  const auto& masks = tab.masks(2);
  const std::uint32_t full = (std::uint32_t{1} << 4) - 1;
  KVector<T> out(space, 2);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (scalar_traits<T>::is_zero(v.coeffs[i])) continue;
    std::uint32_t comp = full & ~masks[i];
    int s = -space.orientation() * space.subset_sign(masks[i]) * merge_sign(masks[i], comp);
    std::size_t r = static_cast<std::size_t>(tab.rank(comp));
    if (s > 0)
      out.coeffs[r] += v.coeffs[i];
    else
      out.coeffs[r] -= v.coeffs[i];
  }
  return out;
}

template <class T>
ExtOperator<T> hodge_star_operator(const ScalarSpace& space) {
  ExtOperator<T> op(space, 2);
  const int d = op.mat.rows();
  for (int j = 0; j < d; ++j) {
    KVector<T> img = hodge_star(basis_kvector<T>(space, 2, j));
    for (int i = 0; i < d; ++i) op.mat(i, j) = img.coeffs[i];
  }
  return op;
}

}  // namespace curvcert
