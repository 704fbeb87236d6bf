#pragma once

// Algebraic curvature tensors and the operations that build new ones: the
// induced operator on 2-vectors, the star product of self-adjoint exterior
// operators, traces, and the scalar / traceless-Ricci / Weyl decomposition.
//
// A curvature tensor C is stored through its pair matrix M on the increasing
// pair basis, M(I,J) = C(e_{i1}, e_{i2}, e_{j1}, e_{j2}); the slot
// antisymmetries and the pair symmetry make M symmetric and fully determine
// C. The first Bianchi identity is an extra linear condition checked on
// construction.

#include <utility>
#include <vector>

#include "curvcert/exterior.hpp"

namespace curvcert {

// Symmetric bilinear form on the base space.
template <class T>
struct SymBilinear {
  ScalarSpace space;
  Mat<T> mat;

  SymBilinear(ScalarSpace s, Mat<T> m) : space(std::move(s)), mat(std::move(m)) {
    if (mat.rows() != space.dim() || mat.cols() != space.dim())
      throw DimensionError("SymBilinear: wrong matrix size");
    if (!mat.is_symmetric()) throw PreconditionFailed("SymBilinear: matrix is not symmetric");
  }

  static SymBilinear zero(const ScalarSpace& s) {
    return SymBilinear(s, Mat<T>(s.dim(), s.dim()));
  }

  bool is_zero() const { return mat.is_zero(); }

  friend bool operator==(const SymBilinear& a, const SymBilinear& b) {
    return a.space == b.space && a.mat == b.mat;
  }
  friend bool operator!=(const SymBilinear& a, const SymBilinear& b) { return !(a == b); }
  friend SymBilinear operator+(const SymBilinear& a, const SymBilinear& b) {
    if (a.space != b.space) throw PreconditionFailed("SymBilinear: different spaces");
    return SymBilinear(a.space, a.mat + b.mat);
  }
  friend SymBilinear operator-(const SymBilinear& a, const SymBilinear& b) {
    if (a.space != b.space) throw PreconditionFailed("SymBilinear: different spaces");
    return SymBilinear(a.space, a.mat - b.mat);
  }
  friend SymBilinear operator*(const T& s, const SymBilinear& a) {
    return SymBilinear(a.space, s * a.mat);
  }
};

// The scalar product itself as a bilinear form (diagonal signs).
template <class T>
SymBilinear<T> metric_form(const ScalarSpace& space) {
  Mat<T> g(space.dim(), space.dim());
  for (int i = 0; i < space.dim(); ++i) g(i, i) = T(space.sign(i));
  return SymBilinear<T>(space, std::move(g));
}

// g-trace of a bilinear form: sum_i eps_i h(e_i, e_i).
template <class T>
T metric_trace(const SymBilinear<T>& h) {
  T acc{};
  for (int i = 0; i < h.space.dim(); ++i) {
    if (h.space.sign(i) < 0)
      acc -= h.mat(i, i);
    else
      acc += h.mat(i, i);
  }
  return acc;
}

template <class T>
class CurvatureTensor {
 public:
  using value_type = T;

  // Validating constructor from a pair matrix: symmetry and the first
  // Bianchi identity are checked (exactly in rational mode, to a relative
  // tolerance in float mode).
  static CurvatureTensor from_pair_matrix(
      const ScalarSpace& space, Mat<T> m,
      const T& tolerance = scalar_traits<T>::default_tolerance()) {
    const int d = static_cast<int>(space.table().count(2));
    if (m.rows() != d || m.cols() != d)
      throw DimensionError("curvature: pair matrix has the wrong size");
    if constexpr (scalar_traits<T>::exact) {
      if (!m.is_symmetric())
        throw SymmetryConflict("curvature: pair matrix is not symmetric");
    } else {
      T scale = bianchi_scale(m);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
          if (scalar_traits<T>::abs(m(i, j) - m(j, i)) > tolerance * scale)
            throw SymmetryConflict("curvature: pair matrix is not symmetric");
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) m(j, i) = m(i, j);
    }
    CurvatureTensor c(space, std::move(m));
    c.check_bianchi(tolerance);
    return c;
  }

  static CurvatureTensor zero(const ScalarSpace& space) {
    const int d = static_cast<int>(space.table().count(2));
    return CurvatureTensor(space, Mat<T>(d, d));
  }

  const ScalarSpace& space() const { return space_; }
  const Mat<T>& pair_matrix() const { return pair_; }

  // Component C(e_a, e_b, e_c, e_d) for arbitrary basis indices (0-based).
  T component(int a, int b, int c, int d) const {
    const int n = space_.dim();
    if (a < 0 || b < 0 || c < 0 || d < 0 || a >= n || b >= n || c >= n || d >= n)
      throw PreconditionFailed("curvature component: index out of range");
    if (a == b || c == d) return T{};
    int sgn = 1;
    if (a > b) {
      std::swap(a, b);
      sgn = -sgn;
    }
    if (c > d) {
      std::swap(c, d);
      sgn = -sgn;
    }
    const SubsetTable& tab = space_.table();
    T v = pair_(tab.rank(mask_of({a, b})), tab.rank(mask_of({c, d})));
    return sgn > 0 ? v : T(-v);
  }

  bool is_zero() const { return pair_.is_zero(); }

  friend bool operator==(const CurvatureTensor& a, const CurvatureTensor& b) {
    return a.space_ == b.space_ && a.pair_ == b.pair_;
  }
  friend bool operator!=(const CurvatureTensor& a, const CurvatureTensor& b) {
    return !(a == b);
  }

  // Linear combinations of curvature tensors satisfy all defining identities
  // automatically, so arithmetic skips revalidation.
  friend CurvatureTensor operator+(const CurvatureTensor& a, const CurvatureTensor& b) {
    if (a.space_ != b.space_) throw PreconditionFailed("curvature: different spaces");
    return CurvatureTensor(a.space_, a.pair_ + b.pair_);
  }
  friend CurvatureTensor operator-(const CurvatureTensor& a, const CurvatureTensor& b) {
    if (a.space_ != b.space_) throw PreconditionFailed("curvature: different spaces");
    return CurvatureTensor(a.space_, a.pair_ - b.pair_);
  }
  friend CurvatureTensor operator-(const CurvatureTensor& a) {
    return CurvatureTensor(a.space_, -a.pair_);
  }
  friend CurvatureTensor operator*(const T& s, const CurvatureTensor& a) {
    return CurvatureTensor(a.space_, s * a.pair_);
  }

  // For code that has established the invariants by construction (parity
  // projections, pullbacks along isometries, Kulkarni-Nomizu products whose
  // Bianchi identity is checked once in tests).
  static CurvatureTensor unchecked(const ScalarSpace& space, Mat<T> m) {
    return CurvatureTensor(space, std::move(m));
  }

 private:
  CurvatureTensor(ScalarSpace space, Mat<T> m)
      : space_(std::move(space)), pair_(std::move(m)) {}

  static T bianchi_scale(const Mat<T>& m) {
    T scale(1);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        T a = scalar_traits<T>::abs(m(i, j));
        if (a > scale) scale = a;
      }
    return scale;
  }

  // First Bianchi identity. Given the pair symmetries, the cyclic sum is
  // alternating in its four slots, so checking increasing 4-subsets
  // {a<b<c<d} via  M(ab,cd) - M(ac,bd) + M(ad,bc) = 0  covers all cases.
  void check_bianchi(const T& tolerance) const {
    const int n = space_.dim();
    if (n < 4) return;
    const SubsetTable& tab = space_.table();
    T scale = bianchi_scale(pair_);
    for (std::uint32_t quad : tab.masks(4)) {
      auto mem = members_of(quad);
      const int a = mem[0], b = mem[1], c = mem[2], d = mem[3];
      T s = pair_(tab.rank(mask_of({a, b})), tab.rank(mask_of({c, d})));
      s -= pair_(tab.rank(mask_of({a, c})), tab.rank(mask_of({b, d})));
      s += pair_(tab.rank(mask_of({a, d})), tab.rank(mask_of({b, c})));
      bool bad;
      if constexpr (scalar_traits<T>::exact)
        bad = !scalar_traits<T>::is_zero(s);
      else
        bad = scalar_traits<T>::abs(s) > tolerance * scale;
      if (bad) throw BianchiViolation("curvature: first Bianchi identity fails");
    }
  }

  ScalarSpace space_;
  Mat<T> pair_;
};

// One explicitly listed component, all indices 0-based. Entries may name any
// representative of an orbit under the slot symmetries.
template <class T>
struct ComponentEntry {
  int i, j, k, l;
  T value;
};

template <class T>
CurvatureTensor<T> curvature_from_components(
    const ScalarSpace& space, const std::vector<ComponentEntry<T>>& entries,
    const T& tolerance = scalar_traits<T>::default_tolerance()) {
  const int n = space.dim();
  const SubsetTable& tab = space.table();
  const int d = static_cast<int>(tab.count(2));
  Mat<T> m(d, d);
  // seen(I,J): whether the orbit of (I,J) already received a value.
  std::vector<char> seen(static_cast<std::size_t>(d) * d, 0);
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.l < 0 || e.i >= n || e.j >= n || e.k >= n ||
        e.l >= n)
      throw PreconditionFailed("curvature component entry: index out of range");
    if (e.i == e.j || e.k == e.l) {
      // Antisymmetry forces these to vanish; a nonzero value contradicts it.
      if (!scalar_traits<T>::is_zero(e.value))
        throw SymmetryConflict("component with a repeated slot index must be zero");
      continue;
    }
    int a = e.i, b = e.j, c = e.k, dd = e.l, sgn = 1;
    if (a > b) {
      std::swap(a, b);
      sgn = -sgn;
    }
    if (c > dd) {
      std::swap(c, dd);
      sgn = -sgn;
    }
    long long I = tab.rank(mask_of({a, b})), J = tab.rank(mask_of({c, dd}));
    if (I > J) std::swap(I, J);
    T v = sgn > 0 ? e.value : T(-e.value);
    std::size_t key = static_cast<std::size_t>(I) * d + J;
    if (seen[key]) {
      if (m(I, J) != v)
        throw SymmetryConflict("duplicate component entries imply different values");
    } else {
      seen[key] = 1;
      m(I, J) = v;
      m(J, I) = v;
    }
  }
  return CurvatureTensor<T>::from_pair_matrix(space, std::move(m), tolerance);
}

// The self-adjoint operator on 2-vectors induced by C, defined through
// <C_hat(e_I), e_J> = M(I,J); with the diagonal induced metric this is
// C_hat = G2^{-1} M = G2 M.
template <class T>
ExtOperator<T> curvature_operator(const CurvatureTensor<T>& c) {
  const ScalarSpace& space = c.space();
  ExtOperator<T> op(space, 2);
  const auto& masks = space.table().masks(2);
  const int d = op.mat.rows();
  for (int i = 0; i < d; ++i) {
    const bool flip = space.subset_sign(masks[i]) < 0;
    for (int j = 0; j < d; ++j)
      op.mat(i, j) = flip ? T(-c.pair_matrix()(i, j)) : c.pair_matrix()(i, j);
  }
  return op;
}

// Inverse of curvature_operator: recover the tensor from a self-adjoint
// operator on 2-vectors (validates Bianchi).
template <class T>
CurvatureTensor<T> curvature_from_operator(
    const ExtOperator<T>& op, const T& tolerance = scalar_traits<T>::default_tolerance()) {
  if (op.degree != 2) throw DimensionError("curvature_from_operator: degree must be 2");
  const ScalarSpace& space = op.space;
  const auto& masks = space.table().masks(2);
  Mat<T> m(op.mat.rows(), op.mat.cols());
  for (int i = 0; i < m.rows(); ++i) {
    const bool flip = space.subset_sign(masks[i]) < 0;
    for (int j = 0; j < m.cols(); ++j) m(i, j) = flip ? T(-op.mat(i, j)) : op.mat(i, j);
  }
  return CurvatureTensor<T>::from_pair_matrix(space, std::move(m), tolerance);
}

// Star product of operators on exterior powers. On basis elements, with
// R = I u J split into increasing disjoint tuples,
//   (A*B)(e_R) = sum_{I u J = R} sgn(I,J) A(e_I) ^ B(e_J),
// which expands into the coefficient kernel below. The formula is bilinear
// and valid for arbitrary linear maps; self-adjointness of the operands is
// preserved, not required.
template <class T>
ExtOperator<T> star_product(const ExtOperator<T>& a, const ExtOperator<T>& b) {
  if (a.space != b.space) throw PreconditionFailed("star_product: different spaces");
  const ScalarSpace& space = a.space;
  const int k = a.degree, l = b.degree;
  if (k + l > space.dim()) throw DimensionError("star_product: degree exceeds dimension");
  const SubsetTable& tab = space.table();
  ExtOperator<T> out(space, k + l);
  const auto& kmasks = tab.masks(k);
  const auto& lmasks = tab.masks(l);
  for (std::size_t i = 0; i < kmasks.size(); ++i)
    for (std::size_t j = 0; j < lmasks.size(); ++j) {
      const int sij = merge_sign(kmasks[i], lmasks[j]);
      if (sij == 0) continue;
      const int col = static_cast<int>(tab.rank(kmasks[i] | lmasks[j]));
      for (std::size_t p = 0; p < kmasks.size(); ++p) {
        const T& api = a.mat(static_cast<int>(p), static_cast<int>(i));
        if (scalar_traits<T>::is_zero(api)) continue;
        for (std::size_t q = 0; q < lmasks.size(); ++q) {
          const int spq = merge_sign(kmasks[p], lmasks[q]);
          if (spq == 0) continue;
          const T& bqj = b.mat(static_cast<int>(q), static_cast<int>(j));
          if (scalar_traits<T>::is_zero(bqj)) continue;
          const int row = static_cast<int>(tab.rank(kmasks[p] | lmasks[q]));
          T term = api * bqj;
          if (sij * spq > 0)
            out.mat(row, col) += term;
          else
            out.mat(row, col) -= term;
        }
      }
    }
  return out;
}

// k-fold star power of the curvature operator, an operator on 2k-vectors.
template <class T>
ExtOperator<T> higher_curvature_operator(const CurvatureTensor<T>& c, int k) {
  if (k < 1) throw PreconditionFailed("higher_curvature_operator: k must be >= 1");
  if (2 * k > c.space().dim())
    throw DimensionError("higher_curvature_operator: 2k exceeds the dimension");
  ExtOperator<T> base = curvature_operator(c);
  ExtOperator<T> acc = base;
  for (int i = 1; i < k; ++i) acc = star_product(acc, base);
  return acc;
}

// Metric contraction over the first and fourth slots:
//   Ric(x, y) = sum_i eps_i C(e_i, x, y, e_i).
template <class T>
SymBilinear<T> trace14(const CurvatureTensor<T>& c) {
  const ScalarSpace& space = c.space();
  const int n = space.dim();
  Mat<T> ric(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = k; l < n; ++l) {
      T acc{};
      for (int i = 0; i < n; ++i) {
        T v = c.component(i, k, l, i);
        if (space.sign(i) < 0)
          acc -= v;
        else
          acc += v;
      }
      ric(k, l) = acc;
      ric(l, k) = acc;
    }
  return SymBilinear<T>(space, std::move(ric));
}

template <class T>
T scalar_curvature(const CurvatureTensor<T>& c) {
  return metric_trace(trace14(c));
}

// Kulkarni-Nomizu product of two symmetric bilinear forms:
// (h (.) k)(u,v,x,y) = h(u,y)k(v,x) + h(v,x)k(u,y) - h(u,x)k(v,y) - h(v,y)k(u,x).
template <class T>
CurvatureTensor<T> kulkarni_nomizu(const SymBilinear<T>& h, const SymBilinear<T>& k) {
  if (h.space != k.space) throw PreconditionFailed("kulkarni_nomizu: different spaces");
  const ScalarSpace& space = h.space;
  const SubsetTable& tab = space.table();
  const auto& pairs = tab.masks(2);
  const int d = static_cast<int>(pairs.size());
  Mat<T> m(d, d);
  for (int I = 0; I < d; ++I) {
    auto uv = members_of(pairs[I]);
    for (int J = I; J < d; ++J) {
      auto xy = members_of(pairs[J]);
      const int u = uv[0], v = uv[1], x = xy[0], y = xy[1];
      T val = h.mat(u, y) * k.mat(v, x) + h.mat(v, x) * k.mat(u, y) -
              h.mat(u, x) * k.mat(v, y) - h.mat(v, y) * k.mat(u, x);
      m(I, J) = val;
      m(J, I) = val;
    }
  }
  return CurvatureTensor<T>::from_pair_matrix(space, std::move(m));
}

// Full metric contraction of two curvature tensors over all four slots.
// Summing C(a,b,c,d) D(a,b,c,d) eps_a eps_b eps_c eps_d over ordered indices
// collapses to four times the pair-matrix sum below.
template <class T>
T full_contraction(const CurvatureTensor<T>& c, const CurvatureTensor<T>& d) {
  if (c.space() != d.space()) throw PreconditionFailed("full_contraction: different spaces");
  const auto& masks = c.space().table().masks(2);
  const int m = static_cast<int>(masks.size());
  T acc{};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      T term = c.pair_matrix()(i, j) * d.pair_matrix()(i, j);
      int s = c.space().subset_sign(masks[i]) * c.space().subset_sign(masks[j]);
      if (s < 0)
        acc -= term;
      else
        acc += term;
    }
  return T(4) * acc;
}

// Schouten form P = (Ric - S g / (2(n-1))) / (n-2), defined for n >= 3.
template <class T>
SymBilinear<T> schouten(const CurvatureTensor<T>& c) {
  const int n = c.space().dim();
  if (n < 3) throw DimensionError("schouten: dimension must be at least 3");
  SymBilinear<T> ric = trace14(c);
  T s = metric_trace(ric);
  SymBilinear<T> g = metric_form<T>(c.space());
  T a = T(1) / T(n - 2);
  T b = s / T(2 * (n - 1));
  return a * (ric - b * g);
}

// Weyl part W = C - P (.) g; trace14(W) = 0 and W depends only on the
// conformal class in the geometric setting.
template <class T>
CurvatureTensor<T> weyl(const CurvatureTensor<T>& c) {
  SymBilinear<T> p = schouten(c);
  SymBilinear<T> g = metric_form<T>(c.space());
  return c - kulkarni_nomizu(p, g);
}

template <class T>
struct Decomposition {
  T scalar;                       // scalar curvature S
  SymBilinear<T> traceless_ricci; // Ric - (S/n) g
  CurvatureTensor<T> weyl_part;
};

// Orthogonal decomposition; reconstruction reads
//   C = W + (ric0 (.) g)/(n-2) + S (g (.) g) / (2 n (n-1)).
template <class T>
Decomposition<T> decompose(const CurvatureTensor<T>& c) {
  const int n = c.space().dim();
  if (n < 3) throw DimensionError("decompose: dimension must be at least 3");
  SymBilinear<T> ric = trace14(c);
  T s = metric_trace(ric);
  SymBilinear<T> g = metric_form<T>(c.space());
  SymBilinear<T> ric0 = ric - (s / T(n)) * g;
  return Decomposition<T>{s, ric0, weyl(c)};
}

}  // namespace curvcert
