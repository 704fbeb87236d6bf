#pragma once

// Constructors for curvature tensors used by the test batteries and the
// command line: constant curvature, seeded random tensors (projected onto
// the Bianchi subspace), the complex projective plane, block sums, Weyl
// tensors of prescribed Petrov type, and Euler/signature bookkeeping for
// connected sums of model 4-manifolds.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvcert/petrov.hpp"
#include "curvcert/symmetry.hpp"

namespace curvcert {

// Constant sectional curvature kappa: C = (kappa/2) g (.) g.
template <class T>
CurvatureTensor<T> constant_curvature(const ScalarSpace& space, const T& kappa) {
  SymBilinear<T> g = metric_form<T>(space);
  return (kappa / T(2)) * kulkarni_nomizu(g, g);
}

// Orthogonal projection of a symmetric pair matrix onto the subspace
// satisfying the first Bianchi identity: on each increasing 4-subset the
// cyclic sum  B = M(ab,cd) - M(ac,bd) + M(ad,bc)  is removed by shifting
// each of the three slots by -+ B/3.
template <class T>
CurvatureTensor<T> bianchi_project(const ScalarSpace& space, Mat<T> m) {
  const int d = static_cast<int>(space.table().count(2));
  if (m.rows() != d || m.cols() != d)
    throw DimensionError("bianchi_project: pair matrix has the wrong size");
  if (!m.is_symmetric()) throw PreconditionFailed("bianchi_project: matrix must be symmetric");
  const SubsetTable& tab = space.table();
  if (space.dim() >= 4) {
    const T third = T(1) / T(3);
    for (std::uint32_t quad : tab.masks(4)) {
      auto mem = members_of(quad);
      const int a = mem[0], b = mem[1], c = mem[2], e = mem[3];
      const long long ab = tab.rank(mask_of({a, b})), cd = tab.rank(mask_of({c, e}));
      const long long ac = tab.rank(mask_of({a, c})), bd = tab.rank(mask_of({b, e}));
      const long long ad = tab.rank(mask_of({a, e})), bc = tab.rank(mask_of({b, c}));
      T bsum = m(ab, cd) - m(ac, bd) + m(ad, bc);
      if (scalar_traits<T>::is_zero(bsum)) continue;
      T shift = bsum * third;
      m(ab, cd) -= shift;
      m(cd, ab) -= shift;
      m(ac, bd) += shift;
      m(bd, ac) += shift;
      m(ad, bc) -= shift;
      m(bc, ad) -= shift;
    }
  }
  return CurvatureTensor<T>::from_pair_matrix(space, std::move(m));
}

// Deterministic random source. Draws use the raw 64-bit stream with a
// modulus rather than std::uniform_int_distribution, whose output sequence
// is not pinned down by the standard across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  long long below(long long m) { return static_cast<long long>(eng_() % static_cast<std::uint64_t>(m)); }

  // Uniform over [lo, hi].
  long long range(long long lo, long long hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 eng_;
};

// Stable derived seeds for battery instances.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Bounded random coefficient: numerator in [-9, 9], denominator in {1,..,4}.
template <class T>
T random_scalar(Rng& rng) {
  long long num = rng.range(-9, 9);
  long long den = rng.range(1, 4);
  return T(static_cast<int>(num)) / T(static_cast<int>(den));
}

template <class T>
CurvatureTensor<T> random_curvature(const ScalarSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  const int d = static_cast<int>(space.table().count(2));
  Mat<T> m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      T v = random_scalar<T>(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  return bianchi_project(space, std::move(m));
}

// Random non-null vector with bounded rational entries.
template <class T>
std::vector<T> random_nonnull_vector(const ScalarSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  const int n = space.dim();
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<T> u(n);
    for (int i = 0; i < n; ++i) u[i] = random_scalar<T>(rng);
    T uu{};
    for (int i = 0; i < n; ++i) {
      T t = u[i] * u[i];
      if (space.sign(i) < 0)
        uu -= t;
      else
        uu += t;
    }
    if (!scalar_traits<T>::is_zero(uu)) return u;
  }
  throw Error("random_nonnull_vector: exhausted attempts");
}

// Random isometry given by a signed permutation that maps each metric sign
// class to itself; the determinant sign can be prescribed.
template <class T>
Isometry<T> random_signed_permutation(const ScalarSpace& space, std::uint64_t seed,
                                      int want_det) {
  if (want_det != 1 && want_det != -1)
    throw PreconditionFailed("random_signed_permutation: determinant must be +-1");
  Rng rng(seed);
  const int n = space.dim();
  std::vector<int> perm(n);
  // Shuffle indices within each sign class so the metric is preserved.
  std::vector<int> classes[2];
  for (int i = 0; i < n; ++i) classes[space.sign(i) < 0 ? 0 : 1].push_back(i);
  for (auto& cls : classes)
    for (int i = static_cast<int>(cls.size()) - 1; i > 0; --i)
      std::swap(cls[i], cls[rng.below(i + 1)]);
  {
    int pos[2] = {0, 0};
    for (int i = 0; i < n; ++i) {
      int c = space.sign(i) < 0 ? 0 : 1;
      perm[i] = classes[c][pos[c]++];
    }
  }
  std::vector<int> sign(n);
  for (int i = 0; i < n; ++i) sign[i] = rng.below(2) ? 1 : -1;
  // Determinant = sgn(perm) * prod(signs); fix up with one flip if needed.
  int det = 1;
  {
    std::vector<char> vis(n, 0);
    for (int i = 0; i < n; ++i) {
      if (vis[i]) continue;
      int len = 0, j = i;
      while (!vis[j]) {
        vis[j] = 1;
        j = perm[j];
        ++len;
      }
      if (len % 2 == 0) det = -det;
    }
  }
  for (int s : sign) det *= s;
  if (det != want_det) sign[rng.below(n)] *= -1;
  Mat<T> m(n, n);
  for (int j = 0; j < n; ++j) m(perm[j], j) = T(sign[j]);
  return make_isometry(space, std::move(m));
}

// Random tensor of definite parity under an isometric involution; the
// projection of a seeded random tensor onto the requested eigenspace.
template <class T>
CurvatureTensor<T> random_parity(const ScalarSpace& space, const Isometry<T>& theta,
                                 int parity, std::uint64_t seed) {
  if (parity != 1 && parity != -1)
    throw PreconditionFailed("random_parity: parity must be +-1");
  CurvatureTensor<T> c = random_curvature<T>(space, seed);
  ParitySplit<T> split = parity_split(c, theta);
  return parity == 1 ? split.even : split.odd;
}

// Curvature tensor of the complex projective plane (real dimension 4) with
// constant holomorphic sectional curvature 4: with J the standard complex
// structure,
//   C(x,y,z,w) = g(x,w)g(y,z) - g(x,z)g(y,w)
//              + g(Jx,w)g(Jy,z) - g(Jx,z)g(Jy,w) - 2 g(Jx,y) g(Jz,w).
template <class T>
CurvatureTensor<T> fubini_study_cp2() {
  ScalarSpace space = ScalarSpace::euclidean(4);
  // J e_0 = e_1, J e_1 = -e_0, J e_2 = e_3, J e_3 = -e_2.
  const int jidx[4] = {1, 0, 3, 2};
  const int jsgn[4] = {1, -1, 1, -1};
  const auto g = [](int a, int b) { return a == b ? 1 : 0; };
  const auto gj = [&](int a, int b) { return jidx[a] == b ? jsgn[a] : 0; };  // g(J e_a, e_b)
  const auto comp = [&](int x, int y, int z, int w) {
    int v = g(x, w) * g(y, z) - g(x, z) * g(y, w) + gj(x, w) * gj(y, z) -
            gj(x, z) * gj(y, w) - 2 * gj(x, y) * gj(z, w);
    return T(v);
  };
  const SubsetTable& tab = space.table();
  const auto& pairs = tab.masks(2);
  Mat<T> m(6, 6);
  for (int i = 0; i < 6; ++i) {
    auto xy = members_of(pairs[i]);
    for (int j = 0; j < 6; ++j) {
      auto zw = members_of(pairs[j]);
      m(i, j) = comp(xy[0], xy[1], zw[0], zw[1]);
    }
  }
  return CurvatureTensor<T>::from_pair_matrix(space, std::move(m));
}

// Block sum: the curvature tensor on the orthogonal direct sum whose mixed
// components vanish. Orientations multiply.
template <class T>
CurvatureTensor<T> direct_sum(const CurvatureTensor<T>& a, const CurvatureTensor<T>& b) {
  const ScalarSpace& sa = a.space();
  const ScalarSpace& sb = b.space();
  std::vector<int> signs = sa.signs();
  signs.insert(signs.end(), sb.signs().begin(), sb.signs().end());
  ScalarSpace space(sa.dim() + sb.dim(), std::move(signs),
                    sa.orientation() * sb.orientation());
  const int na = sa.dim();
  const SubsetTable& tab = space.table();
  const auto& pairs = tab.masks(2);
  const int d = static_cast<int>(pairs.size());
  Mat<T> m(d, d);
  for (int i = 0; i < d; ++i) {
    auto xy = members_of(pairs[i]);
    for (int j = 0; j < d; ++j) {
      auto zw = members_of(pairs[j]);
      const bool ia = xy[1] < na, ja = zw[1] < na;
      const bool ib = xy[0] >= na, jb = zw[0] >= na;
      if (ia && ja)
        m(i, j) = a.component(xy[0], xy[1], zw[0], zw[1]);
      else if (ib && jb)
        m(i, j) = b.component(xy[0] - na, xy[1] - na, zw[0] - na, zw[1] - na);
      // mixed pairs stay zero
    }
  }
  return CurvatureTensor<T>::from_pair_matrix(space, std::move(m));
}

// Weyl-type tensor with prescribed Petrov type on the standard Lorentz
// 4-space, built from a symmetric Jordan model of the complexified operator
// and verified by classification after construction.
//
// Eigenvalue data per type: O, N, III take none; D and II take the repeated
// eigenvalue lambda (spectrum lambda, lambda, -2 lambda), or the full triple;
// I takes two or three values (the last is determined by the zero trace).
template <class T>
CurvatureTensor<T> weyl_of_petrov_type(const ScalarSpace& space, PetrovType type,
                                       std::vector<Complex<T>> eigen = {}) {
  using CX = Complex<T>;
  const CX zero{};
  const CX i_unit(T(0), T(1));
  Mat<CX> q(3, 3);
  auto require_count = [&](std::size_t lo, std::size_t hi) {
    if (eigen.size() < lo || eigen.size() > hi)
      throw PreconditionFailed("weyl_of_petrov_type: wrong number of eigenvalues");
  };
  switch (type) {
    case PetrovType::O:
      require_count(0, 0);
      break;
    case PetrovType::N:
      require_count(0, 0);
      q(0, 0) = CX(T(1));
      q(0, 1) = i_unit;
      q(1, 0) = i_unit;
      q(1, 1) = CX(T(-1));
      break;
    case PetrovType::III:
      require_count(0, 0);
      q(0, 2) = CX(T(1));
      q(2, 0) = CX(T(1));
      q(1, 2) = i_unit;
      q(2, 1) = i_unit;
      break;
    case PetrovType::D:
    case PetrovType::II: {
      require_count(1, 3);
      CX lam = eigen[0];
      if (eigen.size() == 3) {
        // Expect the multiset {lam, lam, -2 lam} in some order.
        if (eigen[0] == eigen[1])
          lam = eigen[0];
        else if (eigen[0] == eigen[2])
          lam = eigen[0];
        else if (eigen[1] == eigen[2])
          lam = eigen[1];
        else
          throw PreconditionFailed("weyl_of_petrov_type: no repeated eigenvalue given");
        CX sum = eigen[0] + eigen[1] + eigen[2];
        if (!scalar_traits<CX>::is_zero(sum))
          throw PreconditionFailed("weyl_of_petrov_type: eigenvalues must sum to zero");
      } else if (eigen.size() != 1) {
        throw PreconditionFailed("weyl_of_petrov_type: give lambda or the full triple");
      }
      if (scalar_traits<CX>::is_zero(lam))
        throw PreconditionFailed("weyl_of_petrov_type: repeated eigenvalue must be nonzero");
      CX mu = CX(T(-2)) * lam;
      q(0, 0) = lam;
      q(1, 1) = lam;
      q(2, 2) = mu;
      if (type == PetrovType::II) {
        // Symmetric rank-one nilpotent bump glued to the lambda eigenspace.
        q(0, 0) = q(0, 0) + CX(T(1));
        q(1, 1) = q(1, 1) - CX(T(1));
        q(0, 1) = i_unit;
        q(1, 0) = i_unit;
      }
      break;
    }
    case PetrovType::I: {
      require_count(2, 3);
      CX l0 = eigen[0], l1 = eigen[1];
      CX l2 = -(l0 + l1);
      if (eigen.size() == 3) {
        CX sum = eigen[0] + eigen[1] + eigen[2];
        if (!scalar_traits<CX>::is_zero(sum))
          throw PreconditionFailed("weyl_of_petrov_type: eigenvalues must sum to zero");
        l2 = eigen[2];
      }
      if (l0 == l1 || l0 == l2 || l1 == l2)
        throw PreconditionFailed("weyl_of_petrov_type: type I needs distinct eigenvalues");
      q(0, 0) = l0;
      q(1, 1) = l1;
      q(2, 2) = l2;
      break;
    }
  }
  CurvatureTensor<T> w = weyl_from_complex_matrix(space, q);
  PetrovReport<T> check = classify(w);
  if (check.type != type)
    throw Error("weyl_of_petrov_type: constructed tensor classifies differently");
  return w;
}

// ---- Euler characteristic / signature bookkeeping for connected sums ----

// A connected sum expression: each summand is a named model 4-manifold
// (T4, CP2, S4) or a custom closed oriented 4-manifold given by its Euler
// characteristic and signature, written "(chi,sigma)".
struct TopologySummand {
  std::string label;
  long long chi = 0;
  long long sigma = 0;
};

struct TopologyExpr {
  std::vector<TopologySummand> summands;
};

inline TopologyExpr parse_topology_expr(const std::string& text) {
  TopologyExpr expr;
  std::string cur;
  auto flush = [&]() {
    std::string t;
    for (char c : cur)
      if (c != ' ' && c != '\t') t += c;
    cur.clear();
    if (t.empty()) throw ParseError("topology expression: empty summand");
    if (t == "T4")
      expr.summands.push_back({t, 0, 0});
    else if (t == "CP2")
      expr.summands.push_back({t, 3, 1});
    else if (t == "S4")
      expr.summands.push_back({t, 2, 0});
    else if (t.size() >= 5 && t.front() == '(' && t.back() == ')') {
      std::size_t comma = t.find(',');
      if (comma == std::string::npos)
        throw ParseError("topology expression: expected '(chi,sigma)' in '" + t + "'");
      long long chi, sigma;
      try {
        std::size_t used = 0;
        chi = std::stoll(t.substr(1, comma - 1), &used);
        if (used != comma - 1) throw std::invalid_argument("");
        std::string rest = t.substr(comma + 1, t.size() - comma - 2);
        sigma = std::stoll(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("topology expression: bad integers in '" + t + "'");
      }
      expr.summands.push_back({t, chi, sigma});
    } else {
      throw ParseError("topology expression: unknown summand '" + t + "'");
    }
  };
  for (char c : text) {
    if (c == '#')
      flush();
    else
      cur += c;
  }
  flush();
  return expr;
}

struct TopologyReport {
  long long chi = 0;
  long long sigma = 0;
  long long p1_integral = 0;         // 3 sigma
  bool lorentz_metric_exists = false;  // closed 4-manifold: chi == 0
  bool parity_obstructed = false;      // sigma != 0 forbids a global parity
};

// Euler characteristic and signature of the expression, folding the
// connected sum identities chi(A # B) = chi(A) + chi(B) - 2 and
// sigma(A # B) = sigma(A) + sigma(B) left to right.
inline TopologyReport chi_sigma(const TopologyExpr& expr) {
  if (expr.summands.empty()) throw PreconditionFailed("chi_sigma: empty expression");
  TopologyReport r;
  bool first = true;
  for (const auto& s : expr.summands) {
    if (first) {
      r.chi = s.chi;
      r.sigma = s.sigma;
      first = false;
    } else {
      r.chi += s.chi - 2;
      r.sigma += s.sigma;
    }
  }
  r.p1_integral = 3 * r.sigma;
  r.lorentz_metric_exists = (r.chi == 0);
  r.parity_obstructed = (r.sigma != 0);
  return r;
}

}  // namespace curvcert
