#pragma once

// Petrov classification of Weyl-type curvature tensors on a 4-dimensional
// Lorentz space with signature (-,+,+,+). The Hodge star squares to -1 on
// 2-vectors and turns them into a complex 3-space; a trace-free curvature
// operator commuting with the star becomes a complex symmetric trace-free
// 3 x 3 matrix Q, and the type is the Segre/Jordan structure of Q.
//
// In rational mode eigenvalues are found exactly over Q(i) by a divisor
// search on the characteristic cubic; when the cubic does not split the
// classification falls back to the float path (Cardano plus clustered
// multiplicities and singular-value ranks).

#include <algorithm>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "curvcert/curvature.hpp"
#include "curvcert/pontryagin.hpp"

namespace curvcert {

enum class PetrovType { O, N, III, D, II, I };

inline const char* to_string(PetrovType t) {
  switch (t) {
    case PetrovType::O: return "O";
    case PetrovType::N: return "N";
    case PetrovType::III: return "III";
    case PetrovType::D: return "D";
    case PetrovType::II: return "II";
    case PetrovType::I: return "I";
  }
  return "?";
}

inline PetrovType petrov_type_from_string(const std::string& s) {
  if (s == "O") return PetrovType::O;
  if (s == "N") return PetrovType::N;
  if (s == "III") return PetrovType::III;
  if (s == "D") return PetrovType::D;
  if (s == "II") return PetrovType::II;
  if (s == "I") return PetrovType::I;
  throw ParseError("unknown Petrov type '" + s + "'");
}

enum class SpectrumKind { allReal, allImaginary, generic };

inline const char* to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::allReal: return "allReal";
    case SpectrumKind::allImaginary: return "allImaginary";
    case SpectrumKind::generic: return "generic";
  }
  return "?";
}

struct JordanBlock {
  Complex<double> value;
  int size = 1;
};

template <class T>
struct PetrovReport {
  PetrovType type = PetrovType::O;
  // Eigenvalues with multiplicity, sorted by (re, im); always available as
  // floating approximations for display.
  std::array<Complex<double>, 3> eigenvalues{};
  // Exact eigenvalues when the characteristic cubic splits over Q(i).
  std::optional<std::array<Complex<T>, 3>> exact_eigenvalues;
  SpectrumKind spectrum = SpectrumKind::allReal;
  bool all_real = true;        // every eigenvalue purely real
  bool all_imaginary = true;   // every eigenvalue purely imaginary (0 counts)
  std::vector<JordanBlock> jordan;
  bool used_float_fallback = false;
};

namespace detail {

// ---- basis change between increasing pairs and the complex basis ----

// Columns of the change matrix: b_1, b_2, b_3, *b_1, *b_2, *b_3 with
// b_i = e_0 ^ e_i, expressed on the increasing pair basis.
template <class T>
Mat<T> complex_basis_matrix(const ScalarSpace& space) {
  Mat<T> p(6, 6);
  const SubsetTable& tab = space.table();
  for (int i = 1; i <= 3; ++i) {
    KVector<T> b = basis_kvector<T>(space, 2, tab.rank(mask_of({0, i})));
    KVector<T> sb = hodge_star(b);
    for (int r = 0; r < 6; ++r) {
      p(r, i - 1) = b.coeffs[r];
      p(r, i + 2) = sb.coeffs[r];
    }
  }
  return p;
}

// ---- exact square roots in Q and Q(i) ----

inline std::optional<BigInt> sqrt_integer(const BigInt& x) {
  if (x < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(x);
  if (r * r == x) return r;
  return std::nullopt;
}

inline std::optional<Rational> sqrt_rational(const Rational& x) {
  if (x < 0) return std::nullopt;
  auto n = sqrt_integer(BigInt(boost::multiprecision::numerator(x)));
  if (!n) return std::nullopt;
  auto d = sqrt_integer(BigInt(boost::multiprecision::denominator(x)));
  if (!d) return std::nullopt;
  return Rational(*n) / Rational(*d);
}

// Square root of a + bi in Q(i), when it exists there.
inline std::optional<Complex<Rational>> sqrt_gaussian(const Complex<Rational>& z) {
  const Rational &a = z.re, &b = z.im;
  if (b == 0) {
    if (a >= 0) {
      auto r = sqrt_rational(a);
      if (!r) return std::nullopt;
      return Complex<Rational>(*r, Rational(0));
    }
    auto r = sqrt_rational(Rational(-a));
    if (!r) return std::nullopt;
    return Complex<Rational>(Rational(0), *r);
  }
  // (x + iy)^2 = a + ib needs x^2 = (a + r)/2 with r = sqrt(a^2 + b^2).
  auto r = sqrt_rational(a * a + b * b);
  if (!r) return std::nullopt;
  auto x = sqrt_rational((a + *r) / 2);
  if (!x || *x == 0) return std::nullopt;
  Rational y = b / (2 * *x);
  return Complex<Rational>(*x, y);
}

// ---- rational root search for the depressed cubic over Q(i) ----

// All Gaussian integers x + iy with x^2 + y^2 = n, x >= 0.
inline std::vector<Complex<Rational>> gaussian_with_norm(const BigInt& n) {
  std::vector<Complex<Rational>> out;
  for (BigInt x = 0; x * x <= n; ++x) {
    auto y = sqrt_integer(BigInt(n - x * x));
    if (!y) continue;
    out.emplace_back(Rational(x), Rational(*y));
    if (*y != 0) out.emplace_back(Rational(x), Rational(-*y));
  }
  return out;
}

struct CubicRoots {
  bool split = false;
  std::array<Complex<Rational>, 3> roots;
};

// Roots of z^3 + p z + q over Q(i), exact. Returns split = false when the
// cubic has no full factorization there (or the divisor search would be
// unreasonably large, which cannot happen for the bounded inputs the
// generators produce).
inline CubicRoots solve_depressed_cubic_exact(const Complex<Rational>& p,
                                              const Complex<Rational>& q) {
  CubicRoots out;
  const auto eval = [&](const Complex<Rational>& z) {
    return z * z * z + p * z + q;
  };
  std::optional<Complex<Rational>> first;
  if (scalar_traits<Complex<Rational>>::is_zero(q)) {
    first = Complex<Rational>(Rational(0), Rational(0));
  } else {
    // Clear denominators: z = w / m turns the cubic into
    // w^3 + (p m^2) w + (q m^3) with Gaussian integer coefficients, so any
    // root in Q(i) is a Gaussian integer dividing the constant term; its
    // norm divides N(q m^3).
    BigInt m = 1;
    for (const Rational& r : {p.re, p.im, q.re, q.im}) {
      BigInt d(boost::multiprecision::denominator(r));
      m = boost::multiprecision::lcm(m, d);
    }
    const Rational mq(m);
    Complex<Rational> qq = q * Complex<Rational>(mq * mq * mq);
    BigInt nq = BigInt(boost::multiprecision::numerator(norm_sq(qq)));
    // Enumerate divisors of N(Q) by factoring; give up past the trial bound
    // and report the cubic as unsplit (the float path takes over).
    BigInt rest = nq;
    std::vector<std::pair<BigInt, int>> factors;
    for (BigInt f = 2; f * f <= rest && f < 2000000; ++f) {
      if (rest % f != 0) continue;
      int e = 0;
      while (rest % f == 0) {
        rest /= f;
        ++e;
      }
      factors.emplace_back(f, e);
    }
    if (rest > 1) {
      if (rest > BigInt(4000000000000LL)) return out;  // unfactored residue too big
      factors.emplace_back(rest, 1);
    }
    std::vector<BigInt> divisors{1};
    for (auto& [f, e] : factors) {
      std::size_t sz = divisors.size();
      BigInt fe = 1;
      for (int i = 0; i < e; ++i) {
        fe *= f;
        for (std::size_t j = 0; j < sz; ++j) divisors.push_back(divisors[j] * fe);
      }
      if (divisors.size() > 100000) return out;
    }
    // Any root w of the integralized cubic obeys the coefficient bound
    // |w| <= 1 + max(|P|, |Q|), so divisors with larger norm are skipped.
    Complex<Rational> pp = p * Complex<Rational>(mq * mq);
    double bound = 1.0 + std::sqrt(std::max(
                             scalar_traits<Rational>::to_double(norm_sq(pp)),
                             scalar_traits<Rational>::to_double(norm_sq(qq))));
    BigInt norm_bound =
        bound * bound >= 4e12 ? BigInt(4000000000000LL) : BigInt(bound * bound + 1);
    std::sort(divisors.begin(), divisors.end());
    long long budget = 5000000;  // bound on sqrt probes across all divisors
    for (const BigInt& d : divisors) {
      if (d > norm_bound) break;
      budget -= 1 + static_cast<long long>(
                        std::sqrt(scalar_traits<Rational>::to_double(Rational(d))));
      if (budget < 0) return out;
      for (const Complex<Rational>& w : gaussian_with_norm(d)) {
        for (const Complex<Rational>& cand :
             {w, Complex<Rational>(Rational(-w.re), w.im)}) {
          Complex<Rational> z = cand / Complex<Rational>(mq);
          if (scalar_traits<Complex<Rational>>::is_zero(eval(z))) {
            first = z;
            break;
          }
        }
        if (first) break;
      }
      if (first) break;
    }
    if (!first) return out;
  }
  // Deflate: z^3 + p z + q = (z - r)(z^2 + r z + (r^2 + p)).
  const Complex<Rational> r = *first;
  const Complex<Rational> b = r;                    // quadratic z^2 + b z + c
  const Complex<Rational> c = r * r + p;
  // Discriminant b^2 - 4c must be a square in Q(i) for a full split.
  Complex<Rational> disc = b * b - Complex<Rational>(Rational(4)) * c;
  auto s = sqrt_gaussian(disc);
  if (!s) {
    if (scalar_traits<Complex<Rational>>::is_zero(disc))
      s = Complex<Rational>(Rational(0), Rational(0));
    else
      return out;
  }
  const Complex<Rational> half(Rational(1) / 2);
  out.split = true;
  out.roots[0] = r;
  out.roots[1] = (-b + *s) * half;
  out.roots[2] = (-b - *s) * half;
  return out;
}

// ---- float path: Cardano + one-sided Jacobi singular values ----

inline std::array<std::complex<double>, 3> solve_depressed_cubic_float(
    std::complex<double> p, std::complex<double> q) {
  using C = std::complex<double>;
  std::array<C, 3> roots;
  if (std::abs(p) == 0.0 && std::abs(q) == 0.0) {
    roots.fill(C(0, 0));
    return roots;
  }
  C half_q = q / 2.0;
  C delta = half_q * half_q + (p / 3.0) * (p / 3.0) * (p / 3.0);
  C sq = std::sqrt(delta);
  // Pick the branch avoiding cancellation in -q/2 +- sqrt(delta).
  C u3 = (std::abs(-half_q + sq) >= std::abs(-half_q - sq)) ? (-half_q + sq)
                                                            : (-half_q - sq);
  C u = std::pow(u3, 1.0 / 3.0);
  const C omega(-0.5, std::sqrt(3.0) / 2.0);
  if (std::abs(u) == 0.0) {
    C r = std::pow(-q, 1.0 / 3.0);
    roots = {r, r * omega, r * omega * omega};
    return roots;
  }
  C v = -p / (3.0 * u);
  for (int j = 0; j < 3; ++j) {
    C w = (j == 0) ? C(1, 0) : (j == 1 ? omega : omega * omega);
    roots[j] = w * u + v / w;
  }
  return roots;
}

// Singular values of a small complex matrix by one-sided Jacobi.
inline std::vector<double> singular_values(std::vector<std::vector<std::complex<double>>> a) {
  using C = std::complex<double>;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  auto col_dot = [&](int p, int q) {
    C acc(0, 0);
    for (int r = 0; r < rows; ++r) acc += std::conj(a[r][p]) * a[r][q];
    return acc;
  };
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int p = 0; p < cols; ++p)
      for (int q = p + 1; q < cols; ++q) {
        C gpq = col_dot(p, q);
        double app = col_dot(p, p).real(), aqq = col_dot(q, q).real();
        double g = std::abs(gpq);
        off = std::max(off, g);
        if (g <= 1e-300 || g * g <= 1e-30 * app * aqq) continue;
        C phase = gpq / g;
        double tau = (aqq - app) / (2 * g);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1 / std::sqrt(1 + t * t), s = c * t;
        for (int r = 0; r < rows; ++r) {
          C u = a[r][p], v = a[r][q] * std::conj(phase);
          a[r][p] = c * u - s * v;
          a[r][q] = (s * u + c * v) * phase;
        }
      }
    if (off < 1e-30) break;
  }
  std::vector<double> sv(cols);
  for (int p = 0; p < cols; ++p) sv[p] = std::sqrt(col_dot(p, p).real());
  std::sort(sv.rbegin(), sv.rend());
  return sv;
}

template <class T>
double approx(const T& x) {
  return scalar_traits<T>::to_double(x);
}

}  // namespace detail

// The complex symmetric trace-free matrix of a Weyl operator on the basis
// b_i = e_0 ^ e_i. Checks: signature (-,+,+,+) in that order, vanishing
// Ricci trace, commutation with the Hodge star, and symmetry of the result.
template <class T>
Mat<Complex<T>> complexify_weyl(const CurvatureTensor<T>& w,
                                const T& tolerance = scalar_traits<T>::default_tolerance()) {
  const ScalarSpace& space = w.space();
  if (space.dim() != 4 || space.sign(0) != -1 || space.sign(1) != 1 ||
      space.sign(2) != 1 || space.sign(3) != 1)
    throw SignatureError("complexify_weyl: signature must be (-,+,+,+) in this order");
  // Trace-free check.
  SymBilinear<T> ric = trace14(w);
  T scale(1);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      T s = scalar_traits<T>::abs(w.pair_matrix()(i, j));
      if (s > scale) scale = s;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool bad;
      if constexpr (scalar_traits<T>::exact)
        bad = !scalar_traits<T>::is_zero(ric.mat(i, j));
      else
        bad = scalar_traits<T>::abs(ric.mat(i, j)) > tolerance * scale;
      if (bad) throw NotWeylError("complexify_weyl: tensor has a nonzero Ricci trace");
    }
  Mat<T> p = detail::complex_basis_matrix<T>(space);
  Mat<T> pinv = inverse(p);
  Mat<T> op = pinv * curvature_operator(w).mat * p;
  // Block structure [[X, -Y], [Y, X]] on (b, *b); deviations mean the
  // operator fails to commute with the star.
  const auto near_zero = [&](const T& x) {
    if constexpr (scalar_traits<T>::exact)
      return scalar_traits<T>::is_zero(x);
    else
      return scalar_traits<T>::abs(x) <= tolerance * scale;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (!near_zero(op(i, j) - op(i + 3, j + 3)) ||
          !near_zero(op(i, j + 3) + op(i + 3, j)))
        throw StarCommutationError(
            "complexify_weyl: operator does not commute with the Hodge star");
    }
  Mat<Complex<T>> q(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) q(i, j) = Complex<T>(op(i, j), op(i + 3, j));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!near_zero(q(i, j).re - q(j, i).re) || !near_zero(q(i, j).im - q(j, i).im))
        throw NotWeylError("complexify_weyl: complexified matrix is not symmetric");
  return q;
}

// Inverse construction: the Weyl-type tensor whose complexification is Q.
// Q must be symmetric and trace-free; the result is validated on the way
// back through the curvature constructor.
template <class T>
CurvatureTensor<T> weyl_from_complex_matrix(const ScalarSpace& space,
                                            const Mat<Complex<T>>& q) {
  if (q.rows() != 3 || q.cols() != 3)
    throw DimensionError("weyl_from_complex_matrix: matrix must be 3 x 3");
  if (!q.is_symmetric())
    throw PreconditionFailed("weyl_from_complex_matrix: matrix must be symmetric");
  Complex<T> tr = trace(q);
  if (!scalar_traits<Complex<T>>::is_zero(tr))
    throw NotWeylError("weyl_from_complex_matrix: matrix must be trace-free");
  Mat<T> block(6, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      block(i, j) = q(i, j).re;
      block(i + 3, j + 3) = q(i, j).re;
      block(i, j + 3) = T(-q(i, j).im);
      block(i + 3, j) = q(i, j).im;
    }
  Mat<T> p = detail::complex_basis_matrix<T>(space);
  Mat<T> op = p * block * inverse(p);
  ExtOperator<T> ext(space, 2);
  ext.mat = std::move(op);
  return curvature_from_operator(ext);
}

namespace detail {

// Jordan block sizes over one eigenvalue of a 3x3 matrix from its algebraic
// multiplicity and the rank of (Q - lambda I).
inline std::vector<int> jordan_sizes(int multiplicity, int rank) {
  const int geometric = 3 - rank;
  if (multiplicity == 1) return {1};
  if (multiplicity == 2) return geometric == 2 ? std::vector<int>{1, 1} : std::vector<int>{2};
  // multiplicity == 3
  if (geometric == 3) return {1, 1, 1};
  if (geometric == 2) return {2, 1};
  return {3};
}

inline PetrovType type_from_jordan(int distinct,
                                   const std::vector<std::vector<int>>& sizes) {
  if (distinct == 3) return PetrovType::I;
  if (distinct == 2) {
    // One eigenvalue is double; its block list decides D vs II.
    for (const auto& s : sizes)
      if (s.size() == 2 || (s.size() == 1 && s[0] == 2))
        return s.size() == 2 ? PetrovType::D : PetrovType::II;
    throw Error("type_from_jordan: inconsistent block data");
  }
  // Single eigenvalue, necessarily zero.
  const auto& s = sizes[0];
  if (s.size() == 3) return PetrovType::O;
  if (s.size() == 2) return PetrovType::N;
  return PetrovType::III;
}

}  // namespace detail

// Classify a Weyl-type tensor. The tolerance only matters on the float path
// (eigenvalue clustering and rank thresholds); pairwise eigenvalue gaps in
// the ambiguous band (tol, 10 tol) abort with IndeterminateClassification.
template <class T>
PetrovReport<T> classify(const CurvatureTensor<T>& w, double tolerance = 1e-9) {
  Mat<Complex<T>> q = complexify_weyl(w);
  PetrovReport<T> report;

  // Characteristic cubic z^3 + p z + q0 (the quadratic term vanishes with
  // the trace).
  Complex<T> p2 = Complex<T>(T{});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) p2 += q(i, i) * q(j, j) - q(i, j) * q(j, i);
  Complex<T> dq = q(0, 0) * (q(1, 1) * q(2, 2) - q(1, 2) * q(2, 1)) -
                  q(0, 1) * (q(1, 0) * q(2, 2) - q(1, 2) * q(2, 0)) +
                  q(0, 2) * (q(1, 0) * q(2, 1) - q(1, 1) * q(2, 0));
  Complex<T> q0 = -dq;

  if constexpr (scalar_traits<T>::exact) {
    detail::CubicRoots roots = detail::solve_depressed_cubic_exact(
        Complex<Rational>(p2.re, p2.im), Complex<Rational>(q0.re, q0.im));
    if (roots.split) {
      std::array<Complex<T>, 3> ev = {Complex<T>(roots.roots[0].re, roots.roots[0].im),
                                      Complex<T>(roots.roots[1].re, roots.roots[1].im),
                                      Complex<T>(roots.roots[2].re, roots.roots[2].im)};
      std::sort(ev.begin(), ev.end(), [](const Complex<T>& a, const Complex<T>& b) {
        return a.re < b.re || (a.re == b.re && a.im < b.im);
      });
      report.exact_eigenvalues = ev;
      for (int i = 0; i < 3; ++i)
        report.eigenvalues[i] =
            Complex<double>(detail::approx(ev[i].re), detail::approx(ev[i].im));
      report.all_real = true;
      report.all_imaginary = true;
      for (const auto& e : ev) {
        if (!scalar_traits<T>::is_zero(e.im)) report.all_real = false;
        if (!scalar_traits<T>::is_zero(e.re)) report.all_imaginary = false;
      }
      // Distinct values with multiplicities, then ranks where needed.
      std::vector<std::pair<Complex<T>, int>> distinct;
      for (const auto& e : ev) {
        bool found = false;
        for (auto& d : distinct)
          if (d.first == e) {
            ++d.second;
            found = true;
          }
        if (!found) distinct.emplace_back(e, 1);
      }
      std::vector<std::vector<int>> sizes;
      for (auto& [value, mult] : distinct) {
        int r;
        if (mult == 1) {
          r = 2;  // simple eigenvalue: rank is forced, no elimination needed
        } else {
          Mat<Complex<T>> shifted = q;
          for (int i = 0; i < 3; ++i) shifted(i, i) = shifted(i, i) - value;
          r = rank(shifted);
        }
        auto s = detail::jordan_sizes(mult, r);
        sizes.push_back(s);
        for (int sz : s)
          report.jordan.push_back(JordanBlock{
              Complex<double>(detail::approx(value.re), detail::approx(value.im)), sz});
      }
      report.type = detail::type_from_jordan(static_cast<int>(distinct.size()), sizes);
      report.spectrum = report.all_real ? SpectrumKind::allReal
                        : report.all_imaginary ? SpectrumKind::allImaginary
                                               : SpectrumKind::generic;
      return report;
    }
    report.used_float_fallback = true;
  }

  // Float path.
  using C = std::complex<double>;
  C pf(detail::approx(p2.re), detail::approx(p2.im));
  C qf(detail::approx(q0.re), detail::approx(q0.im));
  std::array<C, 3> ev = detail::solve_depressed_cubic_float(pf, qf);
  std::sort(ev.begin(), ev.end(), [](const C& a, const C& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  double escale = 0.0;
  for (const auto& e : ev) escale = std::max(escale, std::abs(e));
  // Cluster by pairwise gaps; gaps inside (tol, 10 tol) are too close to
  // call either way.
  int cluster_of[3] = {0, 1, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double gap = std::abs(ev[i] - ev[j]);
      if (gap <= tolerance * escale) {
        int a = cluster_of[i], b = cluster_of[j];
        for (int& c : cluster_of)
          if (c == b) c = a;
      } else if (gap < 10 * tolerance * escale) {
        throw IndeterminateClassification(
            "classify: eigenvalue gap within 10x tolerance of the clustering threshold");
      }
    }
  std::vector<std::pair<C, int>> distinct;  // representative (mean), multiplicity
  std::vector<int> reps;
  for (int c = 0; c < 3; ++c) {
    bool seen = false;
    for (int r : reps) seen = seen || (r == cluster_of[c]);
    if (!seen) reps.push_back(cluster_of[c]);
  }
  for (int r : reps) {
    C sum(0, 0);
    int m = 0;
    for (int i = 0; i < 3; ++i)
      if (cluster_of[i] == r) {
        sum += ev[i];
        ++m;
      }
    distinct.emplace_back(sum / static_cast<double>(m), m);
  }
  // Overwrite eigenvalues with cluster means for reporting consistency.
  {
    int pos = 0;
    for (auto& [value, mult] : distinct)
      for (int i = 0; i < mult; ++i) report.eigenvalues[pos++] = Complex<double>(
          value.real(), value.imag());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
              [](const Complex<double>& a, const Complex<double>& b) {
                return a.re < b.re || (a.re == b.re && a.im < b.im);
              });
  }
  report.all_real = true;
  report.all_imaginary = true;
  for (auto& [value, mult] : distinct) {
    if (std::abs(value.imag()) > tolerance * escale) report.all_real = false;
    if (std::abs(value.real()) > tolerance * escale) report.all_imaginary = false;
  }
  // Matrix as std::complex for the rank decisions.
  std::vector<std::vector<C>> qm(3, std::vector<C>(3));
  double qscale = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      qm[i][j] = C(detail::approx(q(i, j).re), detail::approx(q(i, j).im));
      qscale = std::max(qscale, std::abs(qm[i][j]));
    }
  std::vector<std::vector<int>> sizes;
  for (auto& [value, mult] : distinct) {
    int r;
    if (mult == 1) {
      r = 2;
    } else {
      auto shifted = qm;
      for (int i = 0; i < 3; ++i) shifted[i][i] -= value;
      std::vector<double> sv = detail::singular_values(shifted);
      r = 0;
      for (double s : sv)
        if (s > tolerance * qscale) ++r;
    }
    auto s = detail::jordan_sizes(mult, r);
    sizes.push_back(s);
    for (int sz : s)
      report.jordan.push_back(
          JordanBlock{Complex<double>(value.real(), value.imag()), sz});
  }
  report.type = detail::type_from_jordan(static_cast<int>(distinct.size()), sizes);
  report.spectrum = report.all_real ? SpectrumKind::allReal
                    : report.all_imaginary ? SpectrumKind::allImaginary
                                           : SpectrumKind::generic;
  return report;
}

// Link between spectrum reality and the first Pontryagin form: when the
// spectrum is entirely real or entirely imaginary the 4-form must vanish.
// The converse fails (mixed spectra can cancel), so only the implication is
// certified.
struct SpectrumVanishing {
  bool applicable = false;  // spectrum all real or all imaginary
  bool p1_zero = false;
  bool consistent = true;   // applicable implies p1_zero
};

template <class T>
SpectrumVanishing pontryagin_vanishing_for_type(const PetrovReport<T>& report,
                                                const CurvatureTensor<T>& w,
                                                double tolerance = 1e-9) {
  SpectrumVanishing out;
  out.applicable = report.all_real || report.all_imaginary;
  PontryaginForm<T> p1 = pontryagin_form_op(w, 1);
  if constexpr (scalar_traits<T>::exact) {
    out.p1_zero = p1.is_zero();
  } else {
    T scale(1);
    for (int i = 0; i < w.pair_matrix().rows(); ++i)
      for (int j = 0; j < w.pair_matrix().cols(); ++j) {
        T s = scalar_traits<T>::abs(w.pair_matrix()(i, j));
        if (s > scale) scale = s;
      }
    out.p1_zero = true;
    for (const T& c : p1.reduced.coeffs)
      if (scalar_traits<T>::abs(c) > T(tolerance) * scale * scale) out.p1_zero = false;
  }
  out.consistent = !out.applicable || out.p1_zero;
  return out;
}

}  // namespace curvcert
