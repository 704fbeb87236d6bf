#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "curvcert/exterior.hpp"
#include "curvcert/generators.hpp"

using namespace curvcert;
using R = Rational;

namespace {

KVector<R> vec(const ScalarSpace& space, const std::vector<R>& coords) {
  KVector<R> v(space, 1);
  v.coeffs = coords;
  return v;
}

std::vector<R> random_coords(Rng& rng, int n) {
  std::vector<R> c(n);
  for (int i = 0; i < n; ++i) c[i] = random_scalar<R>(rng);
  return c;
}

R metric(const ScalarSpace& space, const std::vector<R>& a, const std::vector<R>& b) {
  R acc{};
  for (int i = 0; i < space.dim(); ++i) {
    R term = a[i] * b[i];
    if (space.sign(i) < 0)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

}  // namespace

TEST_CASE("wedge is graded-antisymmetric and associative") {
  ScalarSpace space = ScalarSpace::euclidean(5);
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    KVector<R> a = vec(space, random_coords(rng, 5));
    KVector<R> b = vec(space, random_coords(rng, 5));
    KVector<R> c = vec(space, random_coords(rng, 5));
    CHECK(wedge(a, b).coeffs == (R(-1) * wedge(b, a)).coeffs);
    CHECK(wedge(wedge(a, b), c).coeffs == wedge(a, wedge(b, c)).coeffs);
    CHECK(wedge(a, a).is_zero());
    // Bilinearity over a random scalar.
    R s = random_scalar<R>(rng);
    CHECK(wedge(s * a, b).coeffs == (s * wedge(a, b)).coeffs);
  }
}

TEST_CASE("wedge of linearly dependent vectors vanishes") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Rng rng(3);
  KVector<R> a = vec(space, random_coords(rng, 4));
  KVector<R> b = vec(space, random_coords(rng, 4));
  KVector<R> ab = wedge(a, b);
  KVector<R> combo = R(2) * a + R(-3) * b;
  CHECK(wedge(ab, combo).is_zero());
}

TEST_CASE("induced inner product equals the Gram determinant") {
  // <u1 ^ .. ^ uk, v1 ^ .. ^ vk> = det[ g(ui, vj) ].
  for (auto space : {ScalarSpace::euclidean(5), ScalarSpace::minkowski(5)}) {
    Rng rng(29);
    for (int k = 1; k <= 3; ++k) {
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<std::vector<R>> u, v;
        KVector<R> wu(space, 0), wv(space, 0);
        wu.coeffs[0] = R(1);
        wv.coeffs[0] = R(1);
        for (int i = 0; i < k; ++i) {
          u.push_back(random_coords(rng, 5));
          v.push_back(random_coords(rng, 5));
          wu = (i == 0) ? vec(space, u[0]) : wedge(wu, vec(space, u[i]));
          wv = (i == 0) ? vec(space, v[0]) : wedge(wv, vec(space, v[i]));
        }
        Mat<R> gram(k, k);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) gram(i, j) = metric(space, u[i], v[j]);
        CHECK(induced_inner(wu, wv) == det(gram));
      }
    }
  }
}

TEST_CASE("basis 2-vectors are orthogonal with product of signs") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  const SubsetTable& tab = space.table();
  for (long long r = 0; r < tab.count(2); ++r)
    for (long long s = 0; s < tab.count(2); ++s) {
      R got = induced_inner(basis_kvector<R>(space, 2, r), basis_kvector<R>(space, 2, s));
      if (r != s) {
        CHECK(got == R(0));
      } else {
        CHECK(got == R(space.subset_sign(tab.mask(2, r))));
      }
    }
}

TEST_CASE("star on 2-vectors in dimension 4") {
  // Convention pin: on (-,+,+,+) with positive orientation, *(e0^e1) = e2^e3.
  ScalarSpace space = ScalarSpace::minkowski(4);
  KVector<R> e01 = wedge(basis_kvector<R>(space, 1, 0), basis_kvector<R>(space, 1, 1));
  KVector<R> e23 = wedge(basis_kvector<R>(space, 1, 2), basis_kvector<R>(space, 1, 3));
  CHECK(hodge_star(e01).coeffs == e23.coeffs);

  // Orientation reversal flips the star.
  ScalarSpace flipped(4, {-1, 1, 1, 1}, -1);
  KVector<R> f01 = wedge(basis_kvector<R>(flipped, 1, 0), basis_kvector<R>(flipped, 1, 1));
  CHECK(hodge_star(f01).coeffs == (R(-1) * e23).coeffs);

  for (int t = 0; t < 4; ++t) {
    std::vector<int> signs(4, 1);
    signs[t] = -1;
    for (int orient : {1, -1}) {
      ScalarSpace sp(4, signs, orient);
      ExtOperator<R> star = hodge_star_operator<R>(sp);
      CHECK(is_self_adjoint(star));
      ExtOperator<R> sq = compose(star, star);
      ExtOperator<R> minus_id = identity_operator<R>(sp, 2);
      for (int i = 0; i < 6; ++i) minus_id.mat(i, i) = R(-1);
      CHECK(sq == minus_id);
    }
  }
}

TEST_CASE("star rejects wrong signatures and degrees") {
  CHECK_THROWS_AS(hodge_star_operator<R>(ScalarSpace::euclidean(4)), SignatureError);
  CHECK_THROWS_AS(hodge_star_operator<R>(ScalarSpace::minkowski(5)), SignatureError);
  KVector<R> v(ScalarSpace::minkowski(4), 1);
  CHECK_THROWS_AS(hodge_star(v), DimensionError);
}

TEST_CASE("isometries: reflection matrices and exterior powers") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Rng rng(5);
  std::vector<R> u = random_nonnull_vector<R>(space, 99);
  Isometry<R> theta = reflection(space, u);
  CHECK(theta.det_sign == -1);

  // Involution on vectors, metric preserved.
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<R> x = random_coords(rng, 4), y = random_coords(rng, 4);
    CHECK(curvcert::apply(theta, curvcert::apply(theta, x)) == x);
    CHECK(metric(space, curvcert::apply(theta, x), curvcert::apply(theta, y)) == metric(space, x, y));
  }

  // Exterior power is multiplicative on wedges.
  ExtOperator<R> lam2 = ext_power_map(theta, 2);
  std::vector<R> x = random_coords(rng, 4), y = random_coords(rng, 4);
  KVector<R> lhs = apply(lam2, wedge(vec(space, x), vec(space, y)));
  KVector<R> rhs = wedge(vec(space, curvcert::apply(theta, x)), vec(space, curvcert::apply(theta, y)));
  CHECK(lhs.coeffs == rhs.coeffs);

  // Top power is multiplication by the determinant sign.
  ExtOperator<R> lam4 = ext_power_map(theta, 4);
  CHECK(lam4.mat(0, 0) == R(theta.det_sign));
}

TEST_CASE("pullback of a form pairs with the pushed-forward vector") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Rng rng(11);
  Isometry<R> theta = random_signed_permutation<R>(space, 123, -1);
  for (int k : {1, 2, 3}) {
    KForm<R> phi(space, k);
    for (auto& c : phi.coeffs) c = random_scalar<R>(rng);
    KVector<R> v(space, k);
    for (auto& c : v.coeffs) c = random_scalar<R>(rng);
    KVector<R> tv = apply(ext_power_map(theta, k), v);
    CHECK(natural_pairing(pullback_form(theta, phi), v) == natural_pairing(phi, tv));
  }
}

TEST_CASE("make_isometry validates its matrix") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Mat<R> not_iso(4, 4);
  for (int i = 0; i < 4; ++i) not_iso(i, i) = R(2);
  CHECK_THROWS_AS(make_isometry(space, not_iso), PreconditionFailed);
}
