#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "curvcert/generators.hpp"
#include "curvcert/pontryagin.hpp"
#include "curvcert/symmetry.hpp"

using namespace curvcert;
using R = Rational;

namespace {

std::vector<R> axis(std::initializer_list<int> entries) {
  std::vector<R> u;
  for (int e : entries) u.emplace_back(e);
  return u;
}

}  // namespace

TEST_CASE("reflection: involution with determinant -1, null axes rejected") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Isometry<R> theta = reflection(space, axis({2, 1, 0, 0}));  // timelike, skew
  CHECK(theta.det_sign == -1);
  CHECK(theta.mat * theta.mat == identity_operator<R>(space, 1).mat);
  CHECK_THROWS_AS(reflection(space, axis({1, 1, 0, 0})), NullVectorError);
  CHECK_THROWS_AS(reflection(space, axis({0, 0, 0, 0})), NullVectorError);
}

TEST_CASE("pullback respects composition and fixes invariant tensors") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  CurvatureTensor<R> c = random_curvature<R>(space, 5);
  Isometry<R> theta = reflection(space, axis({1, 0, 0, 0}));
  CHECK(pullback(theta, pullback(theta, c)) == c);
  // Constant curvature is isotropic: every isometry fixes it.
  CurvatureTensor<R> round = constant_curvature(space, R(3) / R(7));
  CHECK(pullback(theta, round) == round);
  CHECK(pullback(random_signed_permutation<R>(space, 9, 1), round) == round);
}

TEST_CASE("parity split: projections, round trip, and definiteness") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  CurvatureTensor<R> c = random_curvature<R>(space, 15);
  Isometry<R> theta = reflection(space, axis({1, 0, 0, 0}));
  ParitySplit<R> split = parity_split(c, theta);
  CHECK(split.even + split.odd == c);
  CHECK(pullback(theta, split.even) == split.even);
  CHECK(pullback(theta, split.odd) == R(-1) * split.odd);
  CHECK(parity_of(split.even, theta) == std::optional<int>(1));
  CHECK(parity_of(split.odd, theta) == std::optional<int>(-1));
  // A generic tensor has both parts, hence no definite parity.
  REQUIRE_FALSE(split.even.is_zero());
  REQUIRE_FALSE(split.odd.is_zero());
  CHECK_FALSE(parity_of(c, theta).has_value());
}

TEST_CASE("parity evidence: both the pullback and component routes agree") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  std::vector<R> u = axis({1, 0, 0, 0});
  Isometry<R> theta = reflection(space, u);
  CurvatureTensor<R> even = random_parity<R>(space, theta, +1, 71);
  CurvatureTensor<R> odd = random_parity<R>(space, theta, -1, 72);
  REQUIRE_FALSE(even.is_zero());
  REQUIRE_FALSE(odd.is_zero());

  CHECK(parity_even_evidence(even, u).holds());
  CHECK(parity_odd_evidence(odd, u).holds());
  CHECK_FALSE(parity_even_evidence(odd, u).holds());
  CHECK_FALSE(parity_odd_evidence(even, u).holds());
  CHECK(is_parity_even(even, u));
  CHECK(is_parity_odd(odd, u));

  // Also with a skew (non-basis) spacelike axis.
  std::vector<R> v = axis({0, 2, 3, 0});
  Isometry<R> rho = reflection(space, v);
  CurvatureTensor<R> skew_even = random_parity<R>(space, rho, +1, 73);
  REQUIRE_FALSE(skew_even.is_zero());
  CHECK(parity_even_evidence(skew_even, v).holds());
}

TEST_CASE("commutation sign of the operator matches the declared parity") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Isometry<R> theta = reflection(space, axis({1, 0, 0, 0}));
  CurvatureTensor<R> even = random_parity<R>(space, theta, +1, 81);
  CurvatureTensor<R> odd = random_parity<R>(space, theta, -1, 82);
  CHECK(commutation_sign(even, theta) == std::optional<int>(1));
  CHECK(commutation_sign(odd, theta) == std::optional<int>(-1));
  CurvatureTensor<R> generic = random_curvature<R>(space, 83);
  CHECK_FALSE(commutation_sign(generic, theta).has_value());
}

TEST_CASE("parity descends to the Weyl part") {
  for (int n : {4, 5}) {
    ScalarSpace space = ScalarSpace::minkowski(n);
    std::vector<R> u(n);
    u[0] = R(1);
    Isometry<R> theta = reflection(space, u);
    for (int parity : {1, -1}) {
      CurvatureTensor<R> c = random_parity<R>(space, theta, parity, 90 + n + parity);
      REQUIRE_FALSE(c.is_zero());
      CurvatureTensor<R> w = weyl(c);
      if (!w.is_zero()) CHECK(parity_of(w, theta) == std::optional<int>(parity));
    }
  }
}

TEST_CASE("pontryagin forms of definite-parity tensors are fixed by the pullback") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Isometry<R> theta = reflection(space, axis({1, 0, 0, 0}));
  for (int parity : {1, -1}) {
    CurvatureTensor<R> c = random_parity<R>(space, theta, parity, 95 + parity);
    KForm<R> p1 = pontryagin_form_det(c, 1).reduced;
    CHECK(form_fixed_check(p1, theta));
  }
}

TEST_CASE("vanishing certificates: exact zero for definite parity in dimension 4k") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  Isometry<R> theta = reflection(space, axis({1, 0, 0, 0}));
  for (int parity : {1, -1}) {
    CurvatureTensor<R> c = random_parity<R>(space, theta, parity, 100 + parity);
    REQUIRE_FALSE(c.is_zero());
    VanishingCertificate<R> cert = vanishing_certificate(c, theta, {1});
    CHECK(cert.all_zero);
    CHECK(cert.witness == R(0));
    CHECK(cert.dimension == 4);
    CHECK(cert.parity == parity);
    CHECK(cert.alpha == std::vector<int>{1});
    CHECK(cert.two_pi_exponent == 2);
  }
}

TEST_CASE("certificate preconditions are enforced") {
  ScalarSpace space4 = ScalarSpace::minkowski(4);
  Isometry<R> theta4 = reflection(space4, axis({1, 0, 0, 0}));

  // Indefinite parity.
  CurvatureTensor<R> generic = random_curvature<R>(space4, 111);
  CHECK_THROWS_AS(vanishing_certificate(generic, theta4, {1}), PreconditionFailed);

  // Dimension not 4 times the weight.
  ScalarSpace space6 = ScalarSpace::minkowski(6);
  Isometry<R> theta6 = reflection(space6, axis({1, 0, 0, 0, 0, 0}));
  CurvatureTensor<R> even6 = random_parity<R>(space6, theta6, +1, 112);
  CHECK_THROWS_AS(vanishing_certificate(even6, theta6, {1}), PreconditionFailed);

  // Orientation-preserving involution (double reflection) is not admissible.
  Mat<R> dbl(4, 4);
  dbl(0, 0) = R(-1);
  dbl(1, 1) = R(-1);
  dbl(2, 2) = R(1);
  dbl(3, 3) = R(1);
  Isometry<R> rot = make_isometry(space4, dbl);
  REQUIRE(rot.det_sign == 1);
  CurvatureTensor<R> c = random_curvature<R>(space4, 114);
  ParitySplit<R> split = parity_split(c, rot);
  if (!split.even.is_zero())
    CHECK_THROWS_AS(vanishing_certificate(split.even, rot, {1}), PreconditionFailed);

  // Empty partition.
  CurvatureTensor<R> even4 = random_parity<R>(space4, theta4, +1, 115);
  CHECK_THROWS_AS(vanishing_certificate(even4, theta4, {}), PreconditionFailed);
}

TEST_CASE("certificates in dimension 8 cover both partitions of 2") {
  ScalarSpace space = ScalarSpace::minkowski(8);
  std::vector<R> u(8);
  u[0] = R(1);
  Isometry<R> theta = reflection(space, u);
  CurvatureTensor<R> odd = random_parity<R>(space, theta, -1, 120);
  REQUIRE_FALSE(odd.is_zero());
  for (const auto& alpha : std::vector<std::vector<int>>{{2}, {1, 1}}) {
    VanishingCertificate<R> cert = vanishing_certificate(odd, theta, alpha);
    CHECK(cert.all_zero);
    CHECK(cert.two_pi_exponent == 4);
  }
}
