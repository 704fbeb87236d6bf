#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "curvcert/curvature.hpp"
#include "curvcert/generators.hpp"

using namespace curvcert;
using R = Rational;

namespace {

// Quadruple-index oracle for the Kulkarni-Nomizu product. The sign follows
// the operator convention used throughout: g (.) g must map to -2 id under
// the curvature operator (checked independently below), which is the
// negative of the textbook orientation.
R kn_oracle(const SymBilinear<R>& h, const SymBilinear<R>& k, int x, int y, int z, int w) {
  auto H = [&](int a, int b) { return h.mat(a, b); };
  auto K = [&](int a, int b) { return k.mat(a, b); };
  return H(x, w) * K(y, z) + H(y, z) * K(x, w) - H(x, z) * K(y, w) - H(y, w) * K(x, z);
}

SymBilinear<R> random_sym(const ScalarSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  SymBilinear<R> h = SymBilinear<R>::zero(space);
  for (int i = 0; i < space.dim(); ++i)
    for (int j = i; j < space.dim(); ++j) {
      R v = random_scalar<R>(rng);
      h.mat(i, j) = v;
      h.mat(j, i) = v;
    }
  return h;
}

// Ricci oracle: Ric(x,y) = sum_j eps_j C(e_j, x, y, e_j).
R ricci_oracle(const CurvatureTensor<R>& c, int x, int y) {
  R acc{};
  for (int j = 0; j < c.space().dim(); ++j) {
    R term = c.component(j, x, y, j);
    if (c.space().sign(j) < 0)
      acc -= term;
    else
      acc += term;
  }
  return acc;
}

}  // namespace

TEST_CASE("component constructor fills in the pair symmetries") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  std::vector<ComponentEntry<R>> entries = {{0, 1, 2, 3, R(5)}, {0, 2, 0, 2, R(-1)},
                                            {0, 3, 1, 3, R(7)}, {1, 2, 1, 2, R(2)},
                                            {0, 1, 0, 1, R(3)}, {1, 3, 1, 3, R(1)},
                                            {2, 3, 2, 3, R(4)}, {0, 2, 1, 3, R(-5)},
                                            {0, 3, 1, 2, R(-10)}};
  // Bianchi on {0,1,2,3}: C(01,23) - C(02,13) + C(03,12) = 5 - (-5) + (-10) = 0.
  CurvatureTensor<R> c = curvature_from_components(space, entries);
  CHECK(c.component(0, 1, 2, 3) == R(5));
  CHECK(c.component(2, 3, 0, 1) == R(5));   // pair exchange
  CHECK(c.component(1, 0, 2, 3) == R(-5));  // antisymmetry in the first pair
  CHECK(c.component(0, 1, 3, 2) == R(-5));  // antisymmetry in the second pair
  CHECK(c.component(1, 0, 3, 2) == R(5));
  CHECK(c.component(0, 0, 2, 3) == R(0));   // repeated slot
}

TEST_CASE("conflicting components and broken Bianchi are rejected") {
  ScalarSpace space = ScalarSpace::euclidean(4);
  CHECK_THROWS_AS(
      curvature_from_components(space, std::vector<ComponentEntry<R>>{{0, 1, 0, 1, R(1)},
                                                                      {1, 0, 0, 1, R(1)}}),
      SymmetryConflict);
  CHECK_THROWS_AS(
      curvature_from_components(space, std::vector<ComponentEntry<R>>{{0, 1, 2, 3, R(1)}}),
      BianchiViolation);
}

TEST_CASE("pair matrix round trip") {
  ScalarSpace space = ScalarSpace::minkowski(5);
  CurvatureTensor<R> c = random_curvature<R>(space, 31);
  CurvatureTensor<R> d = CurvatureTensor<R>::from_pair_matrix(space, c.pair_matrix());
  CHECK(c == d);
  Mat<R> broken = c.pair_matrix();
  broken(0, 1) += R(1);
  CHECK_THROWS_AS(CurvatureTensor<R>::from_pair_matrix(space, broken), SymmetryConflict);
}

TEST_CASE("kulkarni-nomizu matches the quadruple-index formula") {
  for (auto space : {ScalarSpace::euclidean(4), ScalarSpace::minkowski(5)}) {
    SymBilinear<R> h = random_sym(space, 7), k = random_sym(space, 8);
    CurvatureTensor<R> c = kulkarni_nomizu(h, k);
    const int n = space.dim();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          for (int w = 0; w < n; ++w)
            CHECK(c.component(x, y, z, w) == kn_oracle(h, k, x, y, z, w));
  }
}

TEST_CASE("curvature operator of g @ g is minus twice the identity") {
  ScalarSpace space = ScalarSpace::euclidean(4);
  SymBilinear<R> g = metric_form<R>(space);
  ExtOperator<R> op = curvature_operator(kulkarni_nomizu(g, g));
  ExtOperator<R> expect = identity_operator<R>(space, 2);
  for (int i = 0; i < 6; ++i) expect.mat(i, i) = R(-2);
  CHECK(op == expect);
}

TEST_CASE("curvature operator is self-adjoint for the signed inner product") {
  for (auto space : {ScalarSpace::euclidean(5), ScalarSpace::minkowski(4)}) {
    CurvatureTensor<R> c = random_curvature<R>(space, 101);
    CHECK(is_self_adjoint(curvature_operator(c)));
  }
}

TEST_CASE("trace and scalar curvature against the summation oracle") {
  ScalarSpace space = ScalarSpace::minkowski(5);
  CurvatureTensor<R> c = random_curvature<R>(space, 55);
  SymBilinear<R> ric = trace14(c);
  R scal{};
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) CHECK(ric.mat(x, y) == ricci_oracle(c, x, y));
    R diag = ric.mat(x, x);
    if (space.sign(x) < 0)
      scal -= diag;
    else
      scal += diag;
  }
  CHECK(scalar_curvature(c) == scal);
  CHECK(metric_trace(ric) == scal);
}

TEST_CASE("full contraction against the quadruple loop") {
  ScalarSpace space = ScalarSpace::minkowski(4);
  CurvatureTensor<R> a = random_curvature<R>(space, 61);
  CurvatureTensor<R> b = random_curvature<R>(space, 62);
  R acc{};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z)
        for (int w = 0; w < 4; ++w) {
          int eps = space.sign(x) * space.sign(y) * space.sign(z) * space.sign(w);
          R term = a.component(x, y, z, w) * b.component(x, y, z, w);
          acc += R(eps) * term;
        }
  CHECK(full_contraction(a, b) == acc);
}

TEST_CASE("decomposition: traces vanish where they must and the sum rebuilds") {
  for (int n : {3, 4, 5, 6}) {
    ScalarSpace space = n % 2 == 0 ? ScalarSpace::minkowski(n) : ScalarSpace::euclidean(n);
    CurvatureTensor<R> c = random_curvature<R>(space, 200 + n);
    Decomposition<R> dec = decompose(c);
    CHECK(metric_trace(dec.traceless_ricci) == R(0));
    SymBilinear<R> weyl_ric = trace14(dec.weyl_part);
    CHECK(weyl_ric.is_zero());
    SymBilinear<R> g = metric_form<R>(space);
    CurvatureTensor<R> rebuilt =
        dec.weyl_part + (R(1) / R(n - 2)) * kulkarni_nomizu(dec.traceless_ricci, g) +
        (dec.scalar / R(2 * n * (n - 1))) * kulkarni_nomizu(g, g);
    CHECK(rebuilt == c);
    if (n == 3) CHECK(dec.weyl_part.is_zero());
  }
  CHECK_THROWS_AS(decompose(random_curvature<R>(ScalarSpace::euclidean(2), 1)),
                  DimensionError);
}

TEST_CASE("weyl kills metric products and is idempotent") {
  ScalarSpace space = ScalarSpace::minkowski(5);
  SymBilinear<R> g = metric_form<R>(space);
  SymBilinear<R> h = random_sym(space, 77);
  CHECK(weyl(kulkarni_nomizu(h, g)).is_zero());
  CurvatureTensor<R> c = random_curvature<R>(space, 78);
  CurvatureTensor<R> w = weyl(c);
  CHECK(weyl(w) == w);
  CHECK(trace14(w).is_zero());
  // Adding any metric product leaves the Weyl part unchanged.
  CHECK(weyl(c + kulkarni_nomizu(h, g)) == w);
}

TEST_CASE("schouten relates to ricci and scalar") {
  // P = (Ric - S/(2(n-1)) g) / (n-2); check the defining trace identity
  // metric_trace(P) = S / (2(n-1)).
  for (int n : {4, 5}) {
    ScalarSpace space = ScalarSpace::euclidean(n);
    CurvatureTensor<R> c = random_curvature<R>(space, 300 + n);
    SymBilinear<R> p = schouten(c);
    CHECK(metric_trace(p) == scalar_curvature(c) / R(2 * (n - 1)));
  }
}

TEST_CASE("higher curvature operator: first power is the curvature operator") {
  ScalarSpace space = ScalarSpace::minkowski(5);
  CurvatureTensor<R> c = random_curvature<R>(space, 404);
  CHECK(higher_curvature_operator(c, 1) == curvature_operator(c));
  CHECK_THROWS_AS(higher_curvature_operator(c, 3), DimensionError);  // 2k > n
}

TEST_CASE("star product is graded-commutative on curvature operators") {
  // A * B = B * A for operators of even degree.
  ScalarSpace space = ScalarSpace::minkowski(6);
  CurvatureTensor<R> a = random_curvature<R>(space, 501);
  CurvatureTensor<R> b = random_curvature<R>(space, 502);
  ExtOperator<R> ab = star_product(curvature_operator(a), curvature_operator(b));
  ExtOperator<R> ba = star_product(curvature_operator(b), curvature_operator(a));
  CHECK(ab == ba);
}
