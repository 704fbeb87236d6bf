#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

#include "curvcert/generators.hpp"
#include "curvcert/io.hpp"
#include "curvcert/petrov.hpp"

using namespace curvcert;
using R = Rational;
using CX = Complex<R>;

namespace {

std::vector<int> block_sizes(const PetrovReport<R>& rep) {
  std::vector<int> sizes;
  for (const auto& b : rep.jordan) sizes.push_back(b.size);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST_CASE("every type round-trips through its generator, exactly") {
  ScalarSpace mink = ScalarSpace::minkowski(4);
  struct Case {
    PetrovType type;
    std::vector<CX> eigen;
    std::vector<int> sizes;
  };
  std::vector<Case> cases = {
      {PetrovType::O, {}, {1, 1, 1}},
      {PetrovType::N, {}, {1, 2}},
      {PetrovType::III, {}, {3}},
      {PetrovType::D, {CX(R(5))}, {1, 1, 1}},
      {PetrovType::II, {CX(R(-2))}, {1, 2}},
      {PetrovType::I, {CX(R(1)), CX(R(3))}, {1, 1, 1}},
  };
  for (const auto& cs : cases) {
    CurvatureTensor<R> w = weyl_of_petrov_type<R>(mink, cs.type, cs.eigen);
    PetrovReport<R> rep = classify(w);
    CHECK(rep.type == cs.type);
    CHECK_FALSE(rep.used_float_fallback);
    REQUIRE(rep.exact_eigenvalues.has_value());
    CHECK(block_sizes(rep) == cs.sizes);
    if (cs.type == PetrovType::O) CHECK(w.is_zero());
  }
}

TEST_CASE("spectrum flags: real, imaginary, generic") {
  ScalarSpace mink = ScalarSpace::minkowski(4);

  PetrovReport<R> real_rep =
      classify(weyl_of_petrov_type<R>(mink, PetrovType::I, {CX(R(1)), CX(R(2))}));
  CHECK(real_rep.all_real);
  CHECK_FALSE(real_rep.all_imaginary);
  CHECK(real_rep.spectrum == SpectrumKind::allReal);

  PetrovReport<R> imag_rep = classify(
      weyl_of_petrov_type<R>(mink, PetrovType::I, {CX(R(0), R(1)), CX(R(0), R(2))}));
  CHECK(imag_rep.all_imaginary);
  CHECK(imag_rep.spectrum == SpectrumKind::allImaginary);

  PetrovReport<R> mixed_rep = classify(
      weyl_of_petrov_type<R>(mink, PetrovType::I, {CX(R(1), R(1)), CX(R(2), R(2))}));
  CHECK(mixed_rep.spectrum == SpectrumKind::generic);
  CHECK_FALSE(mixed_rep.all_real);
  CHECK_FALSE(mixed_rep.all_imaginary);

  // The zero operator is trivially both.
  PetrovReport<R> zero_rep = classify(weyl_of_petrov_type<R>(mink, PetrovType::O, {}));
  CHECK(zero_rep.all_real);
  CHECK(zero_rep.all_imaginary);
}

TEST_CASE("real or imaginary spectra force a vanishing first form") {
  ScalarSpace mink = ScalarSpace::minkowski(4);
  for (const auto& eigen :
       std::vector<std::vector<CX>>{{CX(R(2))}, {CX(R(0), R(3))}}) {
    CurvatureTensor<R> w = weyl_of_petrov_type<R>(mink, PetrovType::D, eigen);
    PetrovReport<R> rep = classify(w);
    SpectrumVanishing sv = pontryagin_vanishing_for_type(rep, w);
    CHECK(sv.applicable);
    CHECK(sv.p1_zero);
    CHECK(sv.consistent);
    CHECK(pontryagin_form_det(w, 1).is_zero());
  }
  // Mixed spectrum: the criterion is silent, consistency still holds.
  CurvatureTensor<R> mixed =
      weyl_of_petrov_type<R>(mink, PetrovType::I, {CX(R(1), R(1)), CX(R(2), R(2))});
  PetrovReport<R> rep = classify(mixed);
  SpectrumVanishing sv = pontryagin_vanishing_for_type(rep, mixed);
  CHECK_FALSE(sv.applicable);
  CHECK(sv.consistent);
}

TEST_CASE("classification is invariant under sign-compatible permutation isometries") {
  ScalarSpace mink = ScalarSpace::minkowski(4);
  CurvatureTensor<R> w =
      weyl_of_petrov_type<R>(mink, PetrovType::II, {CX(R(0), R(2))});
  PetrovReport<R> before = classify(w);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (int want_det : {1, -1}) {
      Isometry<R> perm = random_signed_permutation<R>(mink, seed, want_det);
      PetrovReport<R> after = classify(pullback(perm, w));
      CHECK(after.type == before.type);
      CHECK(after.spectrum == before.spectrum);
    }
  }
}

TEST_CASE("classify rejects wrong signatures and non-Weyl input") {
  CHECK_THROWS_AS(classify(random_curvature<R>(ScalarSpace::euclidean(4), 7)),
                  SignatureError);
  CHECK_THROWS_AS(classify(random_curvature<R>(ScalarSpace::minkowski(5), 7)),
                  SignatureError);
  // Nonzero Ricci part.
  CurvatureTensor<R> c = constant_curvature(ScalarSpace::minkowski(4), R(1));
  CHECK_THROWS_AS(classify(c), NotWeylError);
}

TEST_CASE("float mode reproduces the exact classification") {
  ScalarSpace mink = ScalarSpace::minkowski(4);
  struct Case {
    PetrovType type;
    std::vector<CX> eigen;
  };
  std::vector<Case> cases = {
      {PetrovType::N, {}},
      {PetrovType::D, {CX(R(3))}},
      {PetrovType::II, {CX(R(0), R(1))}},
      {PetrovType::I, {CX(R(1)), CX(R(2))}},
  };
  for (const auto& cs : cases) {
    CurvatureTensor<R> w = weyl_of_petrov_type<R>(mink, cs.type, cs.eigen);
    TensorSpec spec = spec_of_curvature(w, "float64");
    CurvatureTensor<double> wd = build_curvature<double>(spec);
    PetrovReport<double> rep = classify(wd);
    CHECK(rep.type == cs.type);
  }
}

TEST_CASE("string names round-trip") {
  for (PetrovType t : {PetrovType::O, PetrovType::N, PetrovType::III, PetrovType::D,
                       PetrovType::II, PetrovType::I})
    CHECK(petrov_type_from_string(to_string(t)) == t);
  CHECK_THROWS_AS(petrov_type_from_string("X"), ParseError);
}
