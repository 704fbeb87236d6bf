#pragma once

// The acceptance battery: one function per acceptance criterion, shared by
// the command line's selfcheck command and the acceptance test binary.
// Every criterion that cross-checks a library computation does so against a
// literal re-implementation written here, independent of the code under
// test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "curvcert/generators.hpp"
#include "curvcert/io.hpp"
#include "curvcert/petrov.hpp"
#include "curvcert/pontryagin.hpp"
#include "curvcert/symmetry.hpp"

namespace curvcert::battery {

using R = Rational;

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline ScalarSpace battery_space(int n, std::uint64_t salt) {
  // Alternate Lorentzian and Euclidean sign patterns across instances.
  return (salt % 2 == 0) ? ScalarSpace::minkowski(n) : ScalarSpace::euclidean(n);
}

// Random tensor of definite parity that is guaranteed nonzero (skips the
// measure-zero seeds whose projection vanishes).
inline CurvatureTensor<R> nonzero_random_parity(const ScalarSpace& space,
                                                const Isometry<R>& theta, int parity,
                                                std::uint64_t seed, std::uint64_t& salt) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    CurvatureTensor<R> c = random_parity<R>(space, theta, parity, derive_seed(seed, salt++));
    if (!c.is_zero()) return c;
  }
  throw Error("battery: could not draw a nonzero tensor of definite parity");
}

inline std::vector<R> basis_axis(const ScalarSpace& space, int i) {
  std::vector<R> u(space.dim());
  u[i] = R(1);
  return u;
}

// Sign of the permutation sending positions of I to J, where J must be a
// rearrangement of the distinct-entry tuple I; used by the literal oracles.
inline int tuple_sign(const std::vector<int>& I, const std::vector<int>& J) {
  const int k = static_cast<int>(I.size());
  std::vector<int> pos(k);
  for (int t = 0; t < k; ++t) {
    int p = -1;
    for (int b = 0; b < k; ++b)
      if (I[b] == J[t]) p = b;
    if (p < 0) return 0;
    pos[t] = p;
  }
  int inv = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (pos[a] > pos[b]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

// All ordered tuples of distinct elements of {0..n-1} of length k.
inline void distinct_tuples(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      cur.push_back(i);
      self(self);
      cur.pop_back();
      used[i] = 0;
    }
  };
  rec(rec);
}

}  // namespace detail

// 1. The two Pontryagin routes agree coefficient-for-coefficient, exactly.
inline CriterionResult route_equality(std::uint64_t seed, bool quick) {
  struct Block {
    int n;
    int count;
  };
  std::vector<Block> plan = {{4, 40}, {5, 25}, {6, 20}, {8, 15}};
  if (quick)
    for (auto& b : plan) b.count = std::max(2, b.count / 8);
  std::uint64_t salt = 1000;
  int tensors = 0, comparisons = 0;
  for (const auto& block : plan) {
    for (int i = 0; i < block.count; ++i) {
      ScalarSpace space = detail::battery_space(block.n, salt);
      CurvatureTensor<R> c = random_curvature<R>(space, derive_seed(seed, salt++));
      ++tensors;
      for (int k = 1; 4 * k <= block.n && k <= 2; ++k) {
        PontryaginForm<R> det_route = pontryagin_form_det(c, k);
        PontryaginForm<R> op_route = pontryagin_form_op(c, k);
        ++comparisons;
        if (!(det_route.reduced.coeffs == op_route.reduced.coeffs)) {
          std::ostringstream os;
          os << "route mismatch at n=" << block.n << " instance " << i << " k=" << k;
          return {1, "dual-route Pontryagin equality", false, os.str()};
        }
      }
    }
  }
  std::ostringstream os;
  os << tensors << " tensors, " << comparisons << " exact route comparisons";
  return {1, "dual-route Pontryagin equality", true, os.str()};
}

// 2. Pontryagin forms are unchanged by passing to the Weyl part.
inline CriterionResult weyl_equality(std::uint64_t seed, bool quick) {
  struct Block {
    int n;
    int count;
  };
  std::vector<Block> plan = {{4, 40}, {5, 25}, {6, 20}, {8, 15}};
  if (quick)
    for (auto& b : plan) b.count = std::max(2, b.count / 8);
  std::uint64_t salt = 2000;
  int comparisons = 0;
  for (const auto& block : plan) {
    for (int i = 0; i < block.count; ++i) {
      ScalarSpace space = detail::battery_space(block.n, salt);
      CurvatureTensor<R> c = random_curvature<R>(space, derive_seed(seed, salt++));
      CurvatureTensor<R> w = weyl(c);
      for (int k = 1; 4 * k <= block.n && k <= 2; ++k) {
        ++comparisons;
        bool det_same = pontryagin_form_det(c, k).reduced.coeffs ==
                        pontryagin_form_det(w, k).reduced.coeffs;
        bool op_same = pontryagin_form_op(c, k).reduced.coeffs ==
                       pontryagin_form_op(w, k).reduced.coeffs;
        if (!det_same || !op_same) {
          std::ostringstream os;
          os << "Weyl mismatch at n=" << block.n << " instance " << i << " k=" << k;
          return {2, "Pontryagin forms of the Weyl part", false, os.str()};
        }
      }
    }
  }
  std::ostringstream os;
  os << comparisons << " exact comparisons against the Weyl part, both routes";
  return {2, "Pontryagin forms of the Weyl part", true, os.str()};
}

// 3. Vanishing certificates for definite-parity tensors in n = 4 and n = 8.
inline CriterionResult vanishing_battery(std::uint64_t seed, bool quick) {
  std::uint64_t salt = 3000;
  int certificates = 0;
  auto run = [&](int n, int parity, const std::vector<std::vector<int>>& alphas,
                 int count) -> std::string {
    ScalarSpace space = ScalarSpace::minkowski(n);
    Isometry<R> theta = reflection(space, detail::basis_axis(space, 0));
    for (int i = 0; i < count; ++i) {
      CurvatureTensor<R> c = detail::nonzero_random_parity(space, theta, parity, seed, salt);
      for (const auto& alpha : alphas) {
        VanishingCertificate<R> cert = vanishing_certificate(c, theta, alpha);
        ++certificates;
        if (!cert.all_zero) {
          std::ostringstream os;
          os << "nonzero witness " << scalar_traits<R>::to_string(cert.witness) << " at n="
             << n << " parity=" << parity << " instance " << i;
          return os.str();
        }
      }
    }
    return {};
  };
  const int c4 = quick ? 15 : 100;
  const int c8 = quick ? 5 : 25;
  for (int parity : {1, -1}) {
    std::string err = run(4, parity, {{1}}, c4);
    if (err.empty()) err = run(8, parity, {{2}, {1, 1}}, c8);
    if (!err.empty()) return {3, "vanishing certificates", false, err};
  }
  std::ostringstream os;
  os << certificates << " certificates, all witnesses exactly zero";
  return {3, "vanishing certificates", true, os.str()};
}

// 4. Non-vacuity: the flat-Lorentz x complex-projective block tensor has a
// nonzero first form while its square and the second form vanish.
inline CriterionResult non_vacuity(std::uint64_t, bool) {
  CurvatureTensor<R> fs = fubini_study_cp2<R>();
  PontryaginForm<R> fs_det = pontryagin_form_det(fs, 1);
  PontryaginForm<R> fs_op = pontryagin_form_op(fs, 1);
  if (fs_det.is_zero() || fs_op.is_zero())
    return {4, "non-vacuity of the certificates", false,
            "projective-plane tensor has vanishing first form"};
  CurvatureTensor<R> block =
      direct_sum(CurvatureTensor<R>::zero(ScalarSpace::minkowski(4)), fs);
  PontryaginForm<R> p1 = pontryagin_form_det(block, 1);
  PontryaginForm<R> p2 = pontryagin_form_det(block, 2);
  PontryaginProduct<R> p11 = pontryagin_product(block, {1, 1});
  PontryaginForm<R> p2_op = pontryagin_form_op(block, 2);
  if (p1.is_zero())
    return {4, "non-vacuity of the certificates", false, "block tensor: first form vanishes"};
  if (!p2.is_zero() || !p2_op.is_zero() || !p11.is_zero())
    return {4, "non-vacuity of the certificates", false,
            "block tensor: expected vanishing of second form / square failed"};
  Isometry<R> theta =
      reflection(block.space(), detail::basis_axis(block.space(), 0));
  if (parity_of(block, theta) != 1)
    return {4, "non-vacuity of the certificates", false,
            "block tensor is not even under the timelike reflection"};
  VanishingCertificate<R> c2 = vanishing_certificate(block, theta, {2});
  VanishingCertificate<R> c11 = vanishing_certificate(block, theta, {1, 1});
  if (!c2.all_zero || !c11.all_zero)
    return {4, "non-vacuity of the certificates", false,
            "certificates on the block tensor produced nonzero witnesses"};
  return {4, "non-vacuity of the certificates", true,
          "nonzero first form coexists with exact-zero certified products"};
}

// 5. Petrov generators classify back to their type; real or imaginary
// spectra force an exactly zero first Pontryagin form.
inline CriterionResult petrov_battery(std::uint64_t, bool) {
  using CX = Complex<R>;
  ScalarSpace mink = ScalarSpace::minkowski(4);
  struct Case {
    PetrovType type;
    std::vector<CX> eigen;
    bool expect_zero;
  };
  const CX i_unit(R(0), R(1));
  std::vector<Case> cases = {
      {PetrovType::O, {}, true},
      {PetrovType::N, {}, true},
      {PetrovType::III, {}, true},
      {PetrovType::D, {CX(R(2))}, true},
      {PetrovType::D, {CX(R(0), R(3))}, true},
      {PetrovType::II, {CX(R(1))}, true},
      {PetrovType::II, {CX(R(0), R(1))}, true},
      {PetrovType::I, {CX(R(1)), CX(R(2))}, true},
      {PetrovType::I, {CX(R(0), R(1)), CX(R(0), R(2))}, true},
      {PetrovType::I, {CX(R(1), R(1)), CX(R(2), R(2))}, false},
  };
  int zero_checks = 0;
  for (std::size_t idx = 0; idx < cases.size(); ++idx) {
    const Case& cs = cases[idx];
    CurvatureTensor<R> w = weyl_of_petrov_type<R>(mink, cs.type, cs.eigen);
    PetrovReport<R> rep = classify(w);
    if (rep.type != cs.type) {
      std::ostringstream os;
      os << "case " << idx << ": classified " << to_string(rep.type) << ", wanted "
         << to_string(cs.type);
      return {5, "Petrov round-trips and spectral vanishing", false, os.str()};
    }
    if (cs.expect_zero) {
      bool zero = pontryagin_form_det(w, 1).is_zero() && pontryagin_form_op(w, 1).is_zero();
      ++zero_checks;
      if (!zero) {
        std::ostringstream os;
        os << "case " << idx << " (" << to_string(cs.type)
           << "): first form not exactly zero";
        return {5, "Petrov round-trips and spectral vanishing", false, os.str()};
      }
    } else if (rep.spectrum != SpectrumKind::generic) {
      return {5, "Petrov round-trips and spectral vanishing", false,
              "complex-spectrum control case not reported as generic"};
    }
    SpectrumVanishing sv = pontryagin_vanishing_for_type(rep, w);
    if (!sv.consistent)
      return {5, "Petrov round-trips and spectral vanishing", false,
              "spectrum/vanishing consistency flag failed"};
  }
  std::ostringstream os;
  os << cases.size() << " generator cases classified back, " << zero_checks
     << " exact zero forms";
  return {5, "Petrov round-trips and spectral vanishing", true, os.str()};
}

// 6. Connected-sum Euler/signature integers and the obstruction verdict.
inline CriterionResult topology_integers(std::uint64_t, bool) {
  TopologyReport cp2 = chi_sigma(parse_topology_expr("CP2"));
  if (cp2.chi != 3 || cp2.sigma != 1)
    return {6, "connected-sum invariants", false, "CP2 invariants wrong"};
  TopologyExpr expr = parse_topology_expr("T4 # T4 # CP2 # CP2");
  TopologyReport rep = chi_sigma(expr);
  if (rep.chi != 0 || rep.sigma != 2)
    return {6, "connected-sum invariants", false, "four-summand invariants wrong"};
  if (rep.p1_integral != 6)
    return {6, "connected-sum invariants", false, "first Pontryagin number wrong"};
  Json j = topology_json(expr, rep);
  if (j["verdict"] != "Lorentzian yes; globally PE/PM no")
    return {6, "connected-sum invariants", false, "verdict string missing"};
  return {6, "connected-sum invariants", true,
          "chi=0, sigma=2, integral of the first form = 6, verdict emitted"};
}

// 7. Literal-formula cross-checks: minor sums, star-power expansion, and the
// permutation form of the pairing.
inline CriterionResult literal_cross_checks(std::uint64_t seed, bool quick) {
  std::uint64_t salt = 7000;
  // 7a. sigma_poly == (1/k!) sum over tuple pairs with the literal sign.
  {
    const int matrices = quick ? 10 : 50;
    for (int m = 0; m < matrices; ++m) {
      Rng rng(derive_seed(seed, salt++));
      Mat<R> a(5, 5);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) a(i, j) = random_scalar<R>(rng);
      for (int k = 1; k <= 5; ++k) {
        std::vector<std::vector<int>> tuples;
        detail::distinct_tuples(5, k, tuples);
        R acc{};
        for (const auto& I : tuples)
          for (const auto& J : tuples) {
            int s = detail::tuple_sign(I, J);
            if (s == 0) continue;
            R prod(1);
            for (int t = 0; t < k; ++t) prod *= a(I[t], J[t]);
            if (s > 0)
              acc += prod;
            else
              acc -= prod;
          }
        R fact(1);
        for (int t = 2; t <= k; ++t) fact *= R(t);
        if (!(acc / fact == sigma_poly(a, k))) {
          std::ostringstream os;
          os << "minor-sum mismatch at matrix " << m << " k=" << k;
          return {7, "literal-formula cross-checks", false, os.str()};
        }
      }
    }
  }
  // 7b. Iterated star power == expansion into wedges of the operator-pair
  // 2-forms, summed over ordered distinct multi-indices.
  {
    const int per_dim = quick ? 1 : 3;
    for (int n : {4, 5}) {
      for (int inst = 0; inst < per_dim; ++inst) {
        ScalarSpace space = detail::battery_space(n, salt);
        CurvatureTensor<R> c = random_curvature<R>(space, derive_seed(seed, salt++));
        const SubsetTable& tab = space.table();
        // 2-forms (1/2) eps_i eps_j C(.,.,e_i,e_j) built directly here.
        const auto& pairs = tab.masks(2);
        std::vector<KForm<R>> omega(static_cast<std::size_t>(n) * n, KForm<R>(space, 2));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            KForm<R> f(space, 2);
            R factor = R(space.sign(i) * space.sign(j)) / R(2);
            for (std::size_t p = 0; p < pairs.size(); ++p) {
              auto xy = members_of(pairs[p]);
              f.coeffs[p] = factor * c.component(xy[0], xy[1], i, j);
            }
            omega[static_cast<std::size_t>(i) * n + j] = std::move(f);
          }
        std::vector<std::vector<int>> tuples;
        detail::distinct_tuples(n, 4, tuples);
        const auto& quads = tab.masks(4);
        const int dim4 = static_cast<int>(quads.size());
        Mat<R> expected(dim4, dim4);
        for (const auto& I : tuples) {
          KForm<R> w = wedge(omega[static_cast<std::size_t>(I[0]) * n + I[1]],
                             omega[static_cast<std::size_t>(I[2]) * n + I[3]]);
          std::vector<int> sorted = I;
          std::sort(sorted.begin(), sorted.end());
          int sign = detail::tuple_sign(sorted, I);
          long long row = tab.rank(mask_of(I));
          for (int col = 0; col < dim4; ++col) {
            if (scalar_traits<R>::is_zero(w.coeffs[col])) continue;
            if (sign > 0)
              expected(static_cast<int>(row), col) += w.coeffs[col];
            else
              expected(static_cast<int>(row), col) -= w.coeffs[col];
          }
        }
        ExtOperator<R> power = higher_curvature_operator(c, 2);
        if (!(power.mat == expected)) {
          std::ostringstream os;
          os << "star-power expansion mismatch at n=" << n << " instance " << inst;
          return {7, "literal-formula cross-checks", false, os.str()};
        }
      }
    }
  }
  // 7c. split pairing == (1/k!^2) signed sum over all arrangements, for
  // arbitrary (non-curvature) operators on 2-vectors in dimension 4.
  {
    const int instances = quick ? 5 : 20;
    for (int inst = 0; inst < instances; ++inst) {
      ScalarSpace space = detail::battery_space(4, salt);
      Rng rng(derive_seed(seed, salt++));
      auto random_op = [&]() {
        ExtOperator<R> op(space, 2);
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) op.mat(i, j) = random_scalar<R>(rng);
        return op;
      };
      ExtOperator<R> a = random_op();
      ExtOperator<R> b = random_op();
      const SubsetTable& tab = space.table();
      const auto& pairs = tab.masks(2);
      auto column = [&](const ExtOperator<R>& op, int x, int y, std::vector<R>& out, int& sgn) {
        sgn = x < y ? 1 : -1;
        long long r = tab.rank(mask_of({std::min(x, y), std::max(x, y)}));
        out.resize(6);
        for (int u = 0; u < 6; ++u) out[u] = op.mat(u, static_cast<int>(r));
      };
      std::vector<int> perm = {0, 1, 2, 3};
      R literal{};
      do {
        int inv = 0;
        for (int s = 0; s < 4; ++s)
          for (int t = s + 1; t < 4; ++t)
            if (perm[s] > perm[t]) ++inv;
        int sgn_perm = (inv % 2 == 0) ? 1 : -1;
        std::vector<R> av, bv;
        int sa, sb;
        column(a, perm[0], perm[1], av, sa);
        column(b, perm[2], perm[3], bv, sb);
        R inner{};
        for (int u = 0; u < 6; ++u) {
          R term = av[u] * bv[u];
          if (space.subset_sign(pairs[u]) < 0)
            inner -= term;
          else
            inner += term;
        }
        R signed_term = inner * R(sgn_perm * sa * sb);
        literal += signed_term;
      } while (std::next_permutation(perm.begin(), perm.end()));
      literal /= R(4);  // 1/k!^2 with k = 2
      KForm<R> split = split_pairing(a, b);
      if (!(literal == split.coeffs[0])) {
        std::ostringstream os;
        os << "pairing mismatch at instance " << inst;
        return {7, "literal-formula cross-checks", false, os.str()};
      }
    }
  }
  return {7, "literal-formula cross-checks", true,
          "minor sums, star-power expansion, and arrangement pairing all exact"};
}

// 8. Structural identities: the 2-vector star, commutation signs, parity
// descent to the Weyl part, and exact decomposition reconstruction.
inline CriterionResult structural_identities(std::uint64_t seed, bool quick) {
  std::uint64_t salt = 8000;
  // Star operator in all four Lorentzian sign placements, both orientations.
  for (int t = 0; t < 4; ++t) {
    for (int orient : {1, -1}) {
      std::vector<int> signs(4, 1);
      signs[t] = -1;
      ScalarSpace space(4, signs, orient);
      ExtOperator<R> star = hodge_star_operator<R>(space);
      ExtOperator<R> sq = compose(star, star);
      Mat<R> minus_id(6, 6);
      for (int i = 0; i < 6; ++i) minus_id(i, i) = R(-1);
      if (!(sq.mat == minus_id))
        return {8, "structural identities", false, "star squared is not minus identity"};
      if (!is_self_adjoint(star))
        return {8, "structural identities", false, "star is not self-adjoint"};
    }
  }
  // Commutation sign matches declared parity; parity descends to the Weyl
  // part; reconstruction from the decomposition is exact.
  const int instances = quick ? 20 : 100;
  int commutation = 0, descent = 0, reconstructions = 0;
  for (int i = 0; i < instances; ++i) {
    const int n = 4 + (i % 3);  // 4, 5, 6
    ScalarSpace space = detail::battery_space(n, salt);
    std::vector<R> u = random_nonnull_vector<R>(space, derive_seed(seed, salt++));
    Isometry<R> theta = reflection(space, u);
    const int parity = (i % 2 == 0) ? 1 : -1;
    CurvatureTensor<R> c = detail::nonzero_random_parity(space, theta, parity, seed, salt);
    if (commutation_sign(c, theta) != parity)
      return {8, "structural identities", false, "commutation sign disagrees with parity"};
    ++commutation;
    CurvatureTensor<R> w = weyl(c);
    auto wp = parity_of(w, theta);
    if (!wp || (!w.is_zero() && *wp != parity))
      return {8, "structural identities", false, "parity does not descend to the Weyl part"};
    ++descent;
    Decomposition<R> dec = decompose(c);
    SymBilinear<R> g = metric_form<R>(space);
    CurvatureTensor<R> rebuilt =
        dec.weyl_part + (R(1) / R(n - 2)) * kulkarni_nomizu(dec.traceless_ricci, g) +
        (dec.scalar / R(2 * n * (n - 1))) * kulkarni_nomizu(g, g);
    if (!(rebuilt == c))
      return {8, "structural identities", false, "decomposition does not reconstruct"};
    ++reconstructions;
  }
  std::ostringstream os;
  os << "8 star placements, " << commutation << " commutation signs, " << descent
     << " parity descents, " << reconstructions << " exact reconstructions";
  return {8, "structural identities", true, os.str()};
}

inline std::vector<CriterionResult> run_all(std::uint64_t seed, bool quick) {
  return {route_equality(seed, quick),      weyl_equality(seed, quick),
          vanishing_battery(seed, quick),   non_vacuity(seed, quick),
          petrov_battery(seed, quick),      topology_integers(seed, quick),
          literal_cross_checks(seed, quick), structural_identities(seed, quick)};
}

}  // namespace curvcert::battery
