#include "support.hpp"

#include <random>

#include "oracles.hpp"
#include "twistzhu/zhu.hpp"

using namespace twistzhu;
using namespace oracles;

namespace {

FockVector vac() { return FockVector::vacuum(); }
FockVector a1() { return vec::alpha({1}); }

// Dense elimination that pivots on the lowest nonzero column, the opposite
// convention from QuotientSpace.
std::size_t dense_rank(std::vector<std::vector<Rat>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      Rat f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<Rat> dense(const FockVector& v, const std::vector<FockBasisKey>& keys) {
  std::vector<Rat> out;
  for (const auto& k : keys) out.push_back(v.coefficient(k));
  return out;
}

}  // namespace

TEST_CASE("circ examples") {
  ZhuContext id0(Aut::id, Rat(0), 8);
  ZhuContext th0(Aut::theta, Rat(0), 8);
  CHECK(circ_V(id0, vac(), vec::omega()).is_zero());
  CHECK(circ_V(ZhuContext(Aut::theta, rat(1, 2), 8), vac(), a1()).is_zero());
  auto w = vec::omega();
  CHECK(circ_V(id0, w, vac()) == L(id0.voa(), -1, w) + w * Rat(2));
  CHECK(circ_V(th0, a1(), a1()) == vec::omega() * Rat(2) - vac() * rat(1, 8));
}

TEST_CASE("circ coefficients are generalized binomials on odd vectors") {
  // u in V^1, theta, n = 1/2: exponent wt - 1/2 + l + delta_1(1) = 3/2 for alpha(-1)
  ZhuContext ctx(Aut::theta, rat(1, 2), 8);
  CHECK(ctx.circ_power(1, 1) == rat(3, 2));
  CHECK(ctx.circ_pole(1) == 3);
  auto v = vec::alpha({2});
  FockVector expect;
  for (int j = 0; j <= 5; ++j) expect += mode_act2(ctx.voa(), a1(), 2 * (j - 3), v) * rat_binomial(rat(3, 2), j);
  CHECK(circ_V(ctx, a1(), v) == expect);
}

TEST_CASE("star examples") {
  ZhuContext id0(Aut::id, Rat(0), 8);
  for (Rat n : {Rat(0), rat(1, 2), Rat(1)}) {
    ZhuContext th(Aut::theta, n, 8);
    for (auto v : {vac(), a1(), vec::alpha({2, 1})}) {
      CHECK(star_V(th, vac(), v) == v);
      CHECK(star_V(th, a1(), v).is_zero());
    }
  }
  CHECK(star_V(id0, vec::omega(), vac()) == vec::omega());
  CHECK(star_V(ZhuContext(Aut::id, Rat(2), 10), vac(), vec::alpha({3})) == vec::alpha({3}));
}

TEST_CASE("product weights lie in the band set by the j-range") {
  // For u in V^0 the binomial C(a, j) vanishes past j = a, which bounds the
  // weight below by wt v + l + 1. Odd u has a non-integral a and no such bound
  // (alpha o alpha = 2 omega - 1/8 reaches weight 0).
  for (Rat n : {Rat(0), rat(1, 2), Rat(1)}) {
    ZhuContext ctx(Aut::theta, n, 12);
    for (const auto& uk : basis_keys(Sector::untwisted, 6))
      for (const auto& vk : basis_keys(Sector::untwisted, 6)) {
        int wt_v = vk.weight2() / 2;
        int top = (uk.weight2() + vk.weight2()) / 2 + ctx.circ_pole(uk.parity()) - 1;
        int bottom = uk.parity() ? 0 : wt_v + ctx.l() + 1;
        auto c = circ_V(ctx, FockVector::basis(uk), FockVector::basis(vk));
        for (const auto& [k, x] : c.terms()) {
          CHECK(k.weight2() / 2 >= bottom);
          CHECK(k.weight2() / 2 <= top);
        }
        auto s = star_V(ctx, FockVector::basis(uk), FockVector::basis(vk));
        for (const auto& [k, x] : s.terms()) {
          CHECK(k.weight2() / 2 >= wt_v);
          CHECK(k.weight2() / 2 <= (uk.weight2() + vk.weight2()) / 2 + 2 * ctx.l());
        }
      }
  }
}

TEST_CASE("mode sums agree with residues of the kernels") {
  std::mt19937 rng(7);
  auto keys = basis_keys(Sector::untwisted, 8);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  struct Case { Aut g; Rat n; };
  for (auto c : {Case{Aut::id, Rat(0)}, Case{Aut::id, Rat(1)}, Case{Aut::theta, Rat(0)}, Case{Aut::theta, rat(1, 2)},
                 Case{Aut::theta, rat(3, 2)}}) {
    ZhuContext ctx(c.g, c.n, 14);
    ResidueKernel ck = [&](int wt, int r, int reach) { return circ_kernel(ctx, wt, r, reach); };
    ResidueKernel sk = [&](int wt, int r, int reach) { return star_kernel(ctx, wt, r, reach); };
    for (int t = 0; t < 40; ++t) {
      auto u = FockVector::basis(keys[pick(rng)], Sector::untwisted, rat(t + 1, 3)) + FockVector::basis(keys[pick(rng)]);
      auto v = FockVector::basis(keys[pick(rng)]) - FockVector::basis(keys[pick(rng)], Sector::untwisted, rat(2, 7));
      CHECK(circ_V(ctx, u, v) == residue_product(ctx.voa(), u, ck, v));
      CHECK(star_V(ctx, u, v) == residue_product(ctx.voa(), u, sk, v));
    }
  }
}

TEST_CASE("residue path refuses uncertified kernels") {
  ZhuContext ctx(Aut::id, Rat(0), 8);
  ResidueKernel short_kernel = [&](int wt, int r, int reach) { return circ_kernel(ctx, wt, r, reach - 1); };
  // (1+z)^{wt} is a polynomial, so only a non-integral exponent is truncated
  ZhuContext th(Aut::theta, Rat(0), 8);
  ResidueKernel th_short = [&](int wt, int r, int reach) { return circ_kernel(th, wt, r, reach - 1); };
  CHECK_THROWS_AS(residue_product(th.voa(), a1(), th_short, vec::alpha({2, 1})), UncertifiedResidue);
  CHECK_NOTHROW(residue_product(ctx.voa(), a1(), short_kernel, vec::alpha({2, 1})));
}

TEST_CASE("untwisted products match the classical formulas") {
  std::mt19937 rng(99);
  auto keys = basis_keys(Sector::untwisted, 8);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  for (int n : {0, 1, 2}) {
    ZhuContext ctx(Aut::id, Rat(n), 16);
    for (int t = 0; t < 40; ++t) {
      auto u = FockVector::basis(keys[pick(rng)], Sector::untwisted, rat(t - 20, 3));
      auto v = FockVector::basis(keys[pick(rng)]) + FockVector::basis(keys[pick(rng)], Sector::untwisted, rat(1, 2));
      CHECK(circ_V(ctx, u, v) == classical_circ(ctx.voa(), n, u, v));
      CHECK(star_V(ctx, u, v) == classical_star(ctx.voa(), n, u, v));
    }
  }
}

TEST_CASE("relation span and reduction") {
  ZhuContext ctx(Aut::id, Rat(0), 6);
  auto gens = span_O_V(ctx);
  ZhuAlgebra A(ctx);
  bool has_omega_rel = false;
  for (const auto& g : gens) {
    CHECK(A.is_zero(g.value));
    CHECK(g.value.max_weight2() <= 12);
    if (g.label == "(L(-1)+L(0))" + FockBasisKey({2, 2}).label()) has_omega_rel = true;
  }
  CHECK(has_omega_rel);
  CHECK(A.reduce(FockVector()).is_zero());
  CHECK(A.is_zero(circ_V(ctx, vec::omega(), vac())));
  for (const auto& k : basis_keys(Sector::untwisted, 12)) {
    auto r = A.reduce(FockVector::basis(k));
    CHECK(A.reduce(r) == r);
    CHECK(r.max_weight2() <= k.weight2());
  }
}

TEST_CASE("alpha(-1)^k images are independent in A_{id,0} at N=6") {
  ZhuContext ctx(Aut::id, Rat(0), 6);
  auto keys = basis_keys(Sector::untwisted, 12);
  std::vector<std::vector<Rat>> rows;
  for (const auto& g : span_O_V(ctx)) rows.push_back(dense(g.value, keys));
  std::size_t base = dense_rank(rows);
  for (int k = 0; k <= 3; ++k) rows.push_back(dense(vec::alpha(std::vector<int>(static_cast<std::size_t>(k), 1)), keys));
  CHECK(dense_rank(rows) == base + 4);
  ZhuAlgebra A(ctx);
  CHECK(A.relations().rank() == base);
}

TEST_CASE("odd vectors collapse for theta") {
  ZhuAlgebra A(ZhuContext(Aut::theta, Rat(0), 6));
  CHECK(A.is_zero(a1()));
  CHECK(odd_collapse_check(A, 3));
  ZhuAlgebra B(ZhuContext(Aut::theta, rat(1, 2), 8));
  CHECK(odd_collapse_check(B, 3));
}

TEST_CASE("window image dimension does not grow with the cutoff") {
  auto window = test_window(3);
  for (Rat n : {Rat(0), rat(1, 2)}) {
    std::size_t prev = window.basis.size() + 1;
    for (int N = 5; N <= 10; ++N) {
      ZhuAlgebra A(ZhuContext(Aut::theta, n, N));
      auto keys = basis_keys(Sector::untwisted, 2 * N);
      std::vector<std::vector<Rat>> rows;
      for (const auto& w : window.basis) rows.push_back(dense(A.reduce(w), keys));
      std::size_t d = dense_rank(rows);
      CHECK(d <= prev);
      prev = d;
    }
  }
}

TEST_CASE("algebra unit and associativity") {
  auto window = test_window(3);
  struct Case { Aut g; Rat n; };
  for (auto c : {Case{Aut::id, Rat(0)}, Case{Aut::theta, Rat(0)}, Case{Aut::theta, rat(1, 2)}}) {
    ZhuAlgebra A(ZhuContext(c.g, c.n, 10));
    for (const auto& v : window.basis) CHECK(A.mul(vac(), v) == A.reduce(v));
    auto rep = check_associativity(A, window);
    CHECK(rep.checked == 7 * 7 * 7);
    CHECK(rep.ok);
  }
  ZhuAlgebra B(ZhuContext(Aut::id, Rat(1), 13));
  CHECK(check_associativity(B, window));
  // [omega][omega] in A_{id,0}: omega = x^2/2 with x = [alpha(-1)]
  ZhuAlgebra A(ZhuContext(Aut::id, Rat(0), 10));
  CHECK(A.mul(vec::omega(), vec::omega()) == A.reduce(star_V(A.context(), vec::omega(), vec::omega())));
  CHECK(A.mul(vec::omega(), vec::omega()) == A.reduce(vec::alpha({1, 1, 1, 1}) * rat(1, 4)));
}

TEST_CASE("associativity at the minimal cutoff overflows rather than truncating") {
  ZhuAlgebra A(ZhuContext(Aut::id, Rat(1), 10));
  auto rep = check_associativity(A, test_window(3));
  CHECK_FALSE(rep.ok);
  REQUIRE_FALSE(rep.witnesses.empty());
  CHECK(rep.witnesses.front().find("cutoff overflow") != std::string::npos);
}

TEST_CASE("surjection onto the lower level") {
  auto window = test_window(3, 10, 5);
  ZhuAlgebra t1(ZhuContext(Aut::theta, rat(1, 2), 10)), t0(ZhuContext(Aut::theta, Rat(0), 10));
  CHECK(surjection_check(t1, t0, window));
  ZhuAlgebra i1(ZhuContext(Aut::id, Rat(1), 10)), i0(ZhuContext(Aut::id, Rat(0), 10));
  CHECK(surjection_check(i1, i0, window));
  CHECK_THROWS_AS(surjection_check(t0, t0, window), std::invalid_argument);
  CHECK_THROWS_AS(ZhuContext(Aut::id, Rat(0), 6).lower(), std::invalid_argument);
  CHECK(surjection_check(ZhuAlgebra(ZhuContext(Aut::theta, Rat(1), 10)), t1, window));
  CHECK_THROWS_AS(surjection_check(t1, i0, window), std::invalid_argument);
  // the reverse inclusion is false: level-0 relations do not all survive at level 1/2
  std::size_t missing = 0;
  for (const auto& g : span_O_V(t0.context())) missing += t1.is_zero(g.value) ? 0 : 1;
  CHECK(missing > 0);
}

TEST_CASE("phi") {
  VoaContext voa(1, 12);
  CHECK(phi(voa, vac()) == vac());
  CHECK(phi(voa, a1()) == a1() * Rat(-1));
  CHECK(phi(voa, vec::omega()) == vec::omega());
  // L(1) alpha(-2)|0> = 2 alpha(-1)|0>
  CHECK(phi(voa, vec::alpha({2})) == vec::alpha({2}) + vec::alpha({1}) * Rat(2));
  for (const auto& k : basis_keys(Sector::untwisted, 12)) {
    auto u = FockVector::basis(k);
    CHECK(phi(voa, phi(voa, u)) == u);
  }
  auto window = test_window(3, 10, 3);
  for (Rat n : {Rat(0), rat(1, 2)}) CHECK(phi_suite(ZhuAlgebra(ZhuContext(Aut::theta, n, 10)), window));
  CHECK(phi_suite(ZhuAlgebra(ZhuContext(Aut::id, Rat(1), 10)), window));
}

TEST_CASE("Omega_n and the zero-mode action") {
  ZhuContext t0(Aut::theta, Rat(0), 5);
  auto om = omega_filter(t0);
  REQUIRE(om.size() == 1);
  CHECK(om[0].size() == 1);
  CHECK(sgn(om[0].coefficient(FockBasisKey{})) != 0);
  CHECK(om[0].sector() == Sector::twisted);

  ZhuContext i0(Aut::id, Rat(0), 4);
  auto om_id = omega_filter(i0);
  REQUIRE(om_id.size() == 1);
  CHECK(om_id[0].terms().begin()->first.is_vacuum());

  // Omega_{1/2} contains the two lowest levels
  auto om_half = omega_filter(ZhuContext(Aut::theta, rat(1, 2), 4));
  CHECK(om_half.size() == 2);
  for (const auto& v : om_half) CHECK(v.max_weight2() <= 1);

  auto w = vec::twisted({3, 1});
  CHECK(o_act(t0, vac(), w) == w);
  CHECK(o_act(t0, vec::omega(), w) == L(t0.voa(), 0, w));
  CHECK(o_act(t0, a1(), w).is_zero());

  auto window = test_window(3);
  for (Rat n : {Rat(0), rat(1, 2), Rat(1)}) CHECK(o_action_suite(ZhuAlgebra(ZhuContext(Aut::theta, n, 10)), window));
  for (int n : {0, 1}) CHECK(o_action_suite(ZhuAlgebra(ZhuContext(Aut::id, Rat(n), 10)), window));
}

TEST_CASE("results do not depend on the thread count") {
  ZhuAlgebra a(ZhuContext(Aut::theta, rat(1, 2), 9, 1));
  ZhuAlgebra b(ZhuContext(Aut::theta, rat(1, 2), 9, 4));
  for (const auto& k : a.relations().ambient()) CHECK(a.reduce(FockVector::basis(k)) == b.reduce(FockVector::basis(k)));
  CHECK(a.generator_count() == b.generator_count());
}
