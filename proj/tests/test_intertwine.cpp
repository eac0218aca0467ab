#include "support.hpp"

#include "twistzhu/intertwine.hpp"

using namespace twistzhu;

namespace {

FockVector w0() { return FockVector::vacuum(Sector::twisted); }

GradedHom scalar(Sector sector, const Rat& level, const Rat& c) {
  return GradedHom::of(sector, level, level, [&](const FockVector& x) { return x * c; });
}

}  // namespace

TEST_CASE("adjoint intertwiner data") {
  auto id = adjoint_intertwiner(ZhuContext(Aut::id, Rat(0), 6));
  CHECK(id.h0 == 0);
  CHECK(id.h1 == 0);
  CHECK(id.h2 == 0);
  auto th = adjoint_intertwiner(ZhuContext(Aut::theta, rat(1, 2), 6));
  CHECK(th.h1 == rat(1, 16));
  CHECK(th.h2 == rat(1, 16));
  CHECK(th.offset() == 0);
  CHECK(th.sector == Sector::twisted);
  VoaContext voa(2, 8);
  for (const auto& x : {w0(), vec::twisted({3, 1}), vec::twisted({5})})
    CHECK(intertwiner_mode(voa, th, FockVector::vacuum(), Rat(-1), x) == x);
}

TEST_CASE("zero modes of the vacuum, omega and alpha") {
  VoaContext voa(2, 8);
  ZhuContext ctx(Aut::theta, Rat(2), 8);
  auto I = adjoint_intertwiner(ctx);
  for (Rat t : {Rat(0), rat(1, 2), Rat(1), rat(3, 2), Rat(2)}) {
    CHECK(o_I(voa, I, FockVector::vacuum(), t, t) == scalar(Sector::twisted, t, Rat(1)));
    CHECK(o_I(voa, I, vec::omega(), t, t) == scalar(Sector::twisted, t, t + rat(1, 16)));
    if (t > 0) CHECK(o_I(voa, I, FockVector::vacuum(), t, Rat(0)).is_zero());
  }
  auto h = o_I(voa, I, vec::alpha({1}), rat(1, 2), Rat(0));
  CHECK(h.apply(w0()) == vec::twisted({1}));
  // alpha has half-integral modes only: integral level shifts vanish
  CHECK(o_I(voa, I, vec::alpha({1}), Rat(1), Rat(0)).is_zero());
  CHECK(o_I(voa, I, vec::alpha({1}), Rat(0), Rat(0)).is_zero());

  ZhuContext uctx(Aut::id, Rat(1), 8);
  auto U = adjoint_intertwiner(uctx);
  VoaContext uvoa(1, 8);
  CHECK(o_I(uvoa, U, vec::omega(), Rat(1), Rat(1)) == scalar(Sector::untwisted, Rat(1), Rat(1)));
  CHECK(o_I(uvoa, U, vec::alpha({1}), Rat(1), Rat(0)).apply(FockVector::vacuum()) == vec::alpha({1}));
}

TEST_CASE("composition") {
  VoaContext voa(2, 8);
  auto I = adjoint_intertwiner(ZhuContext(Aut::theta, Rat(1), 8));
  auto a = o_I(voa, I, vec::alpha({1}), rat(1, 2), Rat(0));
  auto b = o_I(voa, I, vec::alpha({2}), rat(3, 2), rat(1, 2));
  auto c = o_I(voa, I, vec::alpha({1, 1}), rat(3, 2), rat(3, 2));
  CHECK(c.compose(b).compose(a) == c.compose(b.compose(a)));
  CHECK(b.compose(a).apply(w0()) == b.apply(a.apply(w0())));
  CHECK_THROWS_AS(a.compose(a), std::invalid_argument);
}

TEST_CASE("grading and truncation") {
  VoaContext voa(2, 10);
  auto I = adjoint_intertwiner(ZhuContext(Aut::theta, Rat(2), 10));
  for (const auto& k : basis_keys(Sector::untwisted, 6)) {
    auto w = FockVector::basis(k);
    int deg2 = k.weight2();
    for (const auto& xk : basis_keys(Sector::twisted, 4)) {
      auto x = FockVector::basis(xk, Sector::twisted);
      for (int n2 = -8; n2 <= 12; ++n2) {
        auto y = intertwiner_mode(voa, I, w, rat(n2, 2), x);
        int target2 = deg2 + xk.weight2() - n2 - 2;
        for (const auto& [yk, c] : y.terms()) CHECK(yk.weight2() == target2);
        if (target2 < 0) CHECK(y.is_zero());
      }
    }
  }
}

TEST_CASE("L(-1) acts as the derivative on modes") {
  for (int T : {1, 2}) {
    VoaContext voa(T, 10);
    auto I = adjoint_intertwiner(ZhuContext(T == 2 ? Aut::theta : Aut::id, Rat(0), 10));
    Sector s = voa.module_sector();
    for (const auto& k : basis_keys(Sector::untwisted, 6)) {
      auto w = FockVector::basis(k);
      auto dw = L(voa, -1, w);
      for (const auto& xk : basis_keys(s, 4)) {
        auto x = FockVector::basis(xk, s);
        for (int n2 = -6; n2 <= 8; ++n2) {
          Rat n = rat(n2, 2);
          CHECK(intertwiner_mode(voa, I, dw, n, x) == intertwiner_mode(voa, I, w, n - 1, x) * (-n));
        }
      }
    }
  }
}

TEST_CASE("pi(I) is a module homomorphism") {
  auto window = test_window(3, 20, 4);
  struct Case { Aut g; Rat n; };
  for (auto c : {Case{Aut::id, Rat(0)}, Case{Aut::id, Rat(1)}, Case{Aut::theta, Rat(0)}, Case{Aut::theta, rat(1, 2)}}) {
    ZhuContext ctx(c.g, c.n, 10);
    auto I = adjoint_intertwiner(ctx);
    Rat step = rat(1, ctx.order());
    for (Rat s = 0; s <= c.n; s += step)
      for (Rat t = 0; t <= c.n; t += step) {
        auto rep = check_pi_hom(I, ctx, s, t, window);
        CHECK(rep);
        CHECK(rep.checked > 0);
      }
  }
  ZhuContext ctx(Aut::theta, rat(1, 2), 10);
  // shifting every mode by one breaks the identities
  auto shifted = adjoint_intertwiner(ctx);
  shifted.h0 = Rat(1);
  auto bad = check_pi_hom(shifted, ctx, Rat(0), rat(1, 2), window);
  CHECK_FALSE(bad);
  CHECK_FALSE(bad.witnesses.empty());
  CHECK_THROWS_AS(check_pi_hom(adjoint_intertwiner(ctx), ctx, Rat(1), Rat(0), window), std::invalid_argument);
}

TEST_CASE("nonvanishing probe") {
  ZhuContext ctx(Aut::theta, rat(1, 2), 8);
  auto I = adjoint_intertwiner(ctx);
  auto p00 = injectivity_probe(I, ctx, Rat(0), Rat(0));
  CHECK(p00);
  CHECK(p00.witness == FockBasisKey{}.label());
  auto p01 = injectivity_probe(I, ctx, Rat(0), rat(1, 2));
  CHECK(p01);
  CHECK(p01.witness == FockBasisKey({2}).label());
  CHECK_FALSE(injectivity_probe(zero_intertwiner(ctx), ctx, Rat(0), Rat(0)));
  CHECK_FALSE(injectivity_probe(zero_intertwiner(ctx), ctx, Rat(0), rat(1, 2)));
}
