#include "twistzhu/zhu.hpp"

#include <map>
#include <optional>
#include <random>

#include "twistzhu/parallel.hpp"

namespace twistzhu {

std::string to_string(Aut g) { return g == Aut::id ? "id" : "theta"; }

Aut parse_aut(std::string_view s) {
  if (s == "id") return Aut::id;
  if (s == "theta") return Aut::theta;
  throw std::invalid_argument("unknown automorphism '" + std::string(s) + "' (expected id or theta)");
}

// ---- context --------------------------------------------------------------

ZhuContext::ZhuContext(Aut g, ModIndex n, int cutoff, unsigned threads)
    : g_(g), n_(n), cutoff_(cutoff), threads_(std::max(1u, threads)), voa_(aut_order(g), cutoff) {
  if (n.T != aut_order(g)) throw std::invalid_argument("ZhuContext: index denominator does not match g");
  if (n.l < 0 || n.i < 0 || n.i >= n.T) throw std::invalid_argument("ZhuContext: n must lie in (1/T)Z_+");
  if (cutoff < 0) throw std::invalid_argument("ZhuContext: negative cutoff");
}

ZhuContext::ZhuContext(Aut g, const Rat& n, int cutoff, unsigned threads)
    : ZhuContext(g, decompose_n(n, aut_order(g)), cutoff, threads) {}

ZhuContext ZhuContext::lower() const { return at_index(lower_index(n_)); }

ZhuContext ZhuContext::at_index(const ModIndex& n) const {
  ZhuContext c = *this;
  if (n.T != n_.T) throw std::invalid_argument("ZhuContext: index denominator does not match g");
  c.n_ = n;
  return c;
}

Rat ZhuContext::circ_power(int wt, int r) const {
  return Rat(wt + n_.l - 1 + delta(n_.i, r, n_.T)) + rat(r, n_.T);
}

int ZhuContext::circ_pole(int r) const {
  return 2 * n_.l + delta(n_.i, r, n_.T) + delta(n_.i, n_.T - r, n_.T) + 1;
}

// ---- products by mode sums ------------------------------------------------

namespace {

int top_degree(const FockVector& v) { return v.max_weight2() / 2; }

/// sum_p coef[p] u_p v for a single monomial u.
FockVector apply_modes(const ZhuContext& ctx, const FockBasisKey& uk, const Rat& uc, const std::map<int, Rat>& coef,
                       const FockVector& v) {
  FockVector out(v.sector());
  FockVector u = FockVector::basis(uk, Sector::untwisted, uc);
  for (const auto& [p, c] : coef) {
    if (sgn(c) == 0) continue;
    out += mode_act2(ctx.voa(), u, 2 * p, v) * c;
  }
  return out;
}

}  // namespace

FockVector circ_V(const ZhuContext& ctx, const FockVector& u, const FockVector& v) {
  FockVector out(v.sector());
  if (v.is_zero()) return out;
  const int deg_v = top_degree(v);
  for (const auto& [uk, uc] : u.terms()) {
    const int wt = uk.weight2() / 2;
    const int r = eigen_index(uk, ctx.order());
    const Rat power = ctx.circ_power(wt, r);
    const int pole = ctx.circ_pole(r);
    std::map<int, Rat> coef;
    for (int j = 0; j - pole <= wt + deg_v - 1; ++j) coef[j - pole] = rat_binomial(power, static_cast<unsigned>(j));
    out += apply_modes(ctx, uk, uc, coef, v);
  }
  return out;
}

FockVector star_V(const ZhuContext& ctx, const FockVector& u, const FockVector& v) {
  FockVector out(v.sector());
  if (v.is_zero()) return out;
  const int deg_v = top_degree(v);
  const int l = ctx.l();
  for (const auto& [uk, uc] : u.terms()) {
    if (eigen_index(uk, ctx.order()) != 0) continue;
    const int wt = uk.weight2() / 2;
    std::map<int, Rat> coef;
    for (int m = 0; m <= l; ++m) {
      Rat outer = rat_binomial(m + l, static_cast<unsigned>(l)) * (m % 2 ? -1 : 1);
      for (int j = 0; j - m - l - 1 <= wt + deg_v - 1; ++j)
        coef[j - m - l - 1] += outer * rat_binomial(wt + l, static_cast<unsigned>(j));
    }
    out += apply_modes(ctx, uk, uc, coef, v);
  }
  return out;
}

// ---- products as residues -------------------------------------------------

FockVector residue_product(const VoaContext& voa, const FockVector& u, const ResidueKernel& kernel,
                           const FockVector& w) {
  FockVector out(w.sector());
  if (w.is_zero()) return out;
  const int deg_w = top_degree(w);
  for (const auto& [uk, uc] : u.terms()) {
    const int wt = uk.weight2() / 2;
    const int r = voa.order() == 1 ? 0 : uk.parity();
    // Y(u,z)w = sum_p u_p w z^{-p-1} has no terms with p > reach.
    const int reach = wt + deg_w - 1;
    TruncSeries k = kernel(wt, r, reach);
    if (!k.certified_at(Rat(reach)))
      throw UncertifiedResidue("residue_product: kernel not certified through exponent " + std::to_string(reach));
    FockVector ub = FockVector::basis(uk, Sector::untwisted, uc);
    // Res_z z^e z^{-p-1} is nonzero only for e = p.
    for (const auto& [e, c] : k.known().terms()) {
      if (e.get_den() != 1) throw std::invalid_argument("residue_product: kernel exponents must be integral");
      long p = e.get_num().get_si();
      if (p > reach) continue;
      out += mode_act2(voa, ub, static_cast<int>(2 * p), w) * c;
    }
  }
  return out;
}

TruncSeries circ_kernel(const ZhuContext& ctx, int wt, int r, int reach, int k, int m) {
  const int pole = ctx.circ_pole(r) + m;
  const int len = std::max(0, reach + pole);
  return binom_expand(ctx.circ_power(wt, r) + k, static_cast<unsigned>(len)).shifted(Rat(-pole));
}

TruncSeries star_kernel(const ZhuContext& ctx, int wt, int r, int reach) {
  TruncSeries total(LaurentPoly("z"), std::nullopt);
  if (r != 0) return total;
  const int l = ctx.l();
  for (int m = 0; m <= l; ++m) {
    const int pole = l + m + 1;
    const int len = std::max(0, reach + pole);
    TruncSeries piece = binom_expand(Rat(wt + l), static_cast<unsigned>(len)).shifted(Rat(-pole));
    piece *= rat_binomial(m + l, static_cast<unsigned>(l)) * (m % 2 ? -1 : 1);
    total = total + piece;
  }
  return total;
}

// ---- relations and the quotient -------------------------------------------

std::vector<Generator> span_O_V(const ZhuContext& ctx) {
  const auto keys = basis_keys(Sector::untwisted, 2 * ctx.cutoff());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    const int r = eigen_index(keys[a], ctx.order());
    const int spread = ctx.circ_pole(r) - 1;
    for (std::size_t b = 0; b < keys.size(); ++b)
      if ((keys[a].weight2() + keys[b].weight2()) / 2 + spread <= ctx.cutoff()) pairs.emplace_back(a, b);
  }
  auto values = parallel_map<FockVector>(pairs.size(), ctx.threads(), [&](std::size_t idx) {
    const auto& [a, b] = pairs[idx];
    return circ_V(ctx, FockVector::basis(keys[a]), FockVector::basis(keys[b]));
  });

  std::vector<Generator> gens;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    if (values[idx].is_zero()) continue;
    const auto& [a, b] = pairs[idx];
    gens.push_back({"circ(" + keys[a].label() + ", " + keys[b].label() + ")", std::move(values[idx])});
  }
  for (const auto& k : keys) {
    if (k.weight2() / 2 + 1 > ctx.cutoff()) continue;
    FockVector u = FockVector::basis(k);
    FockVector g = L(ctx.voa(), -1, u) + L(ctx.voa(), 0, u);
    if (!g.is_zero()) gens.push_back({"(L(-1)+L(0))" + k.label(), std::move(g)});
  }
  return gens;
}

ZhuAlgebra::ZhuAlgebra(ZhuContext ctx) : ctx_(std::move(ctx)), span_(Sector::untwisted, ctx_.cutoff()) {
  for (const auto& g : span_O_V(ctx_)) {
    span_.insert(g.value);
    ++generator_count_;
  }
}

FockVector ZhuAlgebra::mul(const FockVector& a, const FockVector& b) const {
  return reduce(star_V(ctx_, reduce(a), reduce(b)));
}

// ---- suites ---------------------------------------------------------------

Window test_window(int max_weight, unsigned random_tuples, std::uint64_t seed) {
  Window win;
  win.random_tuples = random_tuples;
  const auto keys = basis_keys(Sector::untwisted, 2 * max_weight);
  for (const auto& k : keys) win.basis.push_back(FockVector::basis(k));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  for (unsigned t = 0; t < 3 * random_tuples; ++t) {
    FockVector v;
    while (v.is_zero())
      for (int term = 0; term < 3; ++term) v.add(keys[pick(rng)], rat(num(rng), den(rng)));
    win.random.push_back(std::move(v));
  }
  return win;
}

std::vector<std::vector<const FockVector*>> Window::tuples(int arity) const {
  std::vector<std::vector<const FockVector*>> out;
  const std::size_t b = basis.size();
  std::size_t total = 1;
  for (int a = 0; a < arity; ++a) total *= b;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<const FockVector*> t(static_cast<std::size_t>(arity));
    std::size_t rest = idx;
    for (int a = arity - 1; a >= 0; --a) {
      t[static_cast<std::size_t>(a)] = &basis[rest % b];
      rest /= b;
    }
    out.push_back(std::move(t));
  }
  for (unsigned r = 0; r < random_tuples; ++r) {
    std::vector<const FockVector*> t;
    for (int a = 0; a < arity; ++a) t.push_back(&random[(r * static_cast<unsigned>(arity) + static_cast<unsigned>(a)) % random.size()]);
    out.push_back(std::move(t));
  }
  return out;
}


CheckReport check_associativity(const ZhuAlgebra& A, const Window& window) {
  const auto triples = window.tuples(3);
  return run_checks("associativity", triples.size(), A.context().threads(), [&](std::size_t idx) {
    const auto& u = *triples[idx][0];
    const auto& v = *triples[idx][1];
    const auto& w = *triples[idx][2];
    FockVector lhs = A.mul(A.mul(u, v), w);
    FockVector rhs = A.mul(u, A.mul(v, w));
    if (lhs == rhs) return std::string();
    return "(" + u.to_string() + ", " + v.to_string() + ", " + w.to_string() + ")";
  });
}

CheckReport surjection_check(const ZhuAlgebra& upper, const ZhuAlgebra& lower, const Window& window) {
  const auto& cu = upper.context();
  const auto& cl = lower.context();
  if (cu.n().value() == 0) throw std::invalid_argument("surjection_check: n = 0 has no lower index");
  if (!(cl.n() == lower_index(cu.n())) || cl.aut() != cu.aut())
    throw std::invalid_argument("surjection_check: lower context must be at n - 1/T with the same g");

  auto gens = span_O_V(cu);
  CheckReport rep = run_checks("relations descend", gens.size(), cu.threads(), [&](std::size_t i) {
    return lower.is_zero(gens[i].value) ? std::string() : gens[i].label;
  });
  const auto pairs = window.tuples(2);
  rep.merge(run_checks("products agree", pairs.size(), cu.threads(), [&](std::size_t idx) {
    const auto& u = *pairs[idx][0];
    const auto& v = *pairs[idx][1];
    if (lower.is_zero(star_V(cu, u, v) - star_V(cl, u, v))) return std::string();
    return "(" + u.to_string() + ", " + v.to_string() + ")";
  }));
  rep.name = "surjection";
  return rep;
}

FockVector phi(const VoaContext& voa, const FockVector& u) {
  FockVector x(u.sector());
  for (const auto& [k, c] : u.terms()) x.add(k, (k.weight2() / 2) % 2 ? Rat(-c) : c);
  FockVector total = x;
  FockVector term = x;
  for (int j = 1; !term.is_zero(); ++j) {
    term = L(voa, 1, term) * rat(1, j);
    total += term;
  }
  return total;
}

CheckReport phi_suite(const ZhuAlgebra& A, const Window& window) {
  const auto& ctx = A.context();
  auto gens = span_O_V(ctx);
  CheckReport rep = run_checks("phi(O) in O", gens.size(), ctx.threads(), [&](std::size_t i) {
    return A.is_zero(phi(ctx.voa(), gens[i].value)) ? std::string() : gens[i].label;
  });
  const auto pairs = window.tuples(2);
  rep.merge(run_checks("phi reverses products", pairs.size(), ctx.threads(), [&](std::size_t idx) {
    const auto& u = *pairs[idx][0];
    const auto& v = *pairs[idx][1];
    FockVector lhs = phi(ctx.voa(), star_V(ctx, u, v));
    FockVector rhs = star_V(ctx, phi(ctx.voa(), v), phi(ctx.voa(), u));
    return A.is_zero(lhs - rhs) ? std::string() : "(" + u.to_string() + ", " + v.to_string() + ")";
  }));
  rep.name = "phi";
  return rep;
}

// ---- Omega_n and zero modes -----------------------------------------------

std::vector<FockVector> omega_filter(const ZhuContext& ctx) {
  const Sector s = ctx.module_sector();
  const int n2 = 2 * ctx.l() + (ctx.order() == 2 ? ctx.i() : 0);  // 2n
  const auto ukeys = basis_keys(Sector::untwisted, 2 * ctx.cutoff());
  const auto wkeys = basis_keys(s, 2 * ctx.cutoff());

  std::map<int, std::vector<FockBasisKey>> levels;
  for (const auto& k : wkeys) levels[k.weight2()].push_back(k);

  std::vector<FockVector> out;
  for (const auto& [d2, basis] : levels) {
    using Key = std::pair<int, FockBasisKey>;
    auto images = parallel_map<std::map<Key, Rat>>(basis.size(), ctx.threads(), [&](std::size_t b) {
      std::map<Key, Rat> img;
      FockVector w = FockVector::basis(basis[b], s);
      int cond = 0;
      for (const auto& uk : ukeys) {
        FockVector u = FockVector::basis(uk);
        for (int k2 = n2 + 1; k2 <= d2; ++k2, ++cond) {
          int mode2 = uk.weight2() - 2 + k2;
          if (s == Sector::untwisted ? (k2 % 2 != 0) : (std::abs(mode2) % 2 != uk.parity())) continue;
          FockVector image = mode_act2(ctx.voa(), u, mode2, w);
          for (const auto& [key, c] : image.terms()) img.emplace(Key{cond, key}, c);
        }
      }
      return img;
    });
    for (const auto& combo : kernel_of_images(images)) {
      FockVector v(s);
      for (std::size_t b = 0; b < basis.size(); ++b) v.add(basis[b], combo[b]);
      out.push_back(std::move(v));
    }
  }
  return out;
}

FockVector o_act(const ZhuContext& ctx, const FockVector& v, const FockVector& w) {
  FockVector out(w.sector());
  for (const auto& [k, c] : v.terms()) {
    if (w.sector() == Sector::twisted && k.parity() != 0) continue;
    out += mode_act2(ctx.voa(), FockVector::basis(k, Sector::untwisted, c), k.weight2() - 2, w);
  }
  return out;
}

CheckReport o_action_suite(const ZhuAlgebra& A, const Window& window) {
  const auto& ctx = A.context();
  const Sector s = ctx.module_sector();
  const int n2 = 2 * ctx.l() + (ctx.order() == 2 ? ctx.i() : 0);
  std::vector<FockVector> low;
  for (const auto& k : basis_keys(s, n2)) low.push_back(FockVector::basis(k, s));

  auto gens = span_O_V(ctx);
  CheckReport rep = run_checks("o(O) = 0", gens.size(), ctx.threads(), [&](std::size_t i) {
    for (const auto& w : low)
      if (!o_act(ctx, gens[i].value, w).is_zero()) return gens[i].label + " on " + w.to_string();
    return std::string();
  });
  const auto pairs = window.tuples(2);
  rep.merge(run_checks("o(u*v) = o(u)o(v)", pairs.size(), ctx.threads(), [&](std::size_t idx) {
    const auto& u = *pairs[idx][0];
    const auto& v = *pairs[idx][1];
    FockVector uv = star_V(ctx, u, v);
    for (const auto& w : low)
      if (o_act(ctx, uv, w) != o_act(ctx, u, o_act(ctx, v, w)))
        return "(" + u.to_string() + ", " + v.to_string() + ") on " + w.to_string();
    return std::string();
  }));
  rep.name = "zero modes";
  return rep;
}

CheckReport odd_collapse_check(const ZhuAlgebra& A, int max_weight) {
  CheckReport rep;
  rep.name = "odd collapse";
  const int T = A.context().order();
  for (const auto& k : basis_keys(Sector::untwisted, 2 * max_weight)) {
    if (eigen_index(k, T) == 0) continue;
    rep.expect(A.is_zero(FockVector::basis(k)), k.label());
  }
  return rep;
}

}  // namespace twistzhu
