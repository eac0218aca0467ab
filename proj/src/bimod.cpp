#include "twistzhu/bimod.hpp"

#include <map>

#include "twistzhu/parallel.hpp"

namespace twistzhu {

namespace {

int top_degree(const FockVector& v) { return v.max_weight2() / 2; }
int weight_of(const FockBasisKey& k) { return k.weight2() / 2; }

std::string pair_label(const FockVector& a, const FockVector& b) {
  return "(" + a.to_string() + ", " + b.to_string() + ")";
}

}  // namespace

FockVector star_right(const ZhuContext& ctx, const FockVector& w, const FockVector& u) {
  FockVector out(w.sector());
  if (w.is_zero()) return out;
  const int deg_w = top_degree(w);
  const int l = ctx.l();
  const Rat sign = l % 2 ? Rat(-1) : Rat(1);
  for (const auto& [uk, uc] : u.terms()) {
    if (eigen_index(uk, ctx.order()) != 0) continue;
    const int wt = weight_of(uk);
    std::map<int, Rat> coef;
    for (int m = 0; m <= l; ++m) {
      Rat outer = sign * rat_binomial(m + l, static_cast<unsigned>(l));
      for (int j = 0; j - m - l - 1 <= wt + deg_w - 1; ++j)
        coef[j - m - l - 1] += outer * rat_binomial(wt + m - 1, static_cast<unsigned>(j));
    }
    FockVector ub = FockVector::basis(uk, Sector::untwisted, uc);
    for (const auto& [p, c] : coef)
      if (sgn(c) != 0) out += mode_act2(ctx.voa(), ub, 2 * p, w) * c;
  }
  return out;
}

TruncSeries star_right_kernel(const ZhuContext& ctx, int wt, int r, int reach) {
  TruncSeries total(LaurentPoly("z"), std::nullopt);
  if (r != 0) return total;
  const int l = ctx.l();
  for (int m = 0; m <= l; ++m) {
    const int pole = l + m + 1;
    TruncSeries piece = binom_expand(Rat(wt + m - 1), static_cast<unsigned>(std::max(0, reach + pole))).shifted(Rat(-pole));
    piece *= rat_binomial(m + l, static_cast<unsigned>(l)) * (l % 2 ? -1 : 1);
    total = total + piece;
  }
  return total;
}

std::vector<Generator> span_O_M(const ZhuContext& ctx) {
  const auto keys = basis_keys(Sector::untwisted, 2 * ctx.cutoff());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    const int spread = ctx.circ_pole(eigen_index(keys[a], ctx.order())) - 1;
    for (std::size_t b = 0; b < keys.size(); ++b)
      if (weight_of(keys[a]) + weight_of(keys[b]) + spread <= ctx.cutoff()) pairs.emplace_back(a, b);
  }
  auto values = parallel_map<FockVector>(pairs.size(), ctx.threads(), [&](std::size_t idx) {
    const auto& [a, b] = pairs[idx];
    return circ_M(ctx, FockVector::basis(keys[a]), FockVector::basis(keys[b]));
  });
  std::vector<Generator> gens;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    if (values[idx].is_zero()) continue;
    const auto& [a, b] = pairs[idx];
    gens.push_back({"circ(" + keys[a].label() + ", " + keys[b].label() + ")", std::move(values[idx])});
  }
  return gens;
}

Bimodule::Bimodule(ZhuContext ctx) : ctx_(std::move(ctx)), span_(Sector::untwisted, ctx_.cutoff()) {
  for (const auto& g : span_O_M(ctx_)) {
    span_.insert(g.value);
    ++generator_count_;
  }
}

// ---- lemma scans ----------------------------------------------------------

CheckReport shifted_kernel_check(const Bimodule& B, int max_m) {
  const auto& ctx = B.context();
  const int N = ctx.cutoff();
  const auto keys = basis_keys(Sector::untwisted, 2 * N);
  struct Job { std::size_t u, w; int k, m; };
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    const int spread = ctx.circ_pole(eigen_index(keys[a], ctx.order())) - 1;
    for (std::size_t b = 0; b < keys.size(); ++b)
      for (int m = 0; m <= max_m; ++m)
        for (int k = 0; k <= m; ++k)
          if (weight_of(keys[a]) + weight_of(keys[b]) + spread + m <= N) jobs.push_back({a, b, k, m});
  }
  return run_checks("shifted kernels", jobs.size(), ctx.threads(), [&](std::size_t i) {
    const Job& j = jobs[i];
    ResidueKernel kernel = [&](int wt, int r, int reach) { return circ_kernel(ctx, wt, r, reach, j.k, j.m); };
    FockVector x = residue_product(ctx.voa(), FockVector::basis(keys[j.u]), kernel, FockVector::basis(keys[j.w]));
    if (B.is_zero(x)) return std::string();
    return keys[j.u].label() + ", " + keys[j.w].label() + ", k=" + std::to_string(j.k) + ", m=" + std::to_string(j.m);
  });
}

CheckReport commutator_check(const Bimodule& B) {
  const auto& ctx = B.context();
  const int N = ctx.cutoff();
  const auto keys = basis_keys(Sector::untwisted, 2 * N);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    if (eigen_index(keys[a], ctx.order()) != 0) continue;
    for (std::size_t b = 0; b < keys.size(); ++b)
      if (weight_of(keys[a]) + weight_of(keys[b]) + 2 * ctx.l() <= N) jobs.emplace_back(a, b);
  }
  ResidueKernel plain = [](int wt, int, int reach) {
    return binom_expand(Rat(wt - 1), static_cast<unsigned>(std::max(0, reach)));
  };
  return run_checks("commutator", jobs.size(), ctx.threads(), [&](std::size_t i) {
    FockVector u = FockVector::basis(keys[jobs[i].first]);
    FockVector w = FockVector::basis(keys[jobs[i].second]);
    FockVector x = star_left(ctx, u, w) - star_right(ctx, w, u) - residue_product(ctx.voa(), u, plain, w);
    return B.is_zero(x) ? std::string() : pair_label(u, w);
  });
}

CheckReport virasoro_relation_check(const Bimodule& B) {
  const auto& ctx = B.context();
  const int N = ctx.cutoff();
  const auto keys = basis_keys(Sector::untwisted, 2 * N);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t a = 0; a < keys.size(); ++a)
    for (std::size_t b = 0; b < keys.size(); ++b)
      if (weight_of(keys[a]) + 1 + weight_of(keys[b]) + 2 * ctx.l() <= N) jobs.emplace_back(a, b);
  return run_checks("virasoro relation", jobs.size(), ctx.threads(), [&](std::size_t i) {
    FockVector u = FockVector::basis(keys[jobs[i].first]);
    FockVector w = FockVector::basis(keys[jobs[i].second]);
    FockVector x = L(ctx.voa(), -1, u) + L(ctx.voa(), 0, u);
    if (!B.is_zero(star_left(ctx, x, w))) return "left " + pair_label(u, w);
    if (!B.is_zero(star_right(ctx, w, x))) return "right " + pair_label(u, w);
    return std::string();
  });
}

CheckReport ideal_check(const Bimodule& B) {
  const auto& ctx = B.context();
  const int N = ctx.cutoff();
  const auto keys = basis_keys(Sector::untwisted, 2 * N);
  auto gens_v = span_O_V(ctx);
  auto gens_m = span_O_M(ctx);
  struct Job { const Generator* g; std::size_t b; bool from_v; };
  std::vector<Job> jobs;
  for (const auto* gens : {&gens_v, &gens_m})
    for (const auto& g : *gens)
      for (std::size_t b = 0; b < keys.size(); ++b)
        if (top_degree(g.value) + weight_of(keys[b]) + 2 * ctx.l() <= N) jobs.push_back({&g, b, gens == &gens_v});
  return run_checks("ideal", jobs.size(), ctx.threads(), [&](std::size_t i) {
    const Job& j = jobs[i];
    FockVector x = FockVector::basis(keys[j.b]);
    const FockVector& g = j.g->value;
    FockVector left = j.from_v ? star_left(ctx, g, x) : star_left(ctx, x, g);
    FockVector right = j.from_v ? star_right(ctx, x, g) : star_right(ctx, g, x);
    if (!B.is_zero(left)) return "left " + j.g->label + " with " + keys[j.b].label();
    if (!B.is_zero(right)) return "right " + j.g->label + " with " + keys[j.b].label();
    return std::string();
  });
}

// ---- bimodule identities --------------------------------------------------

CheckReport bimodule_axiom_suite(const Bimodule& B, const Window& window) {
  const auto& ctx = B.context();
  const auto singles = window.tuples(1);
  const auto triples = window.tuples(3);
  const FockVector one = FockVector::vacuum();
  CheckReport rep = run_checks("unit", singles.size(), ctx.threads(), [&](std::size_t i) {
    const auto& w = *singles[i][0];
    if (!B.is_zero(star_left(ctx, one, w) - w)) return "1*w " + w.to_string();
    if (!B.is_zero(star_right(ctx, w, one) - w)) return "w*1 " + w.to_string();
    return std::string();
  });
  rep.merge(run_checks("triples", triples.size(), ctx.threads(), [&](std::size_t idx) {
    const auto& u = *triples[idx][0];
    const auto& v = *triples[idx][1];
    const auto& w = *triples[idx][2];
    const std::string at = " at u=" + u.to_string() + ", v=" + v.to_string() + ", w=" + w.to_string();
    if (!B.is_zero(star_right(ctx, star_left(ctx, u, w), v) - star_left(ctx, u, star_right(ctx, w, v))))
      return "(u*w)*v" + at;
    if (!B.is_zero(star_left(ctx, star_V(ctx, u, v), w) - star_left(ctx, u, star_left(ctx, v, w))))
      return "(u*v)*w" + at;
    if (!B.is_zero(star_right(ctx, w, star_V(ctx, u, v)) - star_right(ctx, star_right(ctx, w, u), v)))
      return "w*(u*v)" + at;
    return std::string();
  }));
  rep.name = "bimodule axioms";
  return rep;
}

CheckReport epi_lower(const Bimodule& upper, const Bimodule& lower, const Window& window) {
  const auto& cu = upper.context();
  const auto& cl = lower.context();
  if (cu.n().value() == 0) throw std::invalid_argument("epi_lower: n = 0 has no lower index");
  if (!(cl.n() == lower_index(cu.n())) || cl.aut() != cu.aut() || cl.cutoff() != cu.cutoff())
    throw std::invalid_argument("epi_lower: lower bimodule must be at n - 1/T with the same g and cutoff");

  auto gens = span_O_M(cu);
  CheckReport rep = run_checks("relations descend", gens.size(), cu.threads(), [&](std::size_t i) {
    return lower.is_zero(gens[i].value) ? std::string() : gens[i].label;
  });
  const bool exact = cu.i() >= 1;
  const auto pairs = window.tuples(2);
  rep.merge(run_checks(exact ? "products equal" : "products congruent", pairs.size(), cu.threads(), [&](std::size_t idx) {
    const auto& u = *pairs[idx][0];
    const auto& w = *pairs[idx][1];
    FockVector dl = star_left(cu, u, w) - star_left(cl, u, w);
    FockVector dr = star_right(cu, w, u) - star_right(cl, w, u);
    bool ok = exact ? dl.is_zero() && dr.is_zero() : lower.is_zero(dl) && lower.is_zero(dr);
    return ok ? std::string() : pair_label(u, w);
  }));
  rep.name = "epimorphism";
  return rep;
}

CheckReport phi_M_suite(const Bimodule& B, const Window& window) {
  const auto& ctx = B.context();
  const auto& voa = ctx.voa();
  auto gens = span_O_M(ctx);
  CheckReport rep = run_checks("phi(O(M)) in O(M)", gens.size(), ctx.threads(), [&](std::size_t i) {
    return B.is_zero(phi(voa, gens[i].value)) ? std::string() : gens[i].label;
  });
  const auto pairs = window.tuples(2);
  rep.merge(run_checks("phi reverses actions", pairs.size(), ctx.threads(), [&](std::size_t idx) {
    const auto& u = *pairs[idx][0];
    const auto& w = *pairs[idx][1];
    FockVector pu = phi(voa, u), pw = phi(voa, w);
    if (!B.is_zero(phi(voa, star_left(ctx, u, w)) - star_right(ctx, pw, pu))) return "phi(u*w) " + pair_label(u, w);
    if (!B.is_zero(phi(voa, star_right(ctx, w, u)) - star_left(ctx, pu, pw))) return "phi(w*u) " + pair_label(u, w);
    return std::string();
  }));
  rep.name = "phi on M";
  return rep;
}

// ---- filtration -----------------------------------------------------------

FiltrationReport filtration_report(const ZhuContext& ctx, int stability_weight) {
  FiltrationReport rep;
  rep.chain.name = "chain";
  rep.additivity.name = "additivity";

  std::vector<ZhuContext> levels{ctx};
  while (levels.back().n().value() != 0) levels.push_back(levels.back().lower());
  std::vector<std::vector<Generator>> gens;
  std::vector<Bimodule> mods;
  for (const auto& c : levels) {
    rep.levels.push_back(c.n().label());
    gens.push_back(span_O_M(c));
    mods.emplace_back(c);
  }
  const std::size_t ambient = mods.front().relations().ambient_dim();
  rep.dim_top = mods.front().dim();
  rep.dim_bottom = mods.back().dim();

  for (std::size_t s = 1; s < levels.size(); ++s) {
    // O_{n-(s-1)/T} inside O_{n-s/T}
    for (const auto& g : gens[s - 1]) rep.chain.expect(mods[s].is_zero(g.value), rep.levels[s - 1] + " " + g.label);
    QuotientSpace joint(Sector::untwisted, ctx.cutoff());
    for (const auto& g : gens[s - 1]) joint.insert(g.value);
    const std::size_t base = joint.rank();
    for (const auto& g : gens[s]) joint.insert(g.value);
    rep.subquotients.push_back(joint.rank() - base);
    rep.additivity.expect(joint.rank() == mods[s].relations().rank(),
                          "span at " + rep.levels[s] + " does not contain the span at " + rep.levels[s - 1]);
  }
  std::size_t total = rep.dim_bottom;
  for (auto d : rep.subquotients) total += d;
  rep.additivity.expect(total == rep.dim_top, "dim A_n = " + std::to_string(rep.dim_top) + " but the summands add to " +
                                                  std::to_string(total) + " (ambient " + std::to_string(ambient) + ")");

  // Each O_{n-s/T}(M) is stable under the level-n actions of V^0.
  std::vector<FockVector> acting;
  for (const auto& k : basis_keys(Sector::untwisted, 2 * stability_weight))
    if (eigen_index(k, ctx.order()) == 0) acting.push_back(FockVector::basis(k));
  rep.stability.name = "stability";
  for (std::size_t s = 1; s < levels.size(); ++s) {
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t g = 0; g < gens[s].size(); ++g)
      for (std::size_t a = 0; a < acting.size(); ++a)
        if (top_degree(gens[s][g].value) + top_degree(acting[a]) + 2 * ctx.l() <= ctx.cutoff()) jobs.emplace_back(g, a);
    auto part = run_checks(rep.levels[s], jobs.size(), ctx.threads(), [&](std::size_t i) {
      const auto& g = gens[s][jobs[i].first];
      const auto& u = acting[jobs[i].second];
      if (!mods[s].is_zero(star_left(ctx, u, g.value))) return "left " + u.to_string() + " on " + g.label;
      if (!mods[s].is_zero(star_right(ctx, g.value, u))) return "right " + u.to_string() + " on " + g.label;
      return std::string();
    });
    rep.stability.merge(part);
  }
  return rep;
}

}  // namespace twistzhu
