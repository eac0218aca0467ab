#include "twistzhu/intertwine.hpp"

#include <functional>
#include <stdexcept>

namespace twistzhu {

namespace {

int twice(const Rat& x) {
  Rat d = x * 2;
  if (d.get_den() != 1) throw std::invalid_argument("level " + to_string(x) + " is not in (1/2)Z");
  return static_cast<int>(d.get_num().get_si());
}

void check_level(const ZhuContext& ctx, const Rat& level) {
  if (sgn(level) < 0 || level > ctx.n().value()) throw std::invalid_argument("level " + to_string(level) + " outside [0, n]");
  if (Rat(level * ctx.order()).get_den() != 1)
    throw std::invalid_argument("level " + to_string(level) + " is not in (1/T)Z");
}

// Grading violations become witnesses rather than aborting the scan.
std::function<std::string(std::size_t)> guarded(std::function<std::string(std::size_t)> f) {
  return [f = std::move(f)](std::size_t i) {
    try {
      return f(i);
    } catch (const GradingViolation& e) {
      return std::string("grading: ") + e.what();
    }
  };
}

}  // namespace

Intertwiner adjoint_intertwiner(const ZhuContext& ctx) {
  Intertwiner I;
  I.g = ctx.aut();
  I.sector = ctx.module_sector();
  if (I.sector == Sector::twisted) I.h1 = I.h2 = ctx.voa().twisted_conformal_weight();
  return I;
}

Intertwiner zero_intertwiner(const ZhuContext& ctx) {
  Intertwiner I = adjoint_intertwiner(ctx);
  I.zero = true;
  return I;
}

FockVector intertwiner_mode(const VoaContext& voa, const Intertwiner& I, const FockVector& w, const Rat& n,
                            const FockVector& w1) {
  FockVector out(w1.sector());
  if (I.zero) return out;
  // z^{-n-1} z^{-offset}: the module operator has offset 0
  const int n2 = twice(n - I.offset());
  for (const auto& [k, c] : w.terms()) {
    bool twisted_mode = n2 % 2 != 0;
    bool odd = w1.sector() == Sector::twisted && k.parity() != 0;
    if (twisted_mode != odd) continue;
    out += mode_act2(voa, FockVector::basis(k, Sector::untwisted, c), n2, w1);
  }
  return out;
}

std::vector<FockBasisKey> level_keys(Sector s, const Rat& level) {
  const int l2 = twice(level);
  std::vector<FockBasisKey> out;
  for (const auto& k : basis_keys(s, l2))
    if (k.weight2() == l2) out.push_back(k);
  return out;
}

GradedHom::GradedHom(Sector sector, Rat s, Rat t)
    : sector_(sector), s_(std::move(s)), t_(std::move(t)), source_(level_keys(sector, s_)),
      target_(level_keys(sector, t_)),
      matrix_(target_.size(), std::vector<Rat>(source_.size(), Rat(0))) {}

void GradedHom::set_column(std::size_t col, const FockVector& image) {
  for (std::size_t r = 0; r < target_.size(); ++r) matrix_[r][col] = image.coefficient(target_[r]);
  for (const auto& [k, c] : image.terms())
    if (k.weight2() != twice(t_))
      throw GradingViolation("image of " + source_[col].label() + " has a component " + k.label() +
                             " outside level " + to_string(t_));
}

FockVector GradedHom::apply(const FockVector& x) const {
  FockVector out(sector_);
  for (std::size_t c = 0; c < source_.size(); ++c) {
    Rat xc = x.coefficient(source_[c]);
    if (sgn(xc) == 0) continue;
    for (std::size_t r = 0; r < target_.size(); ++r)
      if (sgn(matrix_[r][c]) != 0) out.add(target_[r], matrix_[r][c] * xc);
  }
  return out;
}

bool GradedHom::is_zero() const {
  for (const auto& row : matrix_)
    for (const auto& x : row)
      if (sgn(x) != 0) return false;
  return true;
}

GradedHom GradedHom::compose(const GradedHom& first) const {
  if (first.t_ != s_ || first.sector_ != sector_) throw std::invalid_argument("GradedHom::compose: level mismatch");
  GradedHom out(sector_, first.s_, t_);
  for (std::size_t r = 0; r < target_.size(); ++r)
    for (std::size_t m = 0; m < source_.size(); ++m) {
      if (sgn(matrix_[r][m]) == 0) continue;
      for (std::size_t c = 0; c < first.source_.size(); ++c) out.matrix_[r][c] += matrix_[r][m] * first.matrix_[m][c];
    }
  return out;
}

GradedHom& GradedHom::operator+=(const GradedHom& o) {
  if (o.s_ != s_ || o.t_ != t_ || o.sector_ != sector_) throw std::invalid_argument("GradedHom: level mismatch");
  for (std::size_t r = 0; r < target_.size(); ++r)
    for (std::size_t c = 0; c < source_.size(); ++c) matrix_[r][c] += o.matrix_[r][c];
  return *this;
}

GradedHom o_I(const VoaContext& voa, const Intertwiner& I, const FockVector& w, const Rat& t, const Rat& s) {
  GradedHom out(I.sector, s, t);
  for (int w2 = 0; w2 <= w.max_weight2(); w2 += 2) {
    FockVector part = w.weight_component(w2);
    if (part.is_zero()) continue;
    Rat mode = rat(w2, 2) - 1 - t + s;
    out += GradedHom::of(I.sector, s, t, [&](const FockVector& x) { return intertwiner_mode(voa, I, part, mode, x); });
  }
  return out;
}

GradedHom o_level(const ZhuContext& ctx, const FockVector& u, const Rat& m) {
  return GradedHom::of(ctx.module_sector(), m, m, [&](const FockVector& x) { return o_act(ctx, u, x); });
}

CheckReport check_pi_hom(const Intertwiner& I, const ZhuContext& ctx, const Rat& s, const Rat& t,
                         const Window& window) {
  check_level(ctx, s);
  check_level(ctx, t);
  const auto& voa = ctx.voa();
  const std::string at = " at (s,t)=(" + to_string(s) + "," + to_string(t) + ")";

  auto gens = span_O_M(ctx);
  CheckReport rep = run_checks("o^I(O(M)) = 0", gens.size(), ctx.threads(), guarded([&](std::size_t i) {
    return o_I(voa, I, gens[i].value, t, s).is_zero() ? std::string() : gens[i].label + at;
  }));

  const auto pairs = window.tuples(2);
  rep.merge(run_checks("o^I(u*w) = o(u)o^I(w)", pairs.size(), ctx.threads(), guarded([&](std::size_t idx) {
    const auto& u = *pairs[idx][0];
    const auto& w = *pairs[idx][1];
    GradedHom lhs = o_I(voa, I, star_left(ctx, u, w), t, s);
    GradedHom rhs = o_level(ctx, u, t).compose(o_I(voa, I, w, t, s));
    return lhs == rhs ? std::string() : "u=" + u.to_string() + " w=" + w.to_string() + at;
  })));
  rep.merge(run_checks("o^I(w*u) = o^I(w)o(u)", pairs.size(), ctx.threads(), guarded([&](std::size_t idx) {
    const auto& w = *pairs[idx][0];
    const auto& u = *pairs[idx][1];
    GradedHom lhs = o_I(voa, I, star_right(ctx, w, u), t, s);
    GradedHom rhs = o_I(voa, I, w, t, s).compose(o_level(ctx, u, s));
    return lhs == rhs ? std::string() : "w=" + w.to_string() + " u=" + u.to_string() + at;
  })));
  rep.name = "pi(I) is a homomorphism" + at;
  return rep;
}

ProbeResult injectivity_probe(const Intertwiner& I, const ZhuContext& ctx, const Rat& s, const Rat& t,
                              int max_weight) {
  check_level(ctx, s);
  check_level(ctx, t);
  for (const auto& k : basis_keys(Sector::untwisted, 2 * max_weight)) {
    if (!o_I(ctx.voa(), I, FockVector::basis(k), t, s).is_zero()) return {true, k.label()};
  }
  return {};
}

}  // namespace twistzhu
