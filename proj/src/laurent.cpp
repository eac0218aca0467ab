#include "twistzhu/laurent.hpp"

#include <algorithm>

namespace twistzhu {

// ---- LaurentPoly ----------------------------------------------------------

LaurentPoly LaurentPoly::monomial(const Rat& coef, const Rat& exp, std::string var, int T) {
  LaurentPoly p(std::move(var), T);
  p.add_term(exp, coef);
  return p;
}

LaurentPoly LaurentPoly::one_plus_z_pow(unsigned k, std::string var) {
  LaurentPoly p(std::move(var), 1);
  for (unsigned j = 0; j <= k; ++j) p.add_term(Rat(j), rat_binomial(static_cast<long>(k), j));
  return p;
}

void LaurentPoly::check_exponent(const Rat& exp) const {
  Rat s = exp * T_;
  if (s.get_den() != 1)
    throw std::invalid_argument("LaurentPoly: exponent " + to_string(exp) + " not in (1/" +
                                std::to_string(T_) + ")Z");
}

Rat LaurentPoly::coefficient(const Rat& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rat(0) : it->second;
}

void LaurentPoly::add_term(const Rat& exp, const Rat& coef) {
  if (sgn(coef) == 0) return;
  check_exponent(exp);
  auto [it, inserted] = terms_.try_emplace(exp, coef);
  if (!inserted) {
    it->second += coef;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly d(var_, T_);
  for (const auto& [e, c] : terms_) d.add_term(e - 1, c * e);
  return d;
}

LaurentPoly LaurentPoly::shifted(const Rat& shift) const {
  LaurentPoly s(var_, T_);
  for (const auto& [e, c] : terms_) s.add_term(e + shift, c);
  return s;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out(a.var_, std::max(a.T_, b.T_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

// ---- TruncSeries ----------------------------------------------------------

Rat TruncSeries::lowest_exponent() const {
  if (!known_.is_zero()) return known_.terms().begin()->first;
  if (order_) return *order_;
  return Rat(0);
}

TruncSeries TruncSeries::shifted(const Rat& shift) const {
  std::optional<Rat> ord;
  if (order_) ord = *order_ + shift;
  return TruncSeries(known_.shifted(shift), ord);
}

TruncSeries& TruncSeries::operator*=(const Rat& c) {
  known_ *= c;
  return *this;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  std::optional<Rat> ord;
  if (a.order_ && b.order_) ord = cmp(*a.order_, *b.order_) < 0 ? *a.order_ : *b.order_;
  else if (a.order_) ord = a.order_;
  else if (b.order_) ord = b.order_;
  LaurentPoly sum = a.known_ + b.known_;
  if (ord) {
    LaurentPoly kept(sum.var(), sum.order());
    for (const auto& [e, c] : sum.terms())
      if (cmp(e, *ord) <= 0) kept.add_term(e, c);
    sum = kept;
  }
  return TruncSeries(sum, ord);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  bool a_zero_exact = !a.order_ && a.known_.is_zero();
  bool b_zero_exact = !b.order_ && b.known_.is_zero();
  if (a_zero_exact || b_zero_exact) return TruncSeries(LaurentPoly(a.known_.var()), std::nullopt);

  std::optional<Rat> ord;
  auto tighten = [&ord](const Rat& candidate) {
    if (!ord || cmp(candidate, *ord) < 0) ord = candidate;
  };
  if (a.order_) tighten(*a.order_ + b.lowest_exponent());
  if (b.order_) tighten(*b.order_ + a.lowest_exponent());

  LaurentPoly prod = a.known_ * b.known_;
  if (ord) {
    LaurentPoly kept(prod.var(), prod.order());
    for (const auto& [e, c] : prod.terms())
      if (cmp(e, *ord) <= 0) kept.add_term(e, c);
    prod = kept;
  }
  return TruncSeries(prod, ord);
}

TruncSeries binom_expand(const Rat& alpha, unsigned K) {
  LaurentPoly p("z", 1);
  for (unsigned j = 0; j <= K; ++j) p.add_term(Rat(j), rat_binomial(alpha, j));
  bool finite = alpha.get_den() == 1 && sgn(alpha) >= 0 && cmp(alpha, K) <= 0;
  return TruncSeries(p, finite ? std::nullopt : std::optional<Rat>(Rat(K)));
}

Rat residue(const LaurentPoly& p) { return p.coefficient(Rat(-1)); }

Rat residue(const TruncSeries& s) {
  if (!s.certified_at(Rat(-1)))
    throw UncertifiedResidue("residue: truncation order " + to_string(*s.order()) +
                             " does not reach exponent -1");
  return s.known().coefficient(Rat(-1));
}

Rat residue_after_mobius(const TruncSeries& g) {
  if (!g.certified_at(Rat(-1))) throw UncertifiedResidue("residue_after_mobius: g not certified at -1");
  // g(f(z0)) f'(z0) = sum_n g_n (-1)^{n+1} z0^n (1+z0)^{-n-2}. Only terms with
  // n <= -1 can reach z0^{-1}; every such n is known because order >= -1.
  TruncSeries total(LaurentPoly("z0"), std::nullopt);
  for (const auto& [n, gn] : g.known().terms()) {
    if (n.get_den() != 1) throw std::invalid_argument("residue_after_mobius: integer exponents only");
    if (cmp(n, -1) > 0) continue;
    long ni = n.get_num().get_si();
    unsigned need = static_cast<unsigned>(-ni);  // coefficient of z0^{-1-n} is needed
    TruncSeries piece = binom_expand(Rat(-ni - 2), need).shifted(n);
    piece *= ((ni + 1) % 2 == 0 ? Rat(1) : Rat(-1)) * gn;
    total = total + piece;
  }
  return residue(total);
}

// ---- LaurentPoly2 ---------------------------------------------------------

void LaurentPoly2::add_term(const Rat& e1, const Rat& e2, const Rat& coef) {
  if (sgn(coef) == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{e1, e2}, coef);
  if (!inserted) {
    it->second += coef;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

LaurentPoly2 expand_difference_power(int power, Region region, unsigned max_terms) {
  LaurentPoly2 out;
  unsigned limit = power >= 0 ? static_cast<unsigned>(power) : max_terms;
  for (unsigned j = 0; j <= limit; ++j) {
    Rat c = rat_binomial(Rat(power), j);
    if (region == Region::first_dominant) {
      // z1^{power-j} (-z2)^j
      out.add_term(Rat(power - static_cast<long>(j)), Rat(j), (j % 2 ? -c : c));
    } else {
      // (-z2 + z1)^{power} = sum_j C(power,j) (-z2)^{power-j} z1^j
      Rat sign = ((power - static_cast<long>(j)) % 2 == 0) ? Rat(1) : Rat(-1);
      out.add_term(Rat(j), Rat(power - static_cast<long>(j)), sign * c);
    }
  }
  return out;
}

// ---- identities -----------------------------------------------------------

LaurentPoly identity_unit_sum(int l) {
  LaurentPoly total("z");
  for (int m = 0; m <= l; ++m) {
    LaurentPoly bracket = LaurentPoly::one_plus_z_pow(l + 1) * Rat(m % 2 ? -1 : 1);
    bracket -= LaurentPoly::one_plus_z_pow(m) * Rat(l % 2 ? -1 : 1);
    bracket *= rat_binomial(m + l, l);
    total += bracket.shifted(Rat(-(l + m + 1)));
  }
  return total;
}

bool check_identity_unit(int l) { return identity_unit_sum(l) == LaurentPoly::constant(Rat(1)); }

LaurentPoly check_identity_L(int l) {
  LaurentPoly total("z");
  for (int m = 0; m <= l; ++m) {
    LaurentPoly numer("z");
    numer.add_term(Rat(1), Rat(m));
    numer.add_term(Rat(0), Rat(l + m + 1));
    numer *= rat_binomial(m + l, l) * (m % 2 ? -1 : 1);
    total += numer.shifted(Rat(-(l + m + 2)));
  }
  return total;
}

Rat identity_L_constant(int l) { return Rat(l % 2 ? -1 : 1) * (2 * l + 1) * rat_binomial(2 * l, l); }

Rat identity_L_printed_constant(int l) {
  return Rat(l % 2 ? -1 : 1) * rat_binomial(2 * l + 1, l) * (2 * l + 1);
}

Rat check_binom_vanish(int l, int k) {
  if (l < 0 || k < 0 || k > l) throw std::invalid_argument("check_binom_vanish: need 0 <= k <= l");
  Rat sum(0);
  for (int m = 0; m <= k; ++m) sum += rat_binomial(m + l, l) * rat_binomial(-l - m - 1, k - m);
  return sum;
}

LaurentPoly2 associativity_sum(int l) {
  LaurentPoly2 total;
  for (int m1 = 0; m1 <= l; ++m1) {
    LaurentPoly2 inner;
    for (int i = 0; i <= l - m1; ++i)
      for (int j = 0; j <= m1; ++j) {
        Rat c = rat_binomial(-l - m1 - 1, i) * rat_binomial(m1, j) * (i % 2 ? -1 : 1);
        inner.add_term(Rat(-(i + m1)), Rat(i + j), c);
      }
    inner.add_term(Rat(-m1), Rat(0), Rat(-1));
    LaurentPoly2 scale;
    scale.add_term(Rat(0), Rat(0), rat_binomial(m1 + l, l) * (m1 % 2 ? -1 : 1));
    total += scale * inner;
  }
  return total;
}

bool check_associativity_sum(int l) { return associativity_sum(l).is_zero(); }

}  // namespace twistzhu
