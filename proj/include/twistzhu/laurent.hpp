// Finite Laurent objects with exponents in (1/T)Z, residues, and the
// combinatorial identities used by the product formulas.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "twistzhu/rational.hpp"

namespace twistzhu {

/// Finite-support Laurent polynomial in one variable. Zero coefficients are
/// never stored.
class LaurentPoly {
 public:
  using Terms = std::map<Rat, Rat>;

  explicit LaurentPoly(std::string var = "z", int T = 1) : var_(std::move(var)), T_(T) {}

  static LaurentPoly monomial(const Rat& coef, const Rat& exp, std::string var = "z", int T = 1);
  static LaurentPoly constant(const Rat& c, std::string var = "z") { return monomial(c, Rat(0), std::move(var)); }
  /// (1 + z)^k for k >= 0.
  static LaurentPoly one_plus_z_pow(unsigned k, std::string var = "z");

  const Terms& terms() const { return terms_; }
  const std::string& var() const { return var_; }
  int order() const { return T_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rat coefficient(const Rat& exp) const;

  void add_term(const Rat& exp, const Rat& coef);
  LaurentPoly derivative() const;
  /// Multiplies by z^shift.
  LaurentPoly shifted(const Rat& shift) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rat& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rat& c) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  void check_exponent(const Rat& exp) const;

  std::string var_;
  int T_;
  Terms terms_;
};

/// A series known exactly for exponents <= order(); higher exponents were
/// discarded. `order() == nullopt` means the object is an exact polynomial.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(LaurentPoly known, std::optional<Rat> order) : known_(std::move(known)), order_(std::move(order)) {}

  const LaurentPoly& known() const { return known_; }
  const std::optional<Rat>& order() const { return order_; }
  bool certified_at(const Rat& exp) const { return !order_ || cmp(exp, *order_) <= 0; }
  Rat lowest_exponent() const;

  TruncSeries shifted(const Rat& shift) const;
  TruncSeries& operator*=(const Rat& c);
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

 private:
  LaurentPoly known_;
  std::optional<Rat> order_;
};

/// Raised when a residue would depend on discarded coefficients.
class UncertifiedResidue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sum_{j=0}^{K} C(alpha, j) z^j. Exact (no order) when alpha is a
/// nonnegative integer <= K.
TruncSeries binom_expand(const Rat& alpha, unsigned K);

Rat residue(const LaurentPoly& p);
Rat residue(const TruncSeries& s);

/// Res_z g(z) computed as Res_{z0} g(f(z0)) f'(z0) with f(z0) = -z0/(1+z0).
/// `g` must have integer exponents and must be certified through exponent -1.
Rat residue_after_mobius(const TruncSeries& g);

/// Bivariate Laurent polynomial used for the two-variable identities.
class LaurentPoly2 {
 public:
  using Key = std::pair<Rat, Rat>;
  using Terms = std::map<Key, Rat>;

  void add_term(const Rat& e1, const Rat& e2, const Rat& coef);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly2& operator+=(const LaurentPoly2& o);
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);

 private:
  Terms terms_;
};

enum class Region {
  /// |z1| > |z2|: expand in nonnegative powers of z2.
  first_dominant,
  /// |z2| > |z1|: expand in nonnegative powers of z1.
  second_dominant,
};

/// (z1 - z2)^{power} expanded in the given region, keeping the expansion
/// terms with index j <= max_terms. Exact when power >= 0.
LaurentPoly2 expand_difference_power(int power, Region region, unsigned max_terms);

/// sum_{m=0}^{l} C(m+l,l) [(-1)^m (1+z)^{l+1} - (-1)^l (1+z)^m] / z^{l+m+1}
LaurentPoly identity_unit_sum(int l);
bool check_identity_unit(int l);

/// sum_{m=0}^{l} (-1)^m C(m+l,l) (m z + l + m + 1) / z^{l+m+2}
LaurentPoly check_identity_L(int l);
/// (-1)^l (2l+1) C(2l,l): the coefficient the sum above actually has.
Rat identity_L_constant(int l);
/// (-1)^l C(2l+1,l)(2l+1): the constant as printed in the source derivation.
Rat identity_L_printed_constant(int l);

/// sum_{m=0}^{k} C(m+l,l) C(-l-m-1,k-m)
Rat check_binom_vanish(int l, int k);

/// The bivariate sum that must vanish identically for star associativity.
LaurentPoly2 associativity_sum(int l);
bool check_associativity_sum(int l);

}  // namespace twistzhu
