// Exact scalars and (1/T)Z index bookkeeping.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace twistzhu {

/// Arbitrary-precision rational. gmpxx keeps results canonical as long as
/// every value is built through `rat()` or `parse_rat()`.
using Rat = mpq_class;

Rat rat(long num, long den = 1);

/// "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rat& x);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument otherwise.
Rat parse_rat(std::string_view s);

/// alpha (alpha-1) ... (alpha-j+1) / j!
Rat rat_binomial(const Rat& alpha, unsigned j);
Rat rat_binomial(long alpha, unsigned j);

/// delta_i(r) = 1 iff i >= r, for 0 <= r <= T. delta_i(T) is always 0.
int delta(int i, int r, int T);

/// An element of (1/T)Z carried together with its denominator T.
class FracExp {
 public:
  FracExp() = default;
  FracExp(Rat value, int T);
  static FracExp from_twice(int twice) { return FracExp(rat(twice, 2), 2); }

  const Rat& value() const { return value_; }
  int order() const { return T_; }
  /// value * T as an integer.
  long scaled() const;
  /// 2 * value; throws if value is not in (1/2)Z.
  int twice() const;

  friend bool operator==(const FracExp& a, const FracExp& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const FracExp& a, const FracExp& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rat value_{0};
  int T_ = 1;
};

/// n = l + i/T with 0 <= i <= T-1.
struct ModIndex {
  int l = 0;
  int i = 0;
  int T = 1;

  Rat value() const { return Rat(l) + rat(i, T); }
  /// "l+i/T", the label used in reports.
  std::string label() const;
  bool operator==(const ModIndex&) const = default;
};

ModIndex decompose_n(const Rat& n, int T);

/// The index one step below n, i.e. n - 1/T. Throws for n = 0.
ModIndex lower_index(const ModIndex& n);

/// Parses either a rational ("3/2", "1") or "l=1,i=1,T=2".
ModIndex parse_mod_index(std::string_view s, int T);

}  // namespace twistzhu
