#include "twistzhu/rational.hpp"

#include <charconv>
#include <map>
#include <string>

namespace twistzhu {

Rat rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!valid_integer(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rat parse_rat(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(s));
  mpz_class num = parse_integer(s.substr(0, slash));
  std::string_view den_str = s.substr(slash + 1);
  if (!den_str.empty() && den_str.front() == '-')
    throw std::invalid_argument("negative denominator in '" + std::string(s) + "'");
  mpz_class den = parse_integer(den_str);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_binomial(const Rat& alpha, unsigned j) {
  Rat acc(1);
  for (unsigned k = 0; k < j; ++k) {
    acc *= alpha - k;
    acc /= k + 1;
  }
  return acc;
}

Rat rat_binomial(long alpha, unsigned j) { return rat_binomial(Rat(alpha), j); }

int delta(int i, int r, int T) {
  if (T <= 0) throw std::invalid_argument("delta: T must be positive");
  if (r < 0 || r > T) throw std::invalid_argument("delta: r must lie in [0, T]");
  if (i < 0 || i > T - 1) throw std::invalid_argument("delta: i must lie in [0, T-1]");
  return i >= r ? 1 : 0;
}

FracExp::FracExp(Rat value, int T) : value_(std::move(value)), T_(T) {
  if (T <= 0) throw std::invalid_argument("FracExp: T must be positive");
  Rat scaled = value_ * T;
  if (scaled.get_den() != 1)
    throw std::invalid_argument("FracExp: " + to_string(value_) + " is not in (1/" +
                                std::to_string(T) + ")Z");
}

long FracExp::scaled() const {
  Rat s = value_ * T_;
  return s.get_num().get_si();
}

int FracExp::twice() const {
  Rat s = value_ * 2;
  if (s.get_den() != 1) throw std::invalid_argument("FracExp: not a half-integer");
  return static_cast<int>(s.get_num().get_si());
}

std::string ModIndex::label() const {
  return std::to_string(l) + "+" + std::to_string(i) + "/" + std::to_string(T);
}

ModIndex decompose_n(const Rat& n, int T) {
  if (T <= 0) throw std::invalid_argument("decompose_n: T must be positive");
  if (sgn(n) < 0) throw std::invalid_argument("decompose_n: n must be nonnegative");
  Rat scaled = n * T;
  if (scaled.get_den() != 1)
    throw std::invalid_argument("decompose_n: " + to_string(n) + " is not in (1/" +
                                std::to_string(T) + ")Z");
  long s = scaled.get_num().get_si();
  return ModIndex{static_cast<int>(s / T), static_cast<int>(s % T), T};
}

ModIndex lower_index(const ModIndex& n) {
  if (n.l == 0 && n.i == 0) throw std::invalid_argument("lower_index: n = 0 has no lower index");
  return decompose_n(n.value() - rat(1, n.T), n.T);
}

ModIndex parse_mod_index(std::string_view s, int T) {
  if (s.find('=') == std::string_view::npos) return decompose_n(parse_rat(s), T);

  std::map<std::string, long> fields;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string_view part = s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos);
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("malformed index '" + std::string(s) + "'");
    std::string key(part.substr(0, eq));
    std::string_view val = part.substr(eq + 1);
    long v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size())
      throw std::invalid_argument("malformed index '" + std::string(s) + "'");
    fields[key] = v;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (!fields.count("l") || !fields.count("i"))
    throw std::invalid_argument("index needs l= and i= fields: '" + std::string(s) + "'");
  long t = fields.count("T") ? fields["T"] : T;
  if (t != T) throw std::invalid_argument("index T does not match the automorphism order");
  long l = fields["l"], i = fields["i"];
  if (l < 0 || i < 0 || i >= T) throw std::invalid_argument("index out of range: '" + std::string(s) + "'");
  return ModIndex{static_cast<int>(l), static_cast<int>(i), T};
}

}  // namespace twistzhu
