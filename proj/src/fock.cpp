#include "twistzhu/fock.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace twistzhu {

std::string to_string(Sector s) { return s == Sector::untwisted ? "untwisted" : "twisted"; }

// ---- FockBasisKey ---------------------------------------------------------

FockBasisKey::FockBasisKey(std::vector<int> depths2) : depths2_(std::move(depths2)) {
  for (int d : depths2_)
    if (d <= 0) throw std::invalid_argument("FockBasisKey: depths must be positive");
  std::sort(depths2_.begin(), depths2_.end(), std::greater<>());
  weight2_ = std::accumulate(depths2_.begin(), depths2_.end(), 0);
}

std::string FockBasisKey::label() const {
  std::string s;
  for (int d : depths2_) s += "a(-" + to_string(rat(d, 2)) + ")";
  return s + "|0>";
}

// ---- FockVector -----------------------------------------------------------

FockVector FockVector::basis(const FockBasisKey& k, Sector s, const Rat& c) {
  FockVector v(s);
  v.add(k, c);
  return v;
}

void FockVector::check_key(const FockBasisKey& k) const {
  int want = sector_ == Sector::untwisted ? 0 : 1;
  for (int d : k.depths2())
    if ((d & 1) != want)
      throw std::invalid_argument("FockVector: depth " + twistzhu::to_string(rat(d, 2)) +
                                  " not allowed in the " + twistzhu::to_string(sector_) + " sector");
}

Rat FockVector::coefficient(const FockBasisKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rat(0) : it->second;
}

int FockVector::max_weight2() const { return terms_.empty() ? -1 : terms_.rbegin()->first.weight2(); }

bool FockVector::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.weight2() == terms_.rbegin()->first.weight2();
}

void FockVector::add(const FockBasisKey& k, const Rat& c) {
  if (sgn(c) == 0) return;
  check_key(k);
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& o) {
  if (o.sector_ != sector_ && !o.is_zero()) throw std::invalid_argument("FockVector: sector mismatch");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  if (o.sector_ != sector_ && !o.is_zero()) throw std::invalid_argument("FockVector: sector mismatch");
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

FockVector& FockVector::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

FockVector FockVector::weight_component(int weight2) const {
  FockVector out(sector_);
  for (const auto& [k, c] : terms_)
    if (k.weight2() == weight2) out.terms_.emplace(k, c);
  return out;
}

std::string FockVector::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << twistzhu::to_string(c) << ")" << k.label();
  }
  return os.str();
}

namespace vec {

FockVector alpha(std::vector<int> depths) {
  for (int& d : depths) d *= 2;
  return FockVector::basis(FockBasisKey(std::move(depths)), Sector::untwisted);
}

FockVector twisted(std::vector<int> depths2) {
  return FockVector::basis(FockBasisKey(std::move(depths2)), Sector::twisted);
}

FockVector omega() { return FockVector::basis(FockBasisKey({2, 2}), Sector::untwisted, rat(1, 2)); }

}  // namespace vec

namespace {

void partitions(int remaining, int max_part, int step, std::vector<int>& cur,
                std::vector<FockBasisKey>& out) {
  out.emplace_back(cur);
  int start = std::min(max_part, remaining);
  if ((max_part - start) % step) --start;
  for (int p = start; p > 0; p -= step) {
    cur.push_back(p);
    partitions(remaining - p, p, step, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FockBasisKey> basis_keys(Sector s, int max_weight2) {
  std::vector<FockBasisKey> out;
  std::vector<int> cur;
  int top = max_weight2;
  if (s == Sector::untwisted && top % 2) --top;
  if (s == Sector::twisted && top % 2 == 0) --top;
  if (max_weight2 >= 0) partitions(max_weight2, std::max(top, 0), 2, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- Heisenberg modes -----------------------------------------------------

FockVector heisenberg(int m2, const FockVector& w) {
  FockVector out(w.sector());
  if (m2 == 0) return out;
  for (const auto& [k, c] : w.terms()) {
    std::vector<int> d = k.depths2();
    if (m2 < 0) {
      d.push_back(-m2);
      out.add(FockBasisKey(std::move(d)), c);
    } else {
      auto cnt = std::count(d.begin(), d.end(), m2);
      if (cnt == 0) continue;
      d.erase(std::find(d.begin(), d.end(), m2));
      out.add(FockBasisKey(std::move(d)), c * rat(m2, 2) * static_cast<long>(cnt));
    }
  }
  return out;
}

// ---- VoaContext -----------------------------------------------------------

struct VoaContext::Memo {
  std::mutex mu;
  int c_degree = -1;
  std::vector<std::vector<Rat>> c;  // c[m][n]
  std::map<FockBasisKey, std::vector<std::pair<int, FockVector>>> exp_delta;

  void ensure_c(int degree) {
    if (degree <= c_degree) return;
    // s(x,y) = ((1+x)^{1/2} + (1+y)^{1/2})/2 - 1, truncated at total degree D.
    int D = degree;
    using Grid = std::vector<std::vector<Rat>>;
    auto zero = [D] { return Grid(D + 1, std::vector<Rat>(D + 1, Rat(0))); };
    Grid s = zero();
    for (int j = 1; j <= D; ++j) {
      Rat b = rat_binomial(rat(1, 2), j) / 2;
      s[j][0] = b;
      s[0][j] = b;
    }
    auto mul = [&](const Grid& a, const Grid& b) {
      Grid r = zero();
      for (int i1 = 0; i1 <= D; ++i1)
        for (int j1 = 0; i1 + j1 <= D; ++j1) {
          if (sgn(a[i1][j1]) == 0) continue;
          for (int i2 = 0; i1 + i2 <= D; ++i2)
            for (int j2 = 0; i1 + j1 + i2 + j2 <= D; ++j2)
              if (sgn(b[i2][j2]) != 0) r[i1 + i2][j1 + j2] += a[i1][j1] * b[i2][j2];
        }
      return r;
    };
    // -log(1+s) = sum_{k>=1} (-1)^k s^k / k
    Grid total = zero();
    Grid power = s;
    for (int k = 1; k <= D; ++k) {
      Rat f = Rat(k % 2 ? -1 : 1) / k;
      for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) total[i][j] += f * power[i][j];
      if (k < D) power = mul(power, s);
    }
    c = std::move(total);
    c_degree = D;
  }
};

VoaContext::VoaContext(int T, int cutoff) : T_(T), cutoff_(cutoff), memo_(std::make_shared<Memo>()) {
  if (T != 1 && T != 2) throw std::invalid_argument("VoaContext: automorphism order must be 1 or 2");
  if (cutoff < 0) throw std::invalid_argument("VoaContext: cutoff must be nonnegative");
}

Rat VoaContext::delta_coefficient(int m, int n) const {
  if (m < 0 || n < 0) throw std::invalid_argument("delta_coefficient: negative index");
  std::lock_guard lock(memo_->mu);
  memo_->ensure_c(std::max(m + n, 2));
  return memo_->c[m][n];
}

const std::vector<std::pair<int, FockVector>>& VoaContext::exp_delta(const FockBasisKey& k) const {
  std::lock_guard lock(memo_->mu);
  if (auto it = memo_->exp_delta.find(k); it != memo_->exp_delta.end()) return it->second;

  int wt = k.weight2() / 2;
  memo_->ensure_c(std::max(wt, 2));
  const auto& c = memo_->c;

  std::map<int, FockVector> by_drop;
  FockVector term = FockVector::basis(k);
  for (int j = 0; !term.is_zero(); ++j) {
    if (j > 0) {
      FockVector next;
      for (const auto& [key, coef] : term.terms()) {
        FockVector single = FockVector::basis(key, Sector::untwisted, coef);
        std::vector<int> distinct = key.depths2();
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int n2 : distinct) {
          FockVector once = heisenberg(n2, single);
          std::vector<int> remaining;
          for (const auto& [k2, c2] : once.terms()) remaining = k2.depths2();
          remaining.erase(std::unique(remaining.begin(), remaining.end()), remaining.end());
          for (int m2 : remaining) {
            Rat cmn = c[m2 / 2][n2 / 2];
            if (sgn(cmn) == 0) continue;
            next += heisenberg(m2, once) * cmn;
          }
        }
      }
      term = next * Rat(1, j);
    }
    for (const auto& [key, coef] : term.terms()) {
      int drop = k.weight2() - key.weight2();
      auto [it, _] = by_drop.try_emplace(drop, Sector::untwisted);
      it->second.add(key, coef);
    }
  }
  std::vector<std::pair<int, FockVector>> out;
  for (auto& [d, v] : by_drop)
    if (!v.is_zero()) out.emplace_back(d, std::move(v));
  return memo_->exp_delta.emplace(k, std::move(out)).first->second;
}

// ---- involution -----------------------------------------------------------

FockVector theta_act(const FockVector& v) {
  if (v.sector() != Sector::untwisted) throw std::invalid_argument("theta_act: untwisted input required");
  FockVector out(Sector::untwisted);
  for (const auto& [k, c] : v.terms()) out.add(k, k.parity() ? -c : c);
  return out;
}

FockVector eigen_component(const FockVector& v, int r, int T) {
  if (T != 1 && T != 2) throw std::invalid_argument("eigen_component: T must be 1 or 2");
  if (r < 0 || r >= T) throw std::invalid_argument("eigen_component: r out of range");
  if (T == 1) return v;
  FockVector out(v.sector());
  for (const auto& [k, c] : v.terms())
    if (k.parity() == r) out.add(k, c);
  return out;
}

// ---- Wick expansion -------------------------------------------------------

namespace {

/// C(q/2, j), cached per thread.
const Rat& half_binomial(int q2, int j) {
  thread_local std::map<std::pair<int, int>, Rat> cache;
  auto key = std::make_pair(q2, j);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, rat_binomial(rat(q2, 2), static_cast<unsigned>(j))).first;
  return it->second;
}

/// Coefficient of z^{-k-1} in the normal-ordered product of the fields
/// d^{(n_j-1)} alpha(z) (one per factor of `u`), applied to the monomial
/// `w`. Modes run over Z \ {0} (untwisted) or Z + 1/2 (twisted).
void wick_apply(const FockBasisKey& u, int k2, const FockBasisKey& w, const Rat& coef, Sector sector,
                int cutoff2, FockVector& out) {
  const int target = k2 + 2 - u.weight2();  // doubled sum of all mode indices
  const int out_weight2 = w.weight2() - target;
  if (u.is_vacuum()) {
    if (target == 0) out.add(w, coef);
    return;
  }
  if (out_weight2 < 0) return;
  if (out_weight2 > cutoff2)
    throw CutoffOverflow("mode action needs weight " + to_string(rat(out_weight2, 2)) +
                         " above cutoff " + to_string(rat(cutoff2, 2)));

  const bool twisted = sector == Sector::twisted;
  using State = std::tuple<int, std::vector<int>, std::vector<int>>;  // (sum2, unconsumed w, created)
  std::map<State, Rat> cur;
  cur.emplace(State{0, w.depths2(), {}}, coef);

  const auto& factors = u.depths2();
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const int n = factors[j] / 2;
    const bool last = j + 1 == factors.size();
    std::map<State, Rat> next;
    for (const auto& [state, c] : cur) {
      const auto& [s2, ann, cre] = state;
      const int need = target - s2;
      const int avail = std::accumulate(ann.begin(), ann.end(), 0);

      // annihilation: alpha(m) with m = d/2 contracts one alpha(-d/2) of w
      for (std::size_t a = 0; a < ann.size(); ++a) {
        if (a > 0 && ann[a] == ann[a - 1]) continue;
        const int d = ann[a];
        if (last ? d != need : need - d > avail - d) continue;
        const Rat& b = half_binomial(-d - 2, n - 1);
        if (sgn(b) == 0) continue;
        long mult = std::count(ann.begin(), ann.end(), d);
        std::vector<int> rest = ann;
        rest.erase(rest.begin() + static_cast<long>(a));
        Rat f = c * b * rat(d, 2) * mult;
        auto [it, ins] = next.try_emplace(State{s2 + d, std::move(rest), cre}, f);
        if (!ins) it->second += f;
      }

      // creation: alpha(m) with m < 0; only fields with nonzero C(-m-1, n-1)
      int hi = twisted ? -1 : -2 * n;
      int lo = last ? need : need - avail;
      if (last && (need > hi)) continue;
      for (int m2 = hi; m2 >= lo; --m2) {
        if (twisted ? (m2 % 2 == 0) : (m2 % 2 != 0)) continue;
        if (last && m2 != need) continue;
        const Rat& b = half_binomial(-m2 - 2, n - 1);
        if (sgn(b) == 0) continue;
        std::vector<int> made = cre;
        made.insert(std::upper_bound(made.begin(), made.end(), -m2, std::greater<>()), -m2);
        Rat f = c * b;
        auto [it, ins] = next.try_emplace(State{s2 + m2, ann, std::move(made)}, f);
        if (!ins) it->second += f;
      }
    }
    cur = std::move(next);
  }

  for (const auto& [state, c] : cur) {
    const auto& [s2, ann, cre] = state;
    if (s2 != target || sgn(c) == 0) continue;
    std::vector<int> d = ann;
    d.insert(d.end(), cre.begin(), cre.end());
    out.add(FockBasisKey(std::move(d)), c);
  }
}

}  // namespace

FockVector mode_act2(const VoaContext& ctx, const FockVector& u, int k2, const FockVector& w) {
  if (u.sector() != Sector::untwisted) throw std::invalid_argument("mode_act: u must lie in V");
  FockVector out(w.sector());
  if (w.sector() == Sector::untwisted) {
    if (k2 % 2 != 0) throw std::invalid_argument("mode_act: untwisted modes are integral");
    for (const auto& [uk, uc] : u.terms())
      for (const auto& [wk, wc] : w.terms()) wick_apply(uk, k2, wk, uc * wc, Sector::untwisted, ctx.cutoff2(), out);
    return out;
  }

  if (ctx.order() != 2) throw std::invalid_argument("mode_act: twisted module needs automorphism order 2");
  for (const auto& [uk, uc] : u.terms()) {
    if ((std::abs(k2) % 2) != uk.parity())
      throw std::invalid_argument("mode_act: mode " + to_string(rat(k2, 2)) + " not in the coset of " +
                                  uk.label());
    for (const auto& [d2, comp] : ctx.exp_delta(uk))
      for (const auto& [xk, xc] : comp.terms())
        for (const auto& [wk, wc] : w.terms())
          wick_apply(xk, k2 - d2, wk, uc * xc * wc, Sector::twisted, ctx.cutoff2(), out);
  }
  return out;
}

FockVector mode_act(const VoaContext& ctx, const FockVector& u, const FracExp& k, const FockVector& w) {
  return mode_act2(ctx, u, k.twice(), w);
}

// ---- iterate-formula path -------------------------------------------------

namespace {

FockVector iterate_key(const VoaContext& ctx, const FockBasisKey& u, int k, const FockVector& w) {
  FockVector out(Sector::untwisted);
  if (w.is_zero()) return out;
  if (u.is_vacuum()) return k == -1 ? w : out;

  // u = alpha(-n) x; (a_{-n} x)_k = sum_i (-1)^i C(-n,i) [a_{-n-i} x_{k+i} - (-1)^n x_{k-n-i} a_i]
  const int n = u.depths2().front() / 2;
  FockBasisKey x(std::vector<int>(u.depths2().begin() + 1, u.depths2().end()));
  const int wt_x = x.weight2() / 2;
  const int deg_w = w.max_weight2() / 2;
  if (wt_x + deg_w - k - 1 + n < 0) return out;
  if (2 * (wt_x + deg_w - k - 1 + n) > ctx.cutoff2())
    throw CutoffOverflow("iterate path exceeds cutoff");

  for (int i = 0; i <= wt_x + deg_w - k - 1; ++i) {
    Rat b = rat_binomial(-n, static_cast<unsigned>(i)) * (i % 2 ? -1 : 1);
    FockVector inner = iterate_key(ctx, x, k + i, w);
    out += heisenberg(-2 * (n + i), inner) * b;
  }
  Rat sign_n = n % 2 ? Rat(1) : Rat(-1);  // -(-1)^n
  for (int i = 1; i <= deg_w; ++i) {
    FockVector lowered = heisenberg(2 * i, w);
    if (lowered.is_zero()) continue;
    Rat b = rat_binomial(-n, static_cast<unsigned>(i)) * (i % 2 ? -1 : 1) * sign_n;
    out += iterate_key(ctx, x, k - n - i, lowered) * b;
  }
  return out;
}

}  // namespace

FockVector mode_act_iterate(const VoaContext& ctx, const FockVector& u, int k, const FockVector& w) {
  if (u.sector() != Sector::untwisted || w.sector() != Sector::untwisted)
    throw std::invalid_argument("mode_act_iterate: untwisted sector only");
  FockVector out(Sector::untwisted);
  for (const auto& [uk, uc] : u.terms()) out += iterate_key(ctx, uk, k, w) * uc;
  return out;
}

FockVector L(const VoaContext& ctx, int n, const FockVector& w) {
  static const FockVector om = vec::omega();
  return mode_act2(ctx, om, 2 * (n + 1), w);
}

// ---- Jacobi identity ------------------------------------------------------

namespace {

int coset_of(const FockVector& u, Sector s) {
  if (s == Sector::untwisted || u.is_zero()) return 0;
  int p = u.terms().begin()->first.parity();
  for (const auto& [k, c] : u.terms())
    if (k.parity() != p) throw std::invalid_argument("verify_twisted_jacobi: u must lie in one eigenspace");
  return p;
}

}  // namespace

bool borcherds_holds(const VoaContext& ctx, const FockVector& u, const FockVector& v, const FockVector& w,
                     int m2, int n2, int p) {
  const int wt_u2 = u.max_weight2(), wt_v2 = v.max_weight2(), deg_w2 = w.max_weight2();
  if (wt_u2 < 0 || wt_v2 < 0 || deg_w2 < 0) return true;
  const Rat m = rat(m2, 2);

  // sum_i C(m,i) (u_{p+i} v)_{m+n-i} w
  FockVector lhs(w.sector());
  for (int i = 0; 2 * (p + i) <= wt_u2 + wt_v2 - 2; ++i) {
    FockVector uv = mode_act2(ctx, u, 2 * (p + i), v);
    if (uv.is_zero()) continue;
    lhs += mode_act2(ctx, uv, m2 + n2 - 2 * i, w) * rat_binomial(m, static_cast<unsigned>(i));
  }

  // sum_i (-1)^i C(p,i) [u_{m+p-i} v_{n+i} w - (-1)^p v_{p+n-i} u_{m+i} w]
  FockVector rhs(w.sector());
  for (int i = 0; n2 + 2 * i <= wt_v2 + deg_w2 - 2; ++i) {
    FockVector vw = mode_act2(ctx, v, n2 + 2 * i, w);
    if (vw.is_zero()) continue;
    Rat b = rat_binomial(p, static_cast<unsigned>(i)) * (i % 2 ? -1 : 1);
    rhs += mode_act2(ctx, u, m2 + 2 * (p - i), vw) * b;
  }
  for (int i = 0; m2 + 2 * i <= wt_u2 + deg_w2 - 2; ++i) {
    FockVector uw = mode_act2(ctx, u, m2 + 2 * i, w);
    if (uw.is_zero()) continue;
    Rat b = rat_binomial(p, static_cast<unsigned>(i)) * (i % 2 ? -1 : 1) * (p % 2 ? 1 : -1);
    rhs += mode_act2(ctx, v, 2 * (p - i) + n2, uw) * b;
  }
  return lhs == rhs;
}

JacobiReport verify_twisted_jacobi(const VoaContext& ctx, const FockVector& u, const FockVector& v,
                                   const FockVector& w, int order) {
  JacobiReport rep;
  if (!u.is_homogeneous()) throw std::invalid_argument("verify_twisted_jacobi: u must be homogeneous");
  const int ru = coset_of(u, w.sector());
  const int rv = coset_of(v, w.sector());
  auto witness = [&](const char* family, int m2, int n2, int p) {
    std::ostringstream os;
    os << family << " m=" << to_string(rat(m2, 2)) << " n=" << to_string(rat(n2, 2)) << " p=" << p;
    return os.str();
  };

  for (int m2 = -2 * order; m2 <= 2 * order; ++m2) {
    if (std::abs(m2) % 2 != ru) continue;
    for (int n2 = -2 * order; n2 <= 2 * order; ++n2) {
      if (std::abs(n2) % 2 != rv) continue;
      ++rep.checked;
      if (!borcherds_holds(ctx, u, v, w, m2, n2, 0) && rep.ok) {
        rep.ok = false;
        rep.witness = witness("commutator", m2, n2, 0);
      }
    }
  }
  const int m2 = ru;  // m = r/T
  for (int p = -order; p <= order; ++p)
    for (int n2 = -2 * order; n2 <= 2 * order; ++n2) {
      if (std::abs(n2) % 2 != rv) continue;
      ++rep.checked;
      if (!borcherds_holds(ctx, u, v, w, m2, n2, p) && rep.ok) {
        rep.ok = false;
        rep.witness = witness("iterate", m2, n2, p);
      }
    }
  return rep;
}

}  // namespace twistzhu
