// The A_{g,n}(V)-bimodule M / O_{g,n}(M) for the adjoint module M = V.
//
// M is untwisted, so Y_M is the vertex operator of V itself and the left
// product and circ agree with their algebra versions on the same vectors.
#pragma once

#include <string>
#include <vector>

#include "twistzhu/check.hpp"
#include "twistzhu/zhu.hpp"

namespace twistzhu {

/// u o_{g,n} w for w in M.
inline FockVector circ_M(const ZhuContext& ctx, const FockVector& u, const FockVector& w) { return circ_V(ctx, u, w); }
/// u *_{g,n} w (left action).
inline FockVector star_left(const ZhuContext& ctx, const FockVector& u, const FockVector& w) { return star_V(ctx, u, w); }
/// w *_{g,n} u = sum_m sum_j (-1)^l C(m+l,l) C(wt u+m-1, j) u_{j-m-l-1} w, zero for r != 0.
FockVector star_right(const ZhuContext& ctx, const FockVector& w, const FockVector& u);

/// sum_m (-1)^l C(m+l,l) (1+z)^{wt+m-1} / z^{l+m+1} for r = 0, and 0 otherwise.
TruncSeries star_right_kernel(const ZhuContext& ctx, int wt, int r, int reach);

/// u o w for basis u, w whose product fits under the cutoff.
std::vector<Generator> span_O_M(const ZhuContext& ctx);

class Bimodule {
 public:
  explicit Bimodule(ZhuContext ctx);

  const ZhuContext& context() const { return ctx_; }
  const QuotientSpace& relations() const { return span_; }
  std::size_t generator_count() const { return generator_count_; }
  /// Upper bound on dim of the image of M_{<=N}.
  std::size_t dim() const { return span_.dim(); }
  FockVector reduce(const FockVector& x) const { return span_.reduce(x); }
  bool is_zero(const FockVector& x) const { return span_.contains(x); }

 private:
  ZhuContext ctx_;
  QuotientSpace span_;
  std::size_t generator_count_ = 0;
};

/// Residues with the circ kernel raised by (1+z)^k / z^m, 0 <= k <= m <= max_m,
/// lie in O(M). Scans every basis pair that fits under the cutoff.
CheckReport shifted_kernel_check(const Bimodule& B, int max_m);

/// u * w - w * u - Res_z Y(u,z)w (1+z)^{wt u - 1} lies in O(M) for u in V^0.
CheckReport commutator_check(const Bimodule& B);

/// (L(-1)+L(0))u * w and w * (L(-1)+L(0))u lie in O(M).
CheckReport virasoro_relation_check(const Bimodule& B);

/// O(V) * M, M * O(V), V * O(M), O(M) * V all lie in O(M): every generator
/// paired with every basis vector whose product fits under the cutoff.
CheckReport ideal_check(const Bimodule& B);

/// The four bimodule identities on all triples from the window:
/// (u*w)*v = u*(w*v), 1*w = w*1 = w, (u*v)*w = u*(v*w), w*(u*v) = (w*u)*v.
CheckReport bimodule_axiom_suite(const Bimodule& B, const Window& window);

/// Relations of `upper` vanish in `lower`; left and right products at both
/// levels are equal when i >= 1 and congruent modulo the lower relations
/// when i = 0. Rejects n = 0.
CheckReport epi_lower(const Bimodule& upper, const Bimodule& lower, const Window& window);

/// phi(O(M)) in O(M), phi(u*w) = phi(w)*phi(u), phi(w*u) = phi(u)*phi(w).
CheckReport phi_M_suite(const Bimodule& B, const Window& window);

struct FiltrationReport {
  std::vector<std::string> levels;  // n, n - 1/T, ..., 0
  std::size_t dim_top = 0;          // dim A_{g,n}(M)
  std::size_t dim_bottom = 0;       // dim A_{g,0}(M)
  /// dim O_{n-s/T}(M) / O_{n-(s-1)/T}(M) for s = 1..nT, measured by
  /// extending the upper span with the lower generators.
  std::vector<std::size_t> subquotients;
  CheckReport chain;
  CheckReport additivity;
  CheckReport stability;
  bool ok() const { return chain.ok && additivity.ok && stability.ok; }
};

/// Builds every level below n and checks the filtration claims. Action
/// stability uses V^0 basis vectors of weight <= stability_weight.
FiltrationReport filtration_report(const ZhuContext& ctx, int stability_weight = 2);

}  // namespace twistzhu
