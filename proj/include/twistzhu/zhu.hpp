// Twisted Zhu algebras A_{g,n}(V) = V / O_{g,n}(V) for g in {id, theta},
// computed on the weight-truncated space V_{<=N}.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "twistzhu/check.hpp"
#include "twistzhu/fock.hpp"
#include "twistzhu/laurent.hpp"
#include "twistzhu/linalg.hpp"
#include "twistzhu/rational.hpp"

namespace twistzhu {

enum class Aut { id, theta };

std::string to_string(Aut g);
/// "id" or "theta"; throws std::invalid_argument otherwise.
Aut parse_aut(std::string_view s);
inline int aut_order(Aut g) { return g == Aut::id ? 1 : 2; }

/// Index r of the eigenspace V^r containing a monomial.
inline int eigen_index(const FockBasisKey& k, int T) { return T == 1 ? 0 : k.parity(); }

class ZhuContext {
 public:
  ZhuContext(Aut g, ModIndex n, int cutoff, unsigned threads = 1);
  ZhuContext(Aut g, const Rat& n, int cutoff, unsigned threads = 1);

  Aut aut() const { return g_; }
  int order() const { return n_.T; }
  const ModIndex& n() const { return n_; }
  int l() const { return n_.l; }
  int i() const { return n_.i; }
  int cutoff() const { return cutoff_; }
  unsigned threads() const { return threads_; }
  const VoaContext& voa() const { return voa_; }
  /// Sector of the g-twisted module W (twisted Fock for theta, M(1) for id).
  Sector module_sector() const { return voa_.module_sector(); }

  /// Same data at index n - 1/T. Throws for n = 0.
  ZhuContext lower() const;
  ZhuContext at_index(const ModIndex& n) const;

  /// Exponent of (1+z) in the circ kernel for u in V^r of weight wt.
  Rat circ_power(int wt, int r) const;
  /// Pole order 2l + delta_i(r) + delta_i(T-r) + 1 of the circ kernel.
  int circ_pole(int r) const;

 private:
  Aut g_;
  ModIndex n_;
  int cutoff_;
  unsigned threads_;
  VoaContext voa_;
};

/// u o_{g,n} v. Every term of u is treated as a homogeneous eigenvector.
FockVector circ_V(const ZhuContext& ctx, const FockVector& u, const FockVector& v);
/// u *_{g,n} v; zero on V^r for r != 0.
FockVector star_V(const ZhuContext& ctx, const FockVector& u, const FockVector& v);

/// The same products written as residues: the kernel for a term of u of
/// weight wt in V^r is built as a truncated series and contracted with
/// Y(u,z)w, with certification that no discarded coefficient contributes.
/// A kernel must be certified through exponent `reach`.
using ResidueKernel = std::function<TruncSeries(int wt, int r, int reach)>;
FockVector residue_product(const VoaContext& voa, const FockVector& u, const ResidueKernel& kernel,
                           const FockVector& w);
/// (1+z)^{wt+l-1+delta_i(r)+r/T} / z^{circ_pole(r)}, times (1+z)^k / z^m.
TruncSeries circ_kernel(const ZhuContext& ctx, int wt, int r, int reach, int k = 0, int m = 0);
/// sum_m (-1)^m C(m+l,l) (1+z)^{wt+l} / z^{l+m+1} for r = 0, and 0 otherwise.
TruncSeries star_kernel(const ZhuContext& ctx, int wt, int r, int reach);

struct Generator {
  std::string label;
  FockVector value;
};

/// u o v for basis u, v whose product fits under the cutoff, followed by
/// (L(-1) + L(0))u for wt u + 1 <= N. Zero products are dropped.
std::vector<Generator> span_O_V(const ZhuContext& ctx);

/// The algebra A_{g,n}(V) at cutoff, represented by canonical coset
/// representatives.
class ZhuAlgebra {
 public:
  explicit ZhuAlgebra(ZhuContext ctx);

  const ZhuContext& context() const { return ctx_; }
  const QuotientSpace& relations() const { return span_; }
  std::size_t generator_count() const { return generator_count_; }
  /// Upper bound on dim of the image of V_{<=N}.
  std::size_t dim() const { return span_.dim(); }

  FockVector reduce(const FockVector& x) const { return span_.reduce(x); }
  bool is_zero(const FockVector& x) const { return span_.contains(x); }
  /// [a][b] = [a * b], computed on canonical representatives.
  FockVector mul(const FockVector& a, const FockVector& b) const;

 private:
  ZhuContext ctx_;
  QuotientSpace span_;
  std::size_t generator_count_ = 0;
};

/// Test inputs: every basis monomial of weight <= max_weight, and seeded
/// rational combinations of them for the random tuples.
struct Window {
  std::vector<FockVector> basis;
  std::vector<FockVector> random;
  unsigned random_tuples = 0;

  /// All arity-tuples of basis vectors, then `random_tuples` tuples drawn
  /// from consecutive random combinations.
  std::vector<std::vector<const FockVector*>> tuples(int arity) const;
};

Window test_window(int max_weight, unsigned random_tuples = 0, std::uint64_t seed = 1);

/// Associativity of [u][v][w] over all triples from `window`.
CheckReport check_associativity(const ZhuAlgebra& A, const Window& window);

/// Relations of `upper` vanish in `lower`, and u * v agrees at both levels
/// modulo the lower relations for pairs from `window`. Rejects n = 0.
CheckReport surjection_check(const ZhuAlgebra& upper, const ZhuAlgebra& lower,
                             const Window& window);

/// e^{L(1)} (-1)^{L(0)} u.
FockVector phi(const VoaContext& voa, const FockVector& u);

/// phi maps relations into relations (theta and id are self-inverse) and
/// reverses products modulo relations on the window.
CheckReport phi_suite(const ZhuAlgebra& A, const Window& window);

/// Basis of Omega_n(W) in degrees <= N: vectors killed by u_{wt u - 1 + k}
/// for every basis u of weight <= N and every admissible k > n.
std::vector<FockVector> omega_filter(const ZhuContext& ctx);

/// o(v) w = v_{wt v - 1} w; components of v in V^r with r != 0 act by 0.
FockVector o_act(const ZhuContext& ctx, const FockVector& v, const FockVector& w);

/// o(O_{g,n}(V)) = 0 and o(u * v) = o(u) o(v) on M(m), m <= n.
CheckReport o_action_suite(const ZhuAlgebra& A, const Window& window);

/// Every basis vector of V^r (r != 0) within `max_weight` reduces to 0.
CheckReport odd_collapse_check(const ZhuAlgebra& A, int max_weight);

}  // namespace twistzhu
