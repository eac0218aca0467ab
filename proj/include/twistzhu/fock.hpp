// Rank-one Heisenberg vertex operator algebra M(1), its involution
// alpha -> -alpha, the adjoint module and the theta-twisted Fock module.
//
// Depths are stored doubled ("half units") so that both sectors share one
// integer representation: untwisted depths are even, twisted depths are odd.
#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistzhu/rational.hpp"

namespace twistzhu {

enum class Sector { untwisted, twisted };

std::string to_string(Sector s);

/// alpha(-d_1/2) ... alpha(-d_k/2) |vac> with d_1 >= ... >= d_k > 0.
class FockBasisKey {
 public:
  FockBasisKey() = default;
  /// `depths2` are doubled depths in any order; they are sorted here.
  explicit FockBasisKey(std::vector<int> depths2);

  const std::vector<int>& depths2() const { return depths2_; }
  int weight2() const { return weight2_; }
  Rat weight() const { return rat(weight2_, 2); }
  std::size_t factors() const { return depths2_.size(); }
  bool is_vacuum() const { return depths2_.empty(); }
  /// Number of boson factors mod 2: the theta eigenspace index.
  int parity() const { return static_cast<int>(depths2_.size() % 2); }

  /// "a(-1)a(-2)|0>" style label.
  std::string label() const;

  /// Ordered by total weight, then lexicographically on the depth sequence.
  friend std::strong_ordering operator<=>(const FockBasisKey& a, const FockBasisKey& b) {
    if (auto c = a.weight2_ <=> b.weight2_; c != 0) return c;
    return a.depths2_ <=> b.depths2_;
  }
  friend bool operator==(const FockBasisKey& a, const FockBasisKey& b) { return a.depths2_ == b.depths2_; }

 private:
  std::vector<int> depths2_;
  int weight2_ = 0;
};

/// Exact finite linear combination of basis monomials in one sector.
class FockVector {
 public:
  using Terms = std::map<FockBasisKey, Rat>;

  explicit FockVector(Sector s = Sector::untwisted) : sector_(s) {}
  static FockVector basis(const FockBasisKey& k, Sector s = Sector::untwisted, const Rat& c = Rat(1));
  static FockVector vacuum(Sector s = Sector::untwisted) { return basis(FockBasisKey{}, s); }

  Sector sector() const { return sector_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rat coefficient(const FockBasisKey& k) const;
  /// Largest doubled weight present; -1 for the zero vector.
  int max_weight2() const;
  /// True when every term has the same weight.
  bool is_homogeneous() const;

  void add(const FockBasisKey& k, const Rat& c);
  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(const Rat& c);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(FockVector a, const Rat& c) { return a *= c; }
  friend FockVector operator*(const Rat& c, FockVector a) { return a *= c; }
  friend bool operator==(const FockVector& a, const FockVector& b) {
    return a.sector_ == b.sector_ && a.terms_ == b.terms_;
  }

  /// Component of doubled weight w2.
  FockVector weight_component(int weight2) const;

  std::string to_string() const;

 private:
  void check_key(const FockBasisKey& k) const;

  Sector sector_;
  Terms terms_;
};

/// Raised whenever an exact result would need weights above the cutoff.
class CutoffOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Convenience constructors for common untwisted vectors.
namespace vec {
/// alpha(-n_1)...alpha(-n_k)|0> with integer depths.
FockVector alpha(std::vector<int> depths);
/// theta-twisted alpha(-d_1/2)...|w0> given doubled depths (odd).
FockVector twisted(std::vector<int> depths2);
/// omega = (1/2) alpha(-1)^2 |0>.
FockVector omega();
}  // namespace vec

/// All basis keys of the given sector with doubled weight <= max_weight2,
/// in basis order.
std::vector<FockBasisKey> basis_keys(Sector s, int max_weight2);

/// Holds the automorphism order, the weight cutoff and the memo tables used
/// by the twisted vertex operators. Safe to share between threads.
class VoaContext {
 public:
  VoaContext(int T, int cutoff);

  int order() const { return T_; }
  int cutoff() const { return cutoff_; }
  int cutoff2() const { return 2 * cutoff_; }
  Rat central_charge() const { return Rat(1); }
  Rat twisted_conformal_weight() const { return rat(1, 16); }
  Sector module_sector() const { return T_ == 2 ? Sector::twisted : Sector::untwisted; }

  /// Coefficient c_{mn} of x^m y^n in -log(((1+x)^{1/2} + (1+y)^{1/2}) / 2).
  Rat delta_coefficient(int m, int n) const;

  /// e^{Delta} applied to a basis key, grouped by the weight it drops
  /// (doubled). Delta = sum_{m,n>=1} c_{mn} alpha(m) alpha(n).
  const std::vector<std::pair<int, FockVector>>& exp_delta(const FockBasisKey& k) const;

 private:
  struct Memo;

  int T_;
  int cutoff_;
  std::shared_ptr<Memo> memo_;
};

/// theta: each monomial with k factors picks up (-1)^k.
FockVector theta_act(const FockVector& v);

/// Projection onto V^r for the automorphism of order T (1 or 2).
FockVector eigen_component(const FockVector& v, int r, int T);

/// u_k w for u in V (untwisted sector) and w in either sector. In the
/// twisted sector every component of u in V^r must have k in r/2 + Z.
FockVector mode_act(const VoaContext& ctx, const FockVector& u, const FracExp& k, const FockVector& w);
/// Same with the mode given in half units (k = k2/2).
FockVector mode_act2(const VoaContext& ctx, const FockVector& u, int k2, const FockVector& w);

/// u_k w for untwisted w through the iterate formula applied factor by
/// factor. Independent from the Wick expansion used by mode_act.
FockVector mode_act_iterate(const VoaContext& ctx, const FockVector& u, int k, const FockVector& w);

/// Virasoro operator L(n) = omega_{n+1}.
FockVector L(const VoaContext& ctx, int n, const FockVector& w);

/// Heisenberg mode alpha(m) (m = m2/2) acting directly on a Fock vector.
FockVector heisenberg(int m2, const FockVector& w);

struct JacobiReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string witness;
  explicit operator bool() const { return ok; }
};

/// Coefficient-wise twisted Jacobi identity for u in V^r (homogeneous):
/// the commutator family [u_m, v_n] = sum_i C(m,i) (u_i v)_{m+n-i} and the
/// iterate family at m = r/T, for all indices with |index| <= order whose
/// resulting degree fits under the cutoff.
JacobiReport verify_twisted_jacobi(const VoaContext& ctx, const FockVector& u, const FockVector& v,
                                   const FockVector& w, int order);

/// Full three-index Borcherds identity for the given (m, n, p) in half units.
bool borcherds_holds(const VoaContext& ctx, const FockVector& u, const FockVector& v,
                     const FockVector& w, int m2, int n2, int p);

}  // namespace twistzhu
