// Zero-mode components of an intertwining operator between levels of the
// g-twisted module, and the homomorphism identities they satisfy.
//
// The only operator available from the backend is the module vertex
// operator itself, of type (W / V W) with W the g-twisted Fock module.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "twistzhu/bimod.hpp"

namespace twistzhu {

struct Intertwiner {
  Aut g = Aut::id;
  Sector sector = Sector::untwisted;  // of M1 = M2
  Rat h0{0}, h1{0}, h2{0};
  bool zero = false;

  /// h0 + h1 - h2, the z-power offset of the mode expansion.
  Rat offset() const { return h0 + h1 - h2; }
};

/// I = Y_W on the g-twisted module. h1 = h2 = 1/16 for theta, 0 for id.
Intertwiner adjoint_intertwiner(const ZhuContext& ctx);
/// Same type with every mode equal to zero.
Intertwiner zero_intertwiner(const ZhuContext& ctx);

/// w(n) w1 for w in M0 = V and w1 in M1. Components of w whose modes do not
/// live in n + Z contribute nothing.
FockVector intertwiner_mode(const VoaContext& voa, const Intertwiner& I, const FockVector& w, const Rat& n,
                            const FockVector& w1);

/// Basis of the degree-`level` subspace of the given sector.
std::vector<FockBasisKey> level_keys(Sector s, const Rat& level);

/// An operator sent a level-s vector outside level t.
class GradingViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A linear map M1(s) -> M2(t) as a dense matrix, rows indexed by target keys.
class GradedHom {
 public:
  GradedHom(Sector sector, Rat s, Rat t);

  const Rat& source_level() const { return s_; }
  const Rat& target_level() const { return t_; }
  const std::vector<FockBasisKey>& source() const { return source_; }
  const std::vector<FockBasisKey>& target() const { return target_; }
  const std::vector<std::vector<Rat>>& matrix() const { return matrix_; }
  Sector sector() const { return sector_; }

  /// Column for source key `col`; throws if `image` leaves the target level.
  void set_column(std::size_t col, const FockVector& image);
  FockVector apply(const FockVector& x) const;
  bool is_zero() const;

  /// (this o first): M1(first.s) -> M2(this.t).
  GradedHom compose(const GradedHom& first) const;
  GradedHom& operator+=(const GradedHom& o);
  friend bool operator==(const GradedHom& a, const GradedHom& b) {
    return a.sector_ == b.sector_ && a.s_ == b.s_ && a.t_ == b.t_ && a.matrix_ == b.matrix_;
  }

  /// Builds the matrix of `f` applied to each source basis vector.
  template <class F>
  static GradedHom of(Sector sector, const Rat& s, const Rat& t, F&& f) {
    GradedHom h(sector, s, t);
    for (std::size_t c = 0; c < h.source_.size(); ++c) h.set_column(c, f(FockVector::basis(h.source_[c], sector)));
    return h;
  }

 private:
  Sector sector_;
  Rat s_, t_;
  std::vector<FockBasisKey> source_, target_;
  std::vector<std::vector<Rat>> matrix_;
};

/// o^I_{t,s}(w) = w(deg w - 1 - t + s) : M1(s) -> M2(t), summed over the
/// homogeneous components of w.
GradedHom o_I(const VoaContext& voa, const Intertwiner& I, const FockVector& w, const Rat& t, const Rat& s);

/// o(u) on level m of the module.
GradedHom o_level(const ZhuContext& ctx, const FockVector& u, const Rat& m);

/// o^I(O(M)) = 0, o^I(u * w) = o(u) o^I(w), o^I(w * u) = o^I(w) o(u) for
/// pairs from the window. Levels must be at most n.
CheckReport check_pi_hom(const Intertwiner& I, const ZhuContext& ctx, const Rat& s, const Rat& t,
                         const Window& window);

struct ProbeResult {
  bool nonzero = false;
  std::string witness;
  explicit operator bool() const { return nonzero; }
};

/// Looks for a basis w of weight <= max_weight with o^I_{t,s}(w) != 0.
ProbeResult injectivity_probe(const Intertwiner& I, const ZhuContext& ctx, const Rat& s, const Rat& t,
                              int max_weight = 3);

}  // namespace twistzhu
