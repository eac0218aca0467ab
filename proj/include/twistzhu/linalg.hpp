// Sparse exact elimination over Q.
#pragma once

#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twistzhu/fock.hpp"
#include "twistzhu/rational.hpp"

namespace twistzhu {

/// Row-echelon span of sparse rational vectors keyed by an ordered `Key`.
/// The pivot of a row is its largest key; pivot coefficients are 1. Rows are
/// not inter-reduced, but `reduce` always eliminates every pivot key, so its
/// output is the unique representative supported on non-pivot keys.
template <class Key>
class Echelon {
 public:
  using Vec = std::map<Key, Rat>;

  /// Returns true when `v` was independent of the current span.
  bool insert(const Vec& v) {
    Vec r = reduce(v);
    if (r.empty()) return false;
    auto top = std::prev(r.end());
    Rat inv = 1 / top->second;
    for (auto& [k, c] : r) c *= inv;
    Key pivot = top->first;
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  Vec reduce(Vec w) const {
    if (rows_.empty() || w.empty()) return w;
    auto it = w.end();
    while (it != w.begin()) {
      --it;
      auto row = rows_.find(it->first);
      if (row == rows_.end()) continue;
      Key k = it->first;
      Rat c = it->second;
      for (const auto& [rk, rc] : row->second) {
        auto [pos, inserted] = w.try_emplace(rk, 0);
        pos->second -= c * rc;
        if (sgn(pos->second) == 0) w.erase(pos);
      }
      // the pivot entry is gone; continue strictly below it
      it = w.lower_bound(k);
    }
    return w;
  }

  bool contains(const Vec& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(const Key& k) const { return rows_.count(k) > 0; }
  const std::map<Key, Vec>& rows() const { return rows_; }

 private:
  std::map<Key, Vec> rows_;
};

/// Null space of the linear map e_j -> images[j], as coefficient vectors.
template <class Key>
std::vector<std::vector<Rat>> kernel_of_images(const std::vector<std::map<Key, Rat>>& images) {
  // Augment each image with a tag coordinate that records the combination;
  // tag keys sort below every image key so they never become pivots early.
  struct Tagged {
    int tag;  // -1 for image coordinates
    Key key;
    bool operator<(const Tagged& o) const {
      if ((tag < 0) != (o.tag < 0)) return o.tag < 0;  // tags sort first (lowest)
      if (tag < 0) return key < o.key;
      return tag < o.tag;
    }
  };
  Echelon<Tagged> ech;
  std::vector<std::vector<Rat>> kernel;
  const std::size_t n = images.size();
  for (std::size_t j = 0; j < n; ++j) {
    std::map<Tagged, Rat> v;
    for (const auto& [k, c] : images[j]) v.emplace(Tagged{-1, k}, c);
    v.emplace(Tagged{static_cast<int>(j), Key{}}, Rat(1));
    auto r = ech.reduce(v);
    bool image_part_zero = r.empty() || std::prev(r.end())->first.tag >= 0;
    if (image_part_zero) {
      std::vector<Rat> combo(n, Rat(0));
      for (const auto& [k, c] : r) combo[static_cast<std::size_t>(k.tag)] = c;
      kernel.push_back(std::move(combo));
    } else {
      ech.insert(v);
    }
  }
  return kernel;
}

/// A weight-truncated ambient space V_{<=N} (one sector) with the echelon
/// form of a subspace. Supplies canonical coset representatives.
class QuotientSpace {
 public:
  QuotientSpace(Sector sector, int cutoff);

  Sector sector() const { return sector_; }
  int cutoff() const { return cutoff_; }
  const std::vector<FockBasisKey>& ambient() const { return ambient_; }
  std::size_t ambient_dim() const { return ambient_.size(); }
  std::size_t rank() const { return ech_.rank(); }
  /// Upper bound on the dimension of the image of V_{<=N} in the quotient.
  std::size_t dim() const { return ambient_.size() - ech_.rank(); }

  /// Throws CutoffOverflow if `v` has weight above the cutoff.
  bool insert(const FockVector& v);
  FockVector reduce(const FockVector& v) const;
  bool contains(const FockVector& v) const { return reduce(v).is_zero(); }

  /// Keys that are not pivots: a basis of the quotient.
  std::vector<FockBasisKey> standard_keys() const;

 private:
  Echelon<int>::Vec to_index(const FockVector& v) const;
  FockVector from_index(const Echelon<int>::Vec& v) const;

  Sector sector_;
  int cutoff_;
  std::vector<FockBasisKey> ambient_;
  std::map<FockBasisKey, int> index_;
  Echelon<int> ech_;
};

}  // namespace twistzhu
