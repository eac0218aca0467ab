#include "twistzhu/linalg.hpp"

namespace twistzhu {

QuotientSpace::QuotientSpace(Sector sector, int cutoff)
    : sector_(sector), cutoff_(cutoff), ambient_(basis_keys(sector, 2 * cutoff)) {
  for (std::size_t i = 0; i < ambient_.size(); ++i) index_.emplace(ambient_[i], static_cast<int>(i));
}

Echelon<int>::Vec QuotientSpace::to_index(const FockVector& v) const {
  if (v.sector() != sector_) throw std::invalid_argument("QuotientSpace: sector mismatch");
  Echelon<int>::Vec out;
  for (const auto& [k, c] : v.terms()) {
    auto it = index_.find(k);
    if (it == index_.end())
      throw CutoffOverflow("QuotientSpace: " + k.label() + " lies above cutoff " + std::to_string(cutoff_));
    out.emplace(it->second, c);
  }
  return out;
}

FockVector QuotientSpace::from_index(const Echelon<int>::Vec& v) const {
  FockVector out(sector_);
  for (const auto& [i, c] : v) out.add(ambient_[static_cast<std::size_t>(i)], c);
  return out;
}

bool QuotientSpace::insert(const FockVector& v) { return ech_.insert(to_index(v)); }

FockVector QuotientSpace::reduce(const FockVector& v) const { return from_index(ech_.reduce(to_index(v))); }

std::vector<FockBasisKey> QuotientSpace::standard_keys() const {
  std::vector<FockBasisKey> out;
  for (std::size_t i = 0; i < ambient_.size(); ++i)
    if (!ech_.is_pivot(static_cast<int>(i))) out.push_back(ambient_[i]);
  return out;
}

}  // namespace twistzhu
