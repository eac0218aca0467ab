// Catch2 printers for the library types.
#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "twistzhu/fock.hpp"
#include "twistzhu/laurent.hpp"

namespace Catch {
template <>
struct StringMaker<twistzhu::FockVector> {
  static std::string convert(const twistzhu::FockVector& v) { return v.to_string(); }
};
template <>
struct StringMaker<twistzhu::Rat> {
  static std::string convert(const twistzhu::Rat& x) { return twistzhu::to_string(x); }
};
}  // namespace Catch
