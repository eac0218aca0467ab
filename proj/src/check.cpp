#include "twistzhu/check.hpp"

#include "twistzhu/fock.hpp"
#include "twistzhu/parallel.hpp"

namespace twistzhu {

CheckReport run_checks(std::string name, std::size_t count, unsigned threads,
                       const std::function<std::string(std::size_t)>& check) {
  auto results = parallel_map<std::string>(count, threads, [&](std::size_t i) {
    try {
      return check(i);
    } catch (const CutoffOverflow& e) {
      return std::string("cutoff overflow: ") + e.what();
    }
  });
  CheckReport rep;
  rep.name = std::move(name);
  for (auto& r : results) {
    if (r.empty()) rep.pass();
    else rep.fail(std::move(r));
  }
  return rep;
}

}  // namespace twistzhu
