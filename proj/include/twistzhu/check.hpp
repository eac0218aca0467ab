// Pass/fail record shared by the verification suites.
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace twistzhu {

struct CheckReport {
  std::string name;
  bool ok = true;
  std::size_t checked = 0;
  /// First few failures, each with enough context to reproduce.
  std::vector<std::string> witnesses;

  void pass() { ++checked; }
  void fail(std::string witness) {
    ++checked;
    ok = false;
    if (witnesses.size() < 8) witnesses.push_back(std::move(witness));
  }
  void expect(bool cond, const std::string& witness) {
    if (cond) pass();
    else fail(witness);
  }
  void merge(const CheckReport& o) {
    checked += o.checked;
    if (!o.ok) ok = false;
    for (const auto& w : o.witnesses)
      if (witnesses.size() < 8) witnesses.push_back(o.name.empty() ? w : o.name + ": " + w);
  }
  explicit operator bool() const { return ok; }
};

/// Runs check(i) for i in [0, count) on `threads` workers and collects the
/// verdicts in index order. An empty string means pass; a CutoffOverflow
/// becomes a failure carrying the overflow message.
CheckReport run_checks(std::string name, std::size_t count, unsigned threads,
                       const std::function<std::string(std::size_t)>& check);

}  // namespace twistzhu
