// JSON reports and the batch commands behind the command-line tool.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "twistzhu/intertwine.hpp"

namespace twistzhu {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "twistzhu-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

/// Bad flags, config values or suite names. Maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification = 2;
inline constexpr int cutoff = 3;
inline constexpr int usage = 64;
}  // namespace exit_code

Json to_json(const LaurentPoly& p);
Json to_json(const FockVector& v);
Json to_json(const GradedHom& h);
Json to_json(const CheckReport& r);

struct RunConfig {
  Aut aut = Aut::id;
  std::string n = "0";
  int cutoff = 10;
  std::vector<std::string> suites;
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool verify = false;
  int lmax = 8;
  /// Exhaustive basis window and the number of seeded random tuples.
  int window_weight = 3;
  unsigned random_tuples = 50;

  ModIndex index() const;
};

/// Overwrites the fields present in `j`; keys match the long flag names
/// ("aut", "n", "cutoff", "suite", "seed", "threads", "verify", "lmax",
/// "out", "window-weight", "random").
void apply_config(RunConfig& cfg, const Json& j);
RunConfig load_config(const std::string& path);

/// Names accepted by `verify --suite`, plus "all".
const std::vector<std::string>& suite_names();

struct CommandResult {
  Json report;
  int exit_code = exit_code::ok;
};

CommandResult cmd_identities(int lmax);
CommandResult cmd_build(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

/// The report with the "timing" object removed, serialized.
std::string deterministic_dump(const Json& report);
/// Human-readable summary of any report produced above.
std::string render_table(const Json& report);

}  // namespace twistzhu
