#include "support.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include "twistzhu/report.hpp"

using namespace twistzhu;

namespace {

RunConfig config(Aut g, const std::string& n, int cutoff) {
  RunConfig cfg;
  cfg.aut = g;
  cfg.n = n;
  cfg.cutoff = cutoff;
  return cfg;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(TWISTZHU_CLI) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_path(const std::string& name) { return std::string(TWISTZHU_TMP) + "/" + name; }

}  // namespace

TEST_CASE("JSON forms") {
  auto p = LaurentPoly::monomial(rat(1, 2), Rat(-1)) + LaurentPoly::monomial(Rat(3), Rat(2));
  CHECK(to_json(p).dump() == R"([{"exp":"-1","coef":"1/2"},{"exp":"2","coef":"3"}])");
  auto v = vec::twisted({3, 1}) * rat(-2, 3);
  CHECK(to_json(v).dump() == R"({"sector":"twisted","terms":[{"modes":["3/2","1/2"],"coef":"-2/3"}]})");
  auto h = GradedHom::of(Sector::twisted, Rat(0), rat(1, 2), [](const FockVector& x) { return heisenberg(-1, x); });
  auto j = to_json(h);
  CHECK(j["source_level"] == "0");
  CHECK(j["target_level"] == "1/2");
  CHECK(j["matrix"].dump() == R"([["1"]])");
  CheckReport r;
  r.name = "x";
  r.fail("w");
  CHECK(to_json(r)["verdict"] == "fail");
}

TEST_CASE("config parsing") {
  RunConfig cfg;
  apply_config(cfg, Json::parse(R"({"aut":"theta","n":"l=1,i=1,T=2","cutoff":12,"suite":"epimorphism","threads":4})"));
  CHECK(cfg.index() == ModIndex{1, 1, 2});
  CHECK(cfg.cutoff == 12);
  CHECK(cfg.suites == std::vector<std::string>{"epimorphism"});
  CHECK(cfg.threads == 4);
  apply_config(cfg, Json::parse(R"({"n":"3/2"})"));
  CHECK(cfg.index() == ModIndex{1, 1, 2});
  CHECK_THROWS_AS(apply_config(cfg, Json::parse(R"({"colour":1})")), UsageError);
  CHECK_THROWS_AS(apply_config(cfg, Json::parse(R"({"aut":"sigma"})")), UsageError);
  CHECK_THROWS_AS(apply_config(cfg, Json::parse(R"({"cutoff":"ten"})")), UsageError);
  cfg.n = "1/3";
  CHECK_THROWS_AS(cfg.index(), UsageError);
}

TEST_CASE("identities command") {
  auto res = cmd_identities(6);
  CHECK(res.exit_code == exit_code::ok);
  CHECK(res.report["schema"] == kReportSchema);
  auto constants = res.report["identities"]["L"]["constants"];
  CHECK(constants.dump() == R"(["1","-6","30","-140","630","-2772","12012"])");
  CHECK(res.report["identities"]["L"]["printed_constants"][1] == "-9");
  CHECK(cmd_identities(0).exit_code == exit_code::ok);
  CHECK_THROWS_AS(cmd_identities(-1), UsageError);
}

TEST_CASE("build command") {
  auto th = cmd_build(config(Aut::theta, "0", 6));
  CHECK(th.exit_code == exit_code::ok);
  CHECK(th.report["algebra"]["dim_label"] == "dim<=N (upper bound)");
  CHECK(th.report["algebra"]["dim_upper"] == 1);
  bool collapse_note = false;
  for (const auto& n : th.report["notes"]) collapse_note = collapse_note || n.get<std::string>().find("V^1 collapse verified") == 0;
  CHECK(collapse_note);

  auto id = cmd_build(config(Aut::id, "0", 6));
  CHECK(id.exit_code == exit_code::ok);
  for (int k = 0; k <= 3; ++k) CHECK(id.report["algebra"]["alpha_powers"][k]["independent"] == true);
  CHECK(id.report["bimodule"]["module"] == "adjoint");

  CHECK_THROWS_AS(cmd_build(config(Aut::id, "x", 6)), UsageError);
  CHECK_THROWS_AS(cmd_build(config(Aut::id, "1/2", 6)), UsageError);

  // associativity at level 1 needs N = 13
  auto tight = config(Aut::id, "1", 10);
  tight.verify = true;
  CHECK(cmd_build(tight).exit_code == exit_code::cutoff);
}

TEST_CASE("verify command") {
  auto cfg = config(Aut::theta, "1/2", 10);
  cfg.suites = {"bimodule-axioms", "epimorphism"};
  auto res = cmd_verify(cfg);
  CHECK(res.exit_code == exit_code::ok);
  CHECK(res.report["verdict"] == "pass");
  CHECK(res.report["suites"]["epimorphism"]["products"] == "equal");
  cfg.suites = {"nope"};
  CHECK_THROWS_AS(cmd_verify(cfg), UsageError);
  cfg.suites = {};
  CHECK_THROWS_AS(cmd_verify(cfg), UsageError);
  auto zero = config(Aut::id, "0", 8);
  zero.suites = {"surjection"};
  CHECK(cmd_verify(zero).report["suites"]["surjection"]["skipped"].is_string());
}

TEST_CASE("reports do not depend on the thread count") {
  auto cfg = config(Aut::theta, "1/2", 10);
  cfg.suites = {"associativity", "lemmas", "bimodule-axioms", "epimorphism", "phi-M", "filtration", "pi-hom", "omega"};
  cfg.threads = 1;
  auto one = cmd_verify(cfg);
  cfg.threads = 8;
  auto eight = cmd_verify(cfg);
  CHECK(one.exit_code == exit_code::ok);
  CHECK(deterministic_dump(one.report) == deterministic_dump(eight.report));
  CHECK(one.report.dump() != deterministic_dump(one.report));
}

TEST_CASE("table rendering") {
  auto res = cmd_identities(2);
  auto table = render_table(res.report);
  CHECK(table.find("L constants: 1 -6 30") != std::string::npos);
  CHECK_THROWS_AS(render_table(Json::parse(R"({"schema":"other"})")), UsageError);
}

TEST_CASE("command-line exit codes") {
  CHECK(run_cli("identities --lmax 3") == 0);
  CHECK(run_cli("identities --lmax -1") == 64);
  CHECK(run_cli("build --aut id --n 1 --cutoff 10 --verify") == 3);
  CHECK(run_cli("build --aut id --n l=1,i=1,T=2 --cutoff 6") == 64);
  CHECK(run_cli("verify --aut theta --n 1/2 --cutoff 10 --suite bogus") == 64);
  CHECK(run_cli("verify --aut sigma --suite phi") == 64);
  CHECK(run_cli("frobnicate") == 64);
  CHECK(run_cli("report --in /nonexistent.json") == 64);

  // file values apply, flags override them
  auto cfg_path = temp_path("cli_config.json");
  auto out_path = temp_path("cli_report.json");
  std::ofstream(cfg_path) << R"({"aut":"theta","n":"l=0,i=1,T=2","cutoff":6,"suite":["epimorphism"]})";
  CHECK(run_cli("verify --config " + cfg_path + " --cutoff 8 --out " + out_path) == 0);
  std::ifstream in(out_path);
  auto report = Json::parse(in);
  CHECK(report["config"]["cutoff"] == 8);
  CHECK(report["config"]["n"] == "0+1/2");
  CHECK(report["config"]["aut"] == "theta");
  CHECK(run_cli("report --in " + out_path + " --format table") == 0);
  CHECK(run_cli("report --in " + out_path + " --format json") == 0);
  CHECK(run_cli("report --in " + out_path + " --format xml") == 64);
}
