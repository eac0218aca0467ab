#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "twistzhu/report.hpp"

using namespace twistzhu;

namespace {

// Flags mirror the config keys; only flags actually given override the file.
struct Flags {
  std::string config, aut, n, out;
  int cutoff = 0, lmax = 0, window_weight = 0;
  unsigned threads = 0, random = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  bool verify = false;
  std::vector<std::pair<std::string, CLI::Option*>> given;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  f.given.emplace_back("config", cmd->add_option("--config", f.config, "JSON config file; flags override it"));
  f.given.emplace_back("threads", cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber));
  f.given.emplace_back("out", cmd->add_option("--out", f.out, "write the report here instead of stdout"));
}

void add_context_flags(CLI::App* cmd, Flags& f) {
  f.given.emplace_back("aut", cmd->add_option("--aut", f.aut, "automorphism")->check(CLI::IsMember({"id", "theta"})));
  f.given.emplace_back("n", cmd->add_option("--n", f.n, "level, as 3/2 or l=1,i=1,T=2"));
  f.given.emplace_back("cutoff", cmd->add_option("--cutoff", f.cutoff, "weight cutoff N"));
  f.given.emplace_back("seed", cmd->add_option("--seed", f.seed, "seed for the random window tuples"));
  f.given.emplace_back("window-weight", cmd->add_option("--window-weight", f.window_weight, "exhaustive window weight"));
  f.given.emplace_back("random", cmd->add_option("--random", f.random, "random window tuples"));
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  Json over = Json::object();
  for (const auto& [key, opt] : f.given) {
    if (opt->count() == 0 || key == "config") continue;
    if (key == "aut") over["aut"] = f.aut;
    else if (key == "n") over["n"] = f.n;
    else if (key == "cutoff") over["cutoff"] = f.cutoff;
    else if (key == "seed") over["seed"] = f.seed;
    else if (key == "threads") over["threads"] = f.threads;
    else if (key == "out") over["out"] = f.out;
    else if (key == "window-weight") over["window-weight"] = f.window_weight;
    else if (key == "random") over["random"] = f.random;
    else if (key == "suite") over["suite"] = f.suites;
    else if (key == "lmax") over["lmax"] = f.lmax;
    else if (key == "verify") over["verify"] = f.verify;
  }
  apply_config(cfg, over);
  return cfg;
}

void emit(const Json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream file(out);
  if (!file) throw UsageError("cannot write '" + out + "'");
  file << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact twisted Zhu algebras and bimodules over the rank-one free boson"};
  app.require_subcommand(1);
  Flags f;

  auto* identities = app.add_subcommand("identities", "verify the binomial and Laurent identities up to lmax");
  f.given.emplace_back("lmax", identities->add_option("--lmax", f.lmax, "largest l"));
  add_run_flags(identities, f);

  auto* build = app.add_subcommand("build", "build A_{g,n}(V) and the adjoint bimodule at a cutoff");
  add_context_flags(build, f);
  f.given.emplace_back("verify", build->add_flag("--verify", f.verify, "also run the standard suites"));
  add_run_flags(build, f);

  auto* verify = app.add_subcommand("verify", "run named verification suites");
  add_context_flags(verify, f);
  std::string names;
  for (const auto& s : suite_names()) names += (names.empty() ? "" : ", ") + s;
  f.given.emplace_back("suite", verify->add_option("--suite", f.suites, "suite names: " + names));
  add_run_flags(verify, f);

  auto* report = app.add_subcommand("report", "print a saved report");
  std::string in, format = "table";
  report->add_option("--in", in, "report file")->required();
  report->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::usage;
  }

  try {
    if (report->parsed()) {
      std::ifstream file(in);
      if (!file) throw UsageError("cannot read '" + in + "'");
      Json doc;
      try {
        doc = Json::parse(file);
      } catch (const Json::parse_error& e) {
        throw UsageError(std::string("'") + in + "' is not JSON: " + e.what());
      }
      if (format == "json") {
        if (doc.value("schema", "") != kReportSchema) throw UsageError("not a twistzhu-report/1 document");
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << render_table(doc);
      }
      return exit_code::ok;
    }

    RunConfig cfg = resolve(f);
    CommandResult res;
    if (identities->parsed()) res = cmd_identities(cfg.lmax);
    else if (build->parsed()) res = cmd_build(cfg);
    else res = cmd_verify(cfg);
    emit(res.report, cfg.out);
    if (!cfg.out.empty()) std::cerr << render_table(res.report);
    return res.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const CutoffOverflow& e) {
    std::cerr << "cutoff overflow: " << e.what() << "\n";
    return exit_code::cutoff;
  }
}
