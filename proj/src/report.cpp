#include "twistzhu/report.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace twistzhu {

Json to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({{"exp", to_string(e)}, {"coef", to_string(c)}});
  return out;
}

Json to_json(const FockVector& v) {
  Json terms = Json::array();
  for (const auto& [k, c] : v.terms()) {
    Json modes = Json::array();
    for (int d2 : k.depths2()) modes.push_back(to_string(rat(d2, 2)));
    terms.push_back({{"modes", modes}, {"coef", to_string(c)}});
  }
  return {{"sector", to_string(v.sector())}, {"terms", terms}};
}

Json to_json(const GradedHom& h) {
  Json src = Json::array(), tgt = Json::array(), rows = Json::array();
  for (const auto& k : h.source()) src.push_back(k.label());
  for (const auto& k : h.target()) tgt.push_back(k.label());
  for (const auto& row : h.matrix()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    rows.push_back(r);
  }
  return {{"source_level", to_string(h.source_level())},
          {"target_level", to_string(h.target_level())},
          {"source", src},
          {"target", tgt},
          {"matrix", rows}};
}

Json to_json(const CheckReport& r) {
  return {{"name", r.name}, {"verdict", r.ok ? "pass" : "fail"}, {"checked", r.checked}, {"witnesses", r.witnesses}};
}

ModIndex RunConfig::index() const {
  try {
    return parse_mod_index(n, aut_order(aut));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--n: ") + e.what());
  }
}

void apply_config(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "aut") cfg.aut = parse_aut(val.get<std::string>());
      else if (key == "n") cfg.n = val.is_string() ? val.get<std::string>() : std::to_string(val.get<int>());
      else if (key == "cutoff") cfg.cutoff = val.get<int>();
      else if (key == "suite") {
        cfg.suites.clear();
        if (val.is_string()) cfg.suites.push_back(val.get<std::string>());
        else for (const auto& s : val) cfg.suites.push_back(s.get<std::string>());
      } else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
      else if (key == "threads") cfg.threads = val.get<unsigned>();
      else if (key == "verify") cfg.verify = val.get<bool>();
      else if (key == "lmax") cfg.lmax = val.get<int>();
      else if (key == "out") cfg.out = val.get<std::string>();
      else if (key == "window-weight") cfg.window_weight = val.get<int>();
      else if (key == "random") cfg.random_tuples = val.get<unsigned>();
      else throw UsageError("unknown config key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  RunConfig cfg;
  try {
    apply_config(cfg, Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  return cfg;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Json header(const std::string& command) {
  return {{"schema", kReportSchema}, {"tool", {{"name", "twistzhu"}, {"version", kToolVersion}}}, {"command", command}};
}

void validate(const RunConfig& cfg) {
  if (cfg.cutoff < 1) throw UsageError("--cutoff must be positive");
  if (cfg.threads < 1) throw UsageError("--threads must be positive");
  if (cfg.window_weight < 0) throw UsageError("--window-weight must be nonnegative");
  cfg.index();
}

// Threads and timing are left out so reports compare equal across runs.
Json config_echo(const RunConfig& cfg) {
  ModIndex n = cfg.index();
  return {{"aut", to_string(cfg.aut)},
          {"n", n.label()},
          {"n_value", to_string(n.value())},
          {"cutoff", cfg.cutoff},
          {"seed", cfg.seed},
          {"window_weight", cfg.window_weight},
          {"random_tuples", cfg.random_tuples}};
}

bool overflowed(const CheckReport& r) {
  for (const auto& w : r.witnesses)
    if (w.find("cutoff overflow") != std::string::npos) return true;
  return false;
}

int verdict_code(const std::vector<CheckReport>& reps) {
  int code = exit_code::ok;
  for (const auto& r : reps) {
    if (r.ok) continue;
    if (overflowed(r)) return exit_code::cutoff;
    code = exit_code::verification;
  }
  return code;
}

// Lazily built objects shared between suites of one run.
class Session {
 public:
  explicit Session(const RunConfig& cfg)
      : cfg_(cfg), ctx_(cfg.aut, cfg.index(), cfg.cutoff, cfg.threads),
        window_(test_window(cfg.window_weight, cfg.random_tuples, cfg.seed)) {}

  const RunConfig& config() const { return cfg_; }
  const ZhuContext& ctx() const { return ctx_; }
  const Window& window() const { return window_; }
  bool has_lower() const { return ctx_.l() > 0 || ctx_.i() > 0; }

  const ZhuAlgebra& algebra() {
    if (!alg_) alg_.emplace(ctx_);
    return *alg_;
  }
  const ZhuAlgebra& lower_algebra() {
    if (!lower_alg_) lower_alg_.emplace(ctx_.lower());
    return *lower_alg_;
  }
  const Bimodule& bimodule() {
    if (!bim_) bim_.emplace(ctx_);
    return *bim_;
  }
  const Bimodule& lower_bimodule() {
    if (!lower_bim_) lower_bim_.emplace(ctx_.lower());
    return *lower_bim_;
  }

  /// Levels 0, 1/T, ..., n.
  std::vector<Rat> levels() const {
    std::vector<Rat> out;
    for (Rat m = 0; m <= ctx_.n().value(); m += rat(1, ctx_.order())) out.push_back(m);
    return out;
  }

 private:
  RunConfig cfg_;
  ZhuContext ctx_;
  Window window_;
  std::optional<ZhuAlgebra> alg_, lower_alg_;
  std::optional<Bimodule> bim_, lower_bim_;
};

// The annihilator scan grows quickly with the cutoff; low degrees suffice.
constexpr int kOmegaCutoff = 6;

// Odd vectors of weight w are killed by circ relations of top weight
// w + pole - 1, so only weights up to N - pole + 1 can collapse at cutoff N.
int odd_collapse_weight(const ZhuContext& ctx) { return ctx.cutoff() - ctx.circ_pole(1) + 1; }

struct SuiteOutcome {
  CheckReport check;
  Json data;  // extra values, may be null
};

CheckReport skipped(const std::string& name) {
  CheckReport r;
  r.name = name;
  return r;
}

using Suite = std::function<SuiteOutcome(Session&)>;

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> table = {
      {"associativity", [](Session& s) { return SuiteOutcome{check_associativity(s.algebra(), s.window()), {}}; }},
      {"surjection",
       [](Session& s) {
         if (!s.has_lower()) return SuiteOutcome{skipped("surjection"), {{"skipped", "n = 0 has no lower level"}}};
         return SuiteOutcome{surjection_check(s.algebra(), s.lower_algebra(), s.window()), {}};
       }},
      {"phi", [](Session& s) { return SuiteOutcome{phi_suite(s.algebra(), s.window()), {}}; }},
      {"odd-collapse",
       [](Session& s) {
         if (s.ctx().order() == 1) return SuiteOutcome{skipped("odd collapse"), {{"skipped", "g = id has no V^1"}}};
         int through = odd_collapse_weight(s.ctx());
         return SuiteOutcome{odd_collapse_check(s.algebra(), through), {{"through_weight", through}}};
       }},
      {"omega",
       [](Session& s) {
         Json basis = Json::array();
         ZhuContext small(s.ctx().aut(), s.ctx().n(), std::min(s.ctx().cutoff(), kOmegaCutoff), s.ctx().threads());
         for (const auto& v : omega_filter(small)) basis.push_back(to_json(v));
         return SuiteOutcome{o_action_suite(s.algebra(), s.window()),
                             {{"omega_cutoff", small.cutoff()}, {"omega_basis", basis}}};
       }},
      {"lemmas",
       [](Session& s) {
         const auto& B = s.bimodule();
         CheckReport r;
         r.name = "membership lemmas";
         for (const auto& part : {shifted_kernel_check(B, 3), commutator_check(B), virasoro_relation_check(B), ideal_check(B)})
           r.merge(part);
         return SuiteOutcome{r, {}};
       }},
      {"bimodule-axioms", [](Session& s) { return SuiteOutcome{bimodule_axiom_suite(s.bimodule(), s.window()), {}}; }},
      {"epimorphism",
       [](Session& s) {
         if (!s.has_lower()) return SuiteOutcome{skipped("epimorphism"), {{"skipped", "n = 0 has no lower level"}}};
         Json data = {{"products", s.ctx().i() >= 1 ? "equal" : "congruent modulo the lower relations"}};
         return SuiteOutcome{epi_lower(s.bimodule(), s.lower_bimodule(), s.window()), data};
       }},
      {"phi-M", [](Session& s) { return SuiteOutcome{phi_M_suite(s.bimodule(), s.window()), {}}; }},
      {"filtration",
       [](Session& s) {
         auto f = filtration_report(s.ctx());
         CheckReport r;
         r.name = "filtration";
         for (const auto& part : {f.chain, f.additivity, f.stability}) r.merge(part);
         Json data = {{"levels", f.levels},
                      {"dims", {{"A_gn", f.dim_top}, {"A_g0", f.dim_bottom}, {"subquotients", f.subquotients}}}};
         return SuiteOutcome{r, data};
       }},
      {"pi-hom",
       [](Session& s) {
         auto I = adjoint_intertwiner(s.ctx());
         CheckReport r;
         r.name = "pi(I) homomorphism";
         for (const auto& src : s.levels())
           for (const auto& tgt : s.levels()) r.merge(check_pi_hom(I, s.ctx(), src, tgt, s.window()));
         Json data = {{"intertwiner", "module vertex operator"},
                      {"h", {to_string(I.h0), to_string(I.h1), to_string(I.h2)}},
                      {"fusion_rule_note", "dim Hom >= 1 for the adjoint triple; fusion rules are not computed"}};
         return SuiteOutcome{r, data};
       }},
      {"injectivity",
       [](Session& s) {
         auto I = adjoint_intertwiner(s.ctx());
         CheckReport r;
         r.name = "pi(I) nonzero";
         Json found = Json::array();
         auto levels = s.levels();
         for (std::size_t k = 0; k < std::min<std::size_t>(2, levels.size()); ++k) {
           auto p = injectivity_probe(I, s.ctx(), Rat(0), levels[k]);
           r.expect(p.nonzero, "no nonzero component at (0," + to_string(levels[k]) + ")");
           found.push_back({{"s", "0"}, {"t", to_string(levels[k])}, {"witness", p.witness}});
         }
         return SuiteOutcome{r, {{"probes", found}}};
       }},
  };
  return table;
}

Json suite_json(const SuiteOutcome& o) {
  Json j = to_json(o.check);
  if (!o.data.is_null())
    for (const auto& [k, v] : o.data.items()) j[k] = v;
  return j;
}

// Runs the named suites; fills report["suites"] and report["timing"].
int run_suites(Session& session, const std::vector<std::string>& names, Json& report) {
  std::vector<CheckReport> checks;
  Json results = Json::object();
  Json& timing = report["timing"]["suites"];
  timing = Json::object();
  for (const auto& name : names) {
    auto t0 = Clock::now();
    SuiteOutcome outcome;
    for (const auto& [n, fn] : suites())
      if (n == name) {
        try {
          outcome = fn(session);
        } catch (const CutoffOverflow& e) {
          outcome.check.name = name;
          outcome.check.fail(std::string("cutoff overflow: ") + e.what());
        }
      }
    timing[name] = seconds_since(t0);
    checks.push_back(outcome.check);
    results[name] = suite_json(outcome);
  }
  report["suites"] = results;
  return verdict_code(checks);
}

std::vector<std::string> expand_suites(const std::vector<std::string>& requested) {
  if (requested.empty()) throw UsageError("verify needs at least one --suite");
  std::vector<std::string> out;
  for (const auto& s : requested) {
    if (s == "all") {
      for (const auto& [n, fn] : suites()) out.push_back(n);
      continue;
    }
    bool known = false;
    for (const auto& [n, fn] : suites()) known = known || n == s;
    if (!known) throw UsageError("unknown suite '" + s + "'");
    out.push_back(s);
  }
  return out;
}

Json notes_for(const ZhuContext& ctx) {
  Json notes = Json::array();
  notes.push_back("dimensions are dim<=N (upper bound): only generators lying entirely in weight <= N are admitted");
  if (ctx.order() == 2) notes.push_back("V^1 collapse: the odd eigenspace lies in O_{g,n}(V); checked by reduction, not assumed");
  return notes;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, fn] : suites()) out.push_back(n);
    out.push_back("all");
    return out;
  }();
  return names;
}

CommandResult cmd_identities(int lmax) {
  if (lmax < 0) throw UsageError("--lmax must be nonnegative");
  auto t0 = Clock::now();
  CommandResult res{header("identities"), exit_code::ok};
  res.report["lmax"] = lmax;

  CheckReport unit, L, vanish, prop;
  unit.name = "unit identity";
  L.name = "Virasoro identity";
  vanish.name = "binomial vanishing";
  prop.name = "associativity sum";
  Json constants = Json::array(), printed = Json::array();
  for (int l = 0; l <= lmax; ++l) {
    unit.expect(check_identity_unit(l), "l=" + std::to_string(l));
    Rat c = identity_L_constant(l);
    L.expect(check_identity_L(l) == LaurentPoly::monomial(c, Rat(-2 * l - 2)), "l=" + std::to_string(l));
    constants.push_back(to_string(c));
    printed.push_back(to_string(identity_L_printed_constant(l)));
    for (int k = 0; k <= l; ++k)
      vanish.expect(check_binom_vanish(l, k) == (k == 0 ? 1 : 0), "l=" + std::to_string(l) + " k=" + std::to_string(k));
    prop.expect(check_associativity_sum(l), "l=" + std::to_string(l));
  }
  Json L_json = to_json(L);
  L_json["constants"] = constants;
  L_json["printed_constants"] = printed;
  res.report["identities"] = {{"unit", to_json(unit)}, {"L", L_json}, {"binom_vanish", to_json(vanish)},
                              {"associativity_sum", to_json(prop)}};
  res.report["notes"] = Json::array(
      {"Virasoro identity: the sum equals (-1)^l (2l+1) C(2l,l) / z^{2l+2}; the commonly printed constant "
       "(-1)^l C(2l+1,l)(2l+1) differs for l >= 1. Both are nonzero, so membership conclusions are unaffected."});
  res.report["timing"] = {{"total_seconds", seconds_since(t0)}};
  res.exit_code = verdict_code({unit, L, vanish, prop});
  return res;
}

CommandResult cmd_build(const RunConfig& cfg) {
  validate(cfg);
  auto t0 = Clock::now();
  CommandResult res{header("build"), exit_code::ok};
  res.report["config"] = config_echo(cfg);
  try {
    Session session(cfg);
    const auto& ctx = session.ctx();
    const auto& A = session.algebra();
    const int l2 = 2 * ctx.l();

    Json basis = Json::array(), structure = Json::array();
    auto keys = A.relations().standard_keys();
    for (const auto& k : keys) basis.push_back(k.label());
    std::size_t omitted = 0;
    for (const auto& a : keys)
      for (const auto& b : keys) {
        if (a.weight2() + b.weight2() + 2 * l2 > 2 * ctx.cutoff()) {
          ++omitted;
          continue;
        }
        auto prod = A.mul(FockVector::basis(a), FockVector::basis(b));
        if (!prod.is_zero()) structure.push_back({{"a", a.label()}, {"b", b.label()}, {"product", to_json(prod)}});
      }

    // images of alpha(-1)^k: independent of the lower powers or not
    Json powers = Json::array();
    {
      Echelon<FockBasisKey> span;
      for (int k = 0; k <= ctx.cutoff(); ++k) {
        auto img = A.reduce(vec::alpha(std::vector<int>(static_cast<std::size_t>(k), 1)));
        std::map<FockBasisKey, Rat> row(img.terms().begin(), img.terms().end());
        bool independent = span.insert(row);
        powers.push_back({{"k", k}, {"independent", independent}});
      }
    }

    res.report["algebra"] = {{"g", to_string(ctx.aut())},
                             {"n", ctx.n().label()},
                             {"cutoff", ctx.cutoff()},
                             {"dim_upper", A.dim()},
                             {"dim_label", "dim<=N (upper bound)"},
                             {"generators", A.generator_count()},
                             {"basis", basis},
                             {"structure_constants", structure},
                             {"structure_constants_omitted", omitted},
                             {"alpha_powers", powers}};

    auto f = filtration_report(ctx);
    res.report["bimodule"] = {{"module", "adjoint"},
                              {"generators", session.bimodule().generator_count()},
                              {"dims", {{"A_gn", f.dim_top}, {"A_g0", f.dim_bottom}, {"subquotients", f.subquotients}}},
                              {"dim_label", "dim<=N (upper bound)"}};
    Json notes = notes_for(ctx);
    std::vector<CheckReport> checks{f.chain, f.additivity, f.stability};
    if (ctx.order() == 2) {
      auto collapse = odd_collapse_check(A, odd_collapse_weight(ctx));
      notes.push_back("V^1 collapse verified on " + std::to_string(collapse.checked) + " odd basis vectors of weight <= " +
                      std::to_string(odd_collapse_weight(ctx)) + ": " +
                      (collapse.ok ? "all reduce to 0" : "FAILED"));
      checks.push_back(collapse);
    }
    res.report["notes"] = notes;

    if (cfg.verify) {
      std::vector<std::string> names = {"associativity", "phi", "bimodule-axioms", "phi-M", "pi-hom"};
      if (session.has_lower()) {
        names.push_back("surjection");
        names.push_back("epimorphism");
      }
      res.exit_code = run_suites(session, names, res.report);
    }
    int build_code = verdict_code(checks);
    if (build_code == exit_code::cutoff || res.exit_code == exit_code::ok) res.exit_code = std::max(res.exit_code, build_code);
  } catch (const CutoffOverflow& e) {
    res.report["error"] = std::string("cutoff overflow: ") + e.what();
    res.exit_code = exit_code::cutoff;
  }
  res.report["timing"]["total_seconds"] = seconds_since(t0);
  return res;
}

CommandResult cmd_verify(const RunConfig& cfg) {
  validate(cfg);
  auto names = expand_suites(cfg.suites);
  auto t0 = Clock::now();
  CommandResult res{header("verify"), exit_code::ok};
  res.report["config"] = config_echo(cfg);
  res.report["config"]["suites"] = names;
  Session session(cfg);
  res.exit_code = run_suites(session, names, res.report);
  res.report["notes"] = notes_for(session.ctx());
  res.report["verdict"] = res.exit_code == exit_code::ok ? "pass" : "fail";
  res.report["timing"]["total_seconds"] = seconds_since(t0);
  return res;
}

std::string deterministic_dump(const Json& report) {
  Json copy = report;
  copy.erase("timing");
  return copy.dump(2);
}

std::string render_table(const Json& report) {
  if (!report.is_object() || report.value("schema", "") != kReportSchema)
    throw UsageError("not a twistzhu-report/1 document");
  std::ostringstream out;
  out << "command: " << report.value("command", "?") << "\n";
  if (report.contains("config"))
    for (const auto& [k, v] : report["config"].items()) out << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  auto row = [&](const std::string& name, const Json& r) {
    out << "  " << name;
    for (std::size_t pad = name.size(); pad < 20; ++pad) out << ' ';
    out << r.value("verdict", "?") << "  (" << r.value("checked", 0) << " checks)\n";
    for (const auto& w : r.value("witnesses", Json::array())) out << "      " << w.get<std::string>() << "\n";
  };
  if (report.contains("identities")) {
    out << "identities:\n";
    for (const auto& [k, v] : report["identities"].items()) row(k, v);
    out << "  L constants: ";
    for (const auto& c : report["identities"]["L"]["constants"]) out << c.get<std::string>() << ' ';
    out << "\n";
  }
  if (report.contains("algebra")) {
    const auto& a = report["algebra"];
    out << "algebra A_{" << a["g"].get<std::string>() << "," << a["n"].get<std::string>() << "}: dim<=N (upper bound) = "
        << a["dim_upper"] << ", generators = " << a["generators"] << "\n";
  }
  if (report.contains("bimodule")) {
    const auto& d = report["bimodule"]["dims"];
    out << "bimodule (adjoint): A_gn = " << d["A_gn"] << ", A_g0 = " << d["A_g0"] << ", subquotients = " << d["subquotients"].dump() << "\n";
  }
  if (report.contains("suites")) {
    out << "suites:\n";
    for (const auto& [k, v] : report["suites"].items()) row(k, v);
  }
  if (report.contains("notes"))
    for (const auto& n : report["notes"]) out << "note: " << n.get<std::string>() << "\n";
  if (report.contains("error")) out << "error: " << report["error"].get<std::string>() << "\n";
  return out.str();
}

}  // namespace twistzhu
