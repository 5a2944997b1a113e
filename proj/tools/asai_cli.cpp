// asai: command-line driver for norm map / twisting operator experiments.
//
// Exit codes: 0 ok, 1 other error, 2 parse or configuration error,
// 3 validation failure, 4 cap exceeded, 5 internal inconsistency.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "asai/asai.hpp"
#include "asai/cache.hpp"
#include "asai/easiness.hpp"
#include "asai/group_dsl.hpp"
#include "asai/group_law.hpp"
#include "asai/points.hpp"
#include "asai/report.hpp"

namespace {

using namespace asai;

enum Exit : int {
  kOk = 0,
  kOther = 1,
  kParse = 2,
  kValidation = 3,
  kCap = 4,
  kInconsistent = 5,
};

struct RunConfig {
  std::string command;
  std::string group;
  std::string dsl;
  std::optional<std::uint64_t> q;
  std::uint32_t m = 1;
  std::uint32_t max_m = 3;
  std::uint64_t max_order = FiniteGroupView::kDefaultMaxOrder;
  std::uint32_t max_ext = 0;
  std::string cache;
  std::string out;
  bool stats = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GroupLaw resolve_law(const RunConfig& cfg) {
  if (!cfg.dsl.empty() && !cfg.group.empty()) throw ParameterError("give either --group or --dsl, not both");
  if (!cfg.dsl.empty()) return parse_group_dsl(read_file(cfg.dsl));
  if (cfg.group.empty()) throw ParameterError("missing --group or --dsl");
  if (!cfg.q) throw ParameterError("--q is required with a builtin group");
  const auto pp = fp::prime_power(*cfg.q);
  if (!pp) throw ParameterError("q = " + std::to_string(*cfg.q) + " is not a prime power");
  return builtin_from_name(cfg.group, pp->first);
}

std::uint64_t resolve_q(const RunConfig& cfg, const GroupLaw& law) {
  const std::uint64_t q = cfg.q.value_or(law.p);
  q_exponent(law.p, q);  // throws unless q is a power of p
  return q;
}

class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg) {
    if (!cfg.cache.empty()) {
      cache_ = std::make_unique<ClassCache>(cfg.cache, [](const std::string& msg) {
        std::cerr << "warning: " << msg << "\n";
      });
    }
  }

  std::shared_ptr<const ClassTable> classes(const FiniteGroupView& view) {
    if (cache_) return cache_->get(view);
    return std::make_shared<const ClassTable>(conjugacy_classes(view));
  }

  ReportCaps caps() const { return {cfg_.max_order, cfg_.max_ext}; }
  std::uint32_t degree_cap(const FiniteGroupView& view) const { return cfg_.max_ext * view.degree(); }

  void finish(Json& report, std::chrono::steady_clock::time_point start) const {
    if (!cfg_.stats) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timings"] = Json{{"total_ms", ms}};
    if (cache_) {
      const auto& s = cache_->stats();
      report["cache"] = Json{{"hits", s.hits}, {"misses", s.misses}, {"rejected", s.rejected}};
    }
  }

 private:
  const RunConfig& cfg_;
  std::unique_ptr<ClassCache> cache_;
};

int cmd_validate(const RunConfig& cfg, Json& report) {
  const auto law = resolve_law(cfg);
  const auto q = resolve_q(cfg, law);
  report = report_header("validate", law, q);
  FieldTower tower(law.p);
  const auto v = validate_law(law, tower, q);
  report["checks"] = validation_json(v);
  return v.ok() ? kOk : kValidation;
}

int cmd_classes(const RunConfig& cfg, Json& report) {
  const auto start = std::chrono::steady_clock::now();
  const auto law = resolve_law(cfg);
  const auto q = resolve_q(cfg, law);
  report = report_header("classes", law, q);
  report["m"] = cfg.m;
  Session session(cfg);
  report["caps"] = caps_json(session.caps());
  FieldTower tower(law.p);
  const FiniteGroupView view(law, tower, q, cfg.m, cfg.max_order);
  const auto table = session.classes(view);
  report["order"] = view.order();
  report["abelian"] = view.is_abelian();
  Json classes = Json::array();
  for (const auto& c : table->classes) {
    const auto z = centralizer(view, c.rep).size();
    if (z * c.size() != view.order()) throw InternalInconsistency("orbit-stabilizer identity fails");
    Json e;
    e["rep"] = point_json(view.point(c.rep));
    e["size"] = c.size();
    e["centralizer"] = z;
    classes.push_back(std::move(e));
  }
  report["classes"] = std::move(classes);
  session.finish(report, start);
  return kOk;
}

int cmd_asai(const RunConfig& cfg, Json& report) {
  const auto start = std::chrono::steady_clock::now();
  const auto law = resolve_law(cfg);
  const auto q = resolve_q(cfg, law);
  report = report_header("asai", law, q);
  report["m"] = cfg.m;
  Session session(cfg);
  report["caps"] = caps_json(session.caps());
  FieldTower tower(law.p);
  const FiniteGroupView view(law, tower, q, cfg.m, cfg.max_order);
  const auto table = session.classes(view);
  const auto r = norm_map(view, table, {session.degree_cap(view), true});
  std::vector<std::optional<Lemma21Witness>> lemma21;
  for (std::size_t c = 0; c < table->size(); ++c) {
    lemma21.push_back(lemma21_witness(view, r, c));
    if (lemma21.back().has_value() != (r.perm[c] == c)) {
      throw InternalInconsistency("fixed/witness disagreement at class " + std::to_string(c));
    }
  }
  auto level = level_json(r, lemma21, true);
  for (auto& [key, value] : level.items()) {
    if (key != "m") report[key] = value;
  }
  // Empirical record only: does pullback preserve <f, f> on delta functions?
  bool preserves = true;
  for (std::size_t c = 0; c < table->size(); ++c) {
    const auto f = ClassFunction::delta(table, c);
    const auto tf = asai_apply(r, f);
    if (inner_product(tf, tf) != inner_product(f, f)) preserves = false;
  }
  report["delta_norms_preserved"] = preserves;
  report["verdict"] = Json{{"asai_trivial", is_asai_trivial(r)}};
  session.finish(report, start);
  return kOk;
}

int cmd_easy_check(const RunConfig& cfg, Json& report) {
  const auto start = std::chrono::steady_clock::now();
  const auto law = resolve_law(cfg);
  const auto q = resolve_q(cfg, law);
  report = report_header("easy-check", law, q);
  report["max_m"] = cfg.max_m;
  Session session(cfg);
  report["caps"] = caps_json(session.caps());
  FieldTower tower(law.p);
  ScanCaps caps;
  caps.max_order = cfg.max_order;
  caps.max_extension = cfg.max_ext;
  caps.classes = [&session](const FiniteGroupView& v) { return session.classes(v); };
  const auto cr = theorem22_crosscheck(law, tower, q, cfg.max_m, caps);
  report["label"] = label_json(cr.label);
  Json levels = Json::array();
  for (const auto& l : cr.levels) levels.push_back(level_json(l.norm, l.lemma21, false));
  report["levels"] = std::move(levels);
  report["crosscheck"] = Json{{"columns", {"m", "class", "fixed", "witness", "agree"}},
                              {"rows", crosscheck_rows_json(cr.rows)},
                              {"status", to_string(cr.status)}};
  report["verdict"] = verdict_json(cr.verdict);
  session.finish(report, start);
  if (cr.status == CrosscheckStatus::kContradiction) {
    std::cerr << "error: family label Easy contradicted by a nontrivial norm map\n";
    return kInconsistent;
  }
  return cr.verdict.kind == VerdictKind::kInconclusive ? kCap : kOk;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"kind", kind}, {"message", message}};
}

// Runs one command; on failure the report carries an "error" member.
int execute(const RunConfig& cfg, Json& report) {
  try {
    if (cfg.command == "validate") return cmd_validate(cfg, report);
    if (cfg.command == "classes") return cmd_classes(cfg, report);
    if (cfg.command == "asai") return cmd_asai(cfg, report);
    if (cfg.command == "easy-check") return cmd_easy_check(cfg, report);
    throw ParameterError("unknown command '" + cfg.command + "'");
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    auto err = error_json("parse", e.what());
    err["line"] = e.line();
    err["column"] = e.column();
    report["error"] = std::move(err);
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    auto err = error_json("validation", e.what());
    if (e.coordinate() != 0) err["coordinate"] = e.coordinate();
    report["error"] = std::move(err);
    return kValidation;
  } catch (const ResourceLimitError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    report["error"] = error_json("cap", e.what());
    return kCap;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    report["error"] = error_json("internal", e.what());
    return kInconsistent;
  } catch (const ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    report["error"] = error_json("config", e.what());
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = error_json("other", e.what());
    return kOther;
  }
}

void write_output(const std::string& path, const Json& report) {
  const auto text = dump_report(report);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

RunConfig config_from_json(const nlohmann::json& j, const RunConfig& defaults) {
  RunConfig c = defaults;
  c.command = j.at("command").get<std::string>();
  c.group = j.value("group", std::string{});
  c.dsl = j.value("dsl", std::string{});
  if (j.contains("q")) c.q = j.at("q").get<std::uint64_t>();
  c.m = j.value("m", c.m);
  c.max_m = j.value("max_m", c.max_m);
  c.max_order = j.value("max_order", c.max_order);
  c.max_ext = j.value("max_ext", c.max_ext);
  c.cache = j.value("cache", c.cache);
  c.out = j.value("out", std::string{});
  return c;
}

// Batch mode: {"runs": [{"command": "asai", "group": "n2", "q": 3, "m": 1, "out": "..."}, ...]}.
// Runs without "out" are collected into one array written to --out.
int cmd_run(const std::string& config_path, const RunConfig& defaults) {
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(read_file(config_path));
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "parse error in " << config_path << ": " << e.what() << "\n";
    return kParse;
  } catch (const ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kParse;
  }
  if (!cfg.contains("runs") || !cfg["runs"].is_array()) {
    std::cerr << "configuration error: expected a \"runs\" array\n";
    return kParse;
  }
  int status = kOk;
  Json collected = Json::array();
  for (const auto& entry : cfg["runs"]) {
    RunConfig rc;
    try {
      rc = config_from_json(entry, defaults);
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "configuration error: " << e.what() << "\n";
      return kParse;
    }
    Json report;
    const int code = execute(rc, report);
    if (status == kOk) status = code;
    if (rc.out.empty()) {
      collected.push_back(std::move(report));
    } else {
      write_output(rc.out, report);
    }
  }
  if (!collected.empty()) write_output(defaults.out, collected);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm map and twisting operator on rational points of unipotent group laws"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string q_text;
  std::string run_config;

  auto add_common = [&](CLI::App* sub, bool levels) {
    sub->add_option("--group", cfg.group, "builtin law: ul(N), ga_power(D) or n2");
    sub->add_option("--dsl", cfg.dsl, "group law file")->check(CLI::ExistingFile);
    sub->add_option("--q", q_text, "field size q = p^n");
    sub->add_option("--out", cfg.out, "report path (default: stdout)");
    sub->add_option("--max-order", cfg.max_order, "cap on |G(F_{q^m})|")->check(CLI::PositiveNumber);
    if (levels) {
      sub->add_option("--cache", cfg.cache, "class table cache directory");
      sub->add_option("--max-ext", cfg.max_ext, "cap on the Lang witness extension degree N")
          ->check(CLI::PositiveNumber);
      sub->add_flag("--stats", cfg.stats, "include timings and cache statistics");
    }
  };

  auto* validate = app.add_subcommand("validate", "check the group axioms of a law");
  add_common(validate, false);
  auto* classes = app.add_subcommand("classes", "conjugacy classes of G(F_{q^m})");
  add_common(classes, true);
  classes->add_option("--m", cfg.m, "level m")->check(CLI::PositiveNumber);
  auto* asai = app.add_subcommand("asai", "norm map and centralizer witnesses at one level");
  add_common(asai, true);
  asai->add_option("--m", cfg.m, "level m")->check(CLI::PositiveNumber);
  auto* easy = app.add_subcommand("easy-check", "scan m = 1..max-m and cross-check fixed classes");
  add_common(easy, true);
  easy->add_option("--max-m", cfg.max_m, "largest level")->check(CLI::PositiveNumber);
  auto* run = app.add_subcommand("run", "batch of runs from a JSON config");
  run->add_option("config", run_config, "config file")->required();
  run->add_option("--out", cfg.out, "path for reports of runs without their own \"out\"");
  run->add_option("--cache", cfg.cache, "default class table cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  if (!q_text.empty()) {
    try {
      std::size_t used = 0;
      cfg.q = std::stoull(q_text, &used);
      if (used != q_text.size()) throw std::invalid_argument(q_text);
    } catch (const std::exception&) {
      std::cerr << "configuration error: --q expects an integer, got '" << q_text << "'\n";
      return kParse;
    }
  }

  try {
    if (run->parsed()) return cmd_run(run_config, cfg);
    cfg.command = app.get_subcommands().front()->get_name();
    Json report;
    const int code = execute(cfg, report);
    write_output(cfg.out, report);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}
