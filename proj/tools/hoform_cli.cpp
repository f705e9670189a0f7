#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hoform/checks.hpp"
#include "hoform/constructor.hpp"
#include "hoform/error.hpp"
#include "reports.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace cli;

namespace {

constexpr int exit_pass = 0, exit_failure = 1, exit_usage = 2;

struct Flags {
  std::string config;
  int t = 0;
  std::vector<int> k;
  int g = 0, m = 0;
  std::string group;
  double tol = 0;
  int qn = 0, degree = 0, jobs = -1;
  std::string out;
  std::string fault = "none";
  std::string word, base, family = "Z";
  int max_length = 0;
  bool full = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration; flags override its values");
  cmd->add_option("--t", f.t, "order t (verify commands: maximum order t_max)");
  cmd->add_option("--k", f.k, "weight(s)");
  cmd->add_option("--g", f.g, "genus of the abstract group profile");
  cmd->add_option("--m", f.m, "number of inequivalent cusps of the profile");
  cmd->add_option("--group", f.group, "group fixture (JSON), resolved against $HOFORM_FIXTURES");
  cmd->add_option("--tol", f.tol, "target residual");
  cmd->add_option("--qn", f.qn, "q-expansion coefficients used");
  cmd->add_option("--degree", f.degree, "Gauss-Legendre nodes per panel");
  cmd->add_option("--jobs", f.jobs, "worker threads, 0 = all cores");
  cmd->add_option("--out", f.out, "report directory");
}

RunConfig make_config(const Flags& f, const CLI::App& cmd) {
  RunConfig c;
  if (!f.config.empty()) apply_config_file(c, f.config);
  if (cmd.count("--t")) c.t_max = f.t;
  if (cmd.count("--k")) c.weights = f.k;
  if (cmd.count("--g")) c.genus = f.g;
  if (cmd.count("--m")) c.cusps = f.m;
  if (cmd.count("--group")) {
    c.group = f.group;
    c.group_given = true;
  }
  if (cmd.count("--tol")) c.tolerance = f.tol;
  if (cmd.count("--qn")) c.qseries_N = f.qn;
  if (cmd.count("--degree")) c.quadrature_degree = f.degree;
  if (cmd.count("--jobs")) c.parallelism = f.jobs;
  if (cmd.count("--out")) c.report_dir = f.out;
  c.validate();
  return c;
}

hoform::GroupData load_fixture(const RunConfig& c) {
  const fs::path path = resolve_fixture(c.group);
  try {
    return hoform::load_group(path);
  } catch (const hoform::Error& e) {
    throw UsageError(std::string("cannot use fixture ") + path.string() + ": " + e.what());
  }
}

hoform::GroupProfile symbolic_profile(const RunConfig& c) {
  if (c.group_given) return load_fixture(c).profile();
  int max_weight = 2;
  for (int k : c.weights) max_weight = std::max(max_weight, k);
  return hoform::GroupProfile::torsion_free(c.genus, c.cusps, max_weight);
}

void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

void write_report(const fs::path& dir, const std::string& stem, const json& report, const std::string& text) {
  write_file(dir / (stem + ".json"), report.dump(1) + "\n");
  write_file(dir / (stem + ".txt"), text);
}

json read_report(const fs::path& path) {
  if (!fs::is_regular_file(path)) return nullptr;
  std::ifstream in(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("unreadable report " + path.string() + ": " + e.what());
  }
}

int cmd_enumerate(const Flags& f, const CLI::App& cmd) {
  if (!cmd.count("--t") || f.t < 1) throw UsageError("enumerate needs --t >= 1");
  RunConfig c = make_config(f, cmd);
  if (!cmd.count("--k")) c.weights = {2};
  if (c.weights.size() != 1) throw UsageError("enumerate takes a single --k");
  const int k = c.weights.front();
  const auto profile = symbolic_profile(c);
  if (!profile.has_weight(k)) throw UsageError("weight " + std::to_string(k) + " is not in the profile");
  const auto J = hoform::enumerate_J(f.t, k, profile);
  std::size_t in_I = 0;
  std::cout << "J_{" << f.t << "," << k << "} for g=" << profile.genus() << " m=" << profile.cusps() << "\n";
  for (const auto& e : J) {
    const auto reason = hoform::exclusion_reason(e, k);
    in_I += reason == hoform::ExclusionReason::none;
    std::cout << "  " << e.label() << "  "
              << (reason == hoform::ExclusionReason::none ? "I" : "excluded: " + std::string(hoform::to_string(reason)))
              << "\n";
  }
  std::cout << "J entries: " << J.size() << "\nI entries: " << in_I << "\n";
  return exit_pass;
}

hoform::Word parse_word(const std::string& text) {
  hoform::Word w;
  std::string s = text;
  for (char& ch : s) {
    if (ch == ',' || ch == '[' || ch == ']') ch = ' ';
  }
  std::istringstream in(s);
  int x;
  while (in >> x) w.push_back(x);
  if (!in.eof()) throw UsageError("bad word '" + text + "'");
  return w;
}

int cmd_construct(const Flags& f, const CLI::App& cmd) {
  RunConfig c = make_config(f, cmd);
  const auto base = hoform::parse_base_form(f.base);
  if (!base) throw UsageError("bad base form '" + f.base + "' (examples: f1, s4.2, e2.1, 1)");
  const hoform::IndexEntry entry{parse_word(f.word), *base};
  if (cmd.count("--t") && f.t != entry.order()) throw UsageError("--t disagrees with the word length");
  int max_weight = std::max(2, base->weight);
  for (int k : c.weights) max_weight = std::max(max_weight, k);
  const auto profile = c.group_given ? load_fixture(c).profile()
                                     : hoform::GroupProfile::torsion_free(c.genus, c.cusps, max_weight);
  const auto fault = hoform::parse_fault(f.fault);
  if (!fault) throw UsageError("unknown fault '" + f.fault + "'");
  hoform::Constructor ctor(profile, {.fault = *fault});
  std::shared_ptr<const hoform::ConstructionRecord> rec;
  try {
    rec = f.family == "Z" ? ctor.construct_Z(entry) : ctor.construct_Zprime(entry);
  } catch (const hoform::Error& e) {
    throw UsageError(e.what());
  }
  std::cout << "entry     " << entry.label() << "\n"
            << "family    " << hoform::to_string(rec->family) << "\n"
            << "stage     " << rec->stage << "\n"
            << "shuffles  " << rec->shuffles << "\n"
            << "form      " << hoform::serialize(rec->form) << "\n"
            << "equation\n" << rec->form->fe().to_string() << "\n"
            << "residual  " << hoform::to_string(rec->residual_class) << "\n";
  if (!rec->residual.is_zero()) std::cout << rec->residual.to_string() << "\n";
  return rec->residual_class == hoform::ResidualClass::outside_A ? exit_failure : exit_pass;
}

int cmd_verify_symbolic(const Flags& f, const CLI::App& cmd) {
  const RunConfig c = make_config(f, cmd);
  const auto fault = hoform::parse_fault(f.fault);
  if (!fault) throw UsageError("unknown fault '" + f.fault + "'");
  SymbolicRun run{symbolic_profile(c), f.fault, {}, {}};
  hoform::Constructor ctor(run.profile, {.fault = *fault});
  for (int k : c.weights) {
    if (!run.profile.has_weight(k)) throw UsageError("weight " + std::to_string(k) + " is not in the profile");
    for (int t = 1; t <= c.t_max; ++t) run.levels.push_back(hoform::verify_level(ctor, t, k, c.parallelism));
    for (int t = 3; t <= c.t_max; ++t) run.lemmas.push_back({t, k, hoform::check_parabolic_lemma(ctor, t, k)});
  }
  const json report = to_json(run);
  write_report(c.report_dir, "symbolic", report, symbolic_text(report, true));
  std::cout << symbolic_text(report, false);
  return run.passed() ? exit_pass : exit_failure;
}

int cmd_verify_numeric(const Flags& f, const CLI::App& cmd) {
  RunConfig c = make_config(f, cmd);
  const hoform::GroupData G = load_fixture(c);
  const auto opt = c.numeric();
  NumericRun run;
  run.group_label = G.label;
  run.fixture = c.group;
  run.options = opt;
  run.max_word_length = std::min(c.t_max, 3);
  run.weights = c.weights;
  try {
    run.suites.push_back(hoform::symbol_suite(G, opt));
    const hoform::IteratedContext ctx(G, opt);
    run.suites.push_back(hoform::iterated_suite(ctx, run.max_word_length));
    run.suites.push_back(hoform::shuffle_suite(ctx));
    run.suites.push_back(hoform::cocycle_suite(G, opt, c.weights));
  } catch (const hoform::Error& e) {
    if (e.kind() != hoform::ErrorKind::precision_error) throw;
    hoform::SuiteResult s{"setup", {}};
    hoform::CheckResult r;
    r.kind = "setup";
    r.name = "setup";
    r.status = hoform::CheckStatus::precision_error;
    r.note = e.what();
    s.checks.push_back(r);
    run.suites.push_back(s);
  }
  const json report = to_json(run);
  write_report(c.report_dir, "numeric", report, numeric_text(report, true));
  std::cout << numeric_text(report, false);
  return run.passed() ? exit_pass : exit_failure;
}

int cmd_report(const Flags& f, const CLI::App& cmd) {
  const RunConfig c = make_config(f, cmd);
  const json symbolic = read_report(c.report_dir / "symbolic.json");
  const json numeric = read_report(c.report_dir / "numeric.json");
  if (symbolic.is_null() && numeric.is_null()) {
    std::cerr << "nothing to report in " << c.report_dir.string() << " (run verify-symbolic or verify-numeric first)\n";
    return exit_failure;
  }
  hoform::GroupProfile profile = symbolic.is_null() ? symbolic_profile(c) : profile_from_json(symbolic.at("profile"));
  const json report = consolidated(symbolic, numeric, dimension_table(profile, c.t_max, c.weights));
  const std::string text = consolidated_text(report);
  write_report(c.report_dir, "report", report, text);
  std::cout << text;
  return exit_pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hoform: bases of higher-order modular forms, symbolic construction and numeric checks.\n"
      "Exit codes: 0 pass, 1 verification failure, 2 usage or environment error.\n"
      "Fixture names are looked up in the working directory, then in $HOFORM_FIXTURES."};
  app.require_subcommand(1);
  Flags f;

  auto* enumerate = app.add_subcommand("enumerate", "list J_{t,k} with exclusion reasons and the I_{t,k} count");
  add_common(enumerate, f);
  auto* construct = app.add_subcommand("construct", "build one Z or Z' and print its functional equation");
  add_common(construct, f);
  construct->add_option("--word", f.word, "letters, e.g. 1,-1 (empty for order 1)");
  construct->add_option("--base", f.base, "basis form: f1, s4.2, e2.1, ...")->required();
  construct->add_option("--family", f.family, "Z or Zprime")->check(CLI::IsMember({"Z", "Zprime"}));
  auto* symbolic = app.add_subcommand("verify-symbolic", "construct every basis element up to t_max and check it");
  add_common(symbolic, f);
  auto* numeric = app.add_subcommand("verify-numeric", "run the numeric identity suites on a group fixture");
  add_common(numeric, f);
  auto* report = app.add_subcommand("report", "consolidate saved reports with the dimension table");
  add_common(report, f);
  for (auto* cmd : {construct, symbolic}) {
    cmd->add_option("--inject-fault", f.fault)->group("");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (*enumerate) return cmd_enumerate(f, *enumerate);
    if (*construct) return cmd_construct(f, *construct);
    if (*symbolic) return cmd_verify_symbolic(f, *symbolic);
    if (*numeric) return cmd_verify_numeric(f, *numeric);
    if (*report) return cmd_report(f, *report);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const hoform::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_usage;
}
