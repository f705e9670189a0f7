#include "reports.hpp"

#include <cstdio>
#include <sstream>

namespace cli {

namespace {

constexpr const char* report_format = "hoform-report/1";

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

const char* verdict(bool ok) { return ok ? "pass" : "FAIL"; }

}  // namespace

bool LemmaRun::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

bool SymbolicRun::passed() const {
  for (const auto& l : levels) {
    if (!l.passed()) return false;
  }
  for (const auto& l : lemmas) {
    if (!l.passed()) return false;
  }
  return true;
}

bool NumericRun::passed() const {
  for (const auto& s : suites) {
    if (!s.passed()) return false;
  }
  return true;
}

json profile_json(const hoform::GroupProfile& p) {
  json dims = json::object();
  for (int k : p.weights()) dims[std::to_string(k)] = p.dim_cusp_forms(k);
  return {{"g", p.genus()}, {"m", p.cusps()}, {"dim_cusp_forms", dims}};
}

hoform::GroupProfile profile_from_json(const json& j) {
  std::map<int, int> dims;
  for (const auto& [k, d] : j.at("dim_cusp_forms").items()) dims[std::stoi(k)] = d.get<int>();
  return hoform::GroupProfile(j.at("g").get<int>(), j.at("m").get<int>(), dims);
}

json to_json(const SymbolicRun& run) {
  json levels = json::array();
  for (const auto& l : run.levels) {
    json entries = json::array();
    std::size_t failures = 0;
    for (const auto& c : l.checks) {
      failures += !c.passed;
      entries.push_back({{"entry", c.entry.label()},
                         {"family", std::string(hoform::to_string(c.family))},
                         {"residual_class", std::string(hoform::to_string(c.residual_class))},
                         {"passed", c.passed},
                         {"detail", c.detail}});
    }
    levels.push_back({{"t", l.t},
                      {"k", l.k},
                      {"I_size", l.I_size},
                      {"J_size", l.J_size},
                      {"rank", l.rank},
                      {"rank_ok", l.rank_ok},
                      {"failures", failures},
                      {"passed", l.passed()},
                      {"entries", entries}});
  }
  json lemmas = json::array();
  for (const auto& l : run.lemmas) {
    json entries = json::array();
    for (const auto& c : l.checks) {
      json e{{"entry", c.entry.label()}, {"passed", c.passed}};
      if (!c.passed) {
        e["expected"] = c.expected.to_string();
        e["actual"] = c.actual.to_string();
      }
      entries.push_back(e);
    }
    lemmas.push_back({{"t", l.t}, {"k", l.k}, {"passed", l.passed()}, {"entries", entries}});
  }
  return {{"format", report_format},      {"kind", "symbolic"}, {"profile", profile_json(run.profile)},
          {"fault", run.fault},           {"levels", levels},   {"parabolic_lemma", lemmas},
          {"passed", run.passed()}};
}

json to_json(const NumericRun& run) {
  json suites = json::array();
  for (const auto& s : run.suites) {
    json checks = json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"kind", c.kind},
                        {"name", c.name},
                        {"residual", c.residual},
                        {"bound", c.bound},
                        {"tolerance", c.tolerance},
                        {"status", std::string(hoform::to_string(c.status))},
                        {"note", c.note}});
    }
    json kinds = json::array();
    for (const auto& [kind, r] : s.max_by_kind()) kinds.push_back({{"kind", kind}, {"max_residual", r}});
    json counts;
    for (auto st : {hoform::CheckStatus::pass, hoform::CheckStatus::fail, hoform::CheckStatus::precision_error,
                    hoform::CheckStatus::skipped}) {
      counts[std::string(hoform::to_string(st))] = s.count(st);
    }
    suites.push_back({{"suite", s.suite},
                      {"passed", s.passed()},
                      {"max_residual", s.max_residual()},
                      {"counts", counts},
                      {"max_by_kind", kinds},
                      {"checks", checks}});
  }
  json options{{"tol", run.options.tol},
               {"qn", run.options.qn},
               {"degree", run.options.degree},
               {"max_word_length", run.max_word_length},
               {"weights", run.weights}};
  return {{"format", report_format}, {"kind", "numeric"}, {"group", run.group_label}, {"fixture", run.fixture},
          {"options", options},      {"suites", suites},  {"passed", run.passed()}};
}

std::string symbolic_text(const json& r, bool full) {
  std::ostringstream out;
  const auto& p = r.at("profile");
  out << "symbolic verification, profile g=" << p.at("g") << " m=" << p.at("m");
  if (r.at("fault") != "none") out << ", injected fault " << r.at("fault").get<std::string>();
  out << "\n";
  for (const auto& l : r.at("levels")) {
    out << "  t=" << l.at("t") << " k=" << l.at("k") << "  |I|=" << l.at("I_size") << " |J|=" << l.at("J_size")
        << "  rank " << l.at("rank") << "/" << l.at("I_size") << "  failures " << l.at("failures") << "  "
        << verdict(l.at("passed").get<bool>()) << "\n";
    for (const auto& e : l.at("entries")) {
      if (!full && e.at("passed").get<bool>()) continue;
      out << "    " << (e.at("passed").get<bool>() ? "pass" : "FAIL") << " " << e.at("family").get<std::string>()
          << " " << e.at("entry").get<std::string>() << " " << e.at("residual_class").get<std::string>();
      if (!e.at("detail").get<std::string>().empty()) out << "  " << e.at("detail").get<std::string>();
      out << "\n";
    }
  }
  for (const auto& l : r.at("parabolic_lemma")) {
    out << "  parabolic lemma t=" << l.at("t") << " k=" << l.at("k") << "  " << l.at("entries").size()
        << " entries  " << verdict(l.at("passed").get<bool>()) << "\n";
    for (const auto& e : l.at("entries")) {
      if (!full && e.at("passed").get<bool>()) continue;
      out << "    " << (e.at("passed").get<bool>() ? "pass" : "FAIL") << " " << e.at("entry").get<std::string>()
          << "\n";
      if (e.contains("expected")) {
        out << "      expected " << e.at("expected").get<std::string>() << "\n      actual   "
            << e.at("actual").get<std::string>() << "\n";
      }
    }
  }
  out << "symbolic: " << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string numeric_text(const json& r, bool full) {
  std::ostringstream out;
  const auto& o = r.at("options");
  out << "numeric verification, " << r.at("group").get<std::string>() << "  tol " << sci(o.at("tol"))
      << "  N=" << o.at("qn") << "  degree " << o.at("degree") << "  words up to length " << o.at("max_word_length")
      << "\n";
  for (const auto& s : r.at("suites")) {
    const auto& c = s.at("counts");
    out << "  " << s.at("suite").get<std::string>() << ": " << s.at("checks").size() << " checks, max residual "
        << sci(s.at("max_residual")) << ", pass " << c.at("pass") << ", fail " << c.at("FAIL")
        << ", precision-error " << c.at("precision-error");
    if (c.at("skipped").get<int>()) out << ", skipped " << c.at("skipped");
    out << "  " << verdict(s.at("passed").get<bool>()) << "\n";
    for (const auto& k : s.at("max_by_kind")) {
      out << "    max " << k.at("kind").get<std::string>() << " " << sci(k.at("max_residual")) << "\n";
    }
    for (const auto& ch : s.at("checks")) {
      const std::string status = ch.at("status");
      if (!full && status == "pass") continue;
      out << "    " << status << " " << ch.at("name").get<std::string>() << "  residual " << sci(ch.at("residual"))
          << " bound " << sci(ch.at("bound")) << " tol " << sci(ch.at("tolerance"));
      if (!ch.at("note").get<std::string>().empty()) out << "  (" << ch.at("note").get<std::string>() << ")";
      out << "\n";
    }
  }
  out << "numeric: " << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

json dimension_table(const hoform::GroupProfile& profile, int t_max, const std::vector<int>& weights) {
  json rows = json::array();
  for (int k : weights) {
    if (!profile.has_weight(k)) continue;
    for (int t = 1; t <= t_max; ++t) {
      const auto d = hoform::dimension_ZM(t, k, profile);
      rows.push_back({{"t", t},
                      {"g", profile.genus()},
                      {"k", k},
                      {"dim_M_k", profile.dim_modular_forms(k)},
                      {"implemented", d.implemented},
                      {"enumerated", d.enumerated},
                      {"closed_form", d.closed_form}});
    }
  }
  return {{"rows", rows},
          {"note",
           "implemented = sum_{j=0}^{t-1} (2g)^j dim M_k, the number of spanning labels of orders 1..t; "
           "closed_form sums j = 0..t and counts one word length more"}};
}

json consolidated(const json& symbolic, const json& numeric, const json& dimensions) {
  json out{{"format", report_format}, {"kind", "report"}, {"dimensions", dimensions}};
  bool ok = true;
  if (!symbolic.is_null()) {
    json levels = json::array();
    for (const auto& l : symbolic.at("levels")) {
      levels.push_back({{"t", l.at("t")},
                        {"k", l.at("k")},
                        {"I_size", l.at("I_size")},
                        {"J_size", l.at("J_size")},
                        {"rank", l.at("rank")},
                        {"failures", l.at("failures")},
                        {"passed", l.at("passed")}});
    }
    json lemmas = json::array();
    for (const auto& l : symbolic.at("parabolic_lemma")) {
      lemmas.push_back({{"t", l.at("t")}, {"k", l.at("k")}, {"entries", l.at("entries").size()}, {"passed", l.at("passed")}});
    }
    out["symbolic"] = {{"profile", symbolic.at("profile")},
                       {"fault", symbolic.at("fault")},
                       {"levels", levels},
                       {"parabolic_lemma", lemmas},
                       {"passed", symbolic.at("passed")}};
    ok = ok && symbolic.at("passed").get<bool>();
  }
  if (!numeric.is_null()) {
    json suites = json::array();
    for (const auto& s : numeric.at("suites")) {
      suites.push_back({{"suite", s.at("suite")},
                        {"max_residual", s.at("max_residual")},
                        {"counts", s.at("counts")},
                        {"max_by_kind", s.at("max_by_kind")},
                        {"passed", s.at("passed")}});
    }
    out["numeric"] = {{"group", numeric.at("group")},
                      {"options", numeric.at("options")},
                      {"suites", suites},
                      {"passed", numeric.at("passed")}};
    ok = ok && numeric.at("passed").get<bool>();
  }
  out["passed"] = ok;
  return out;
}

std::string consolidated_text(const json& r) {
  std::ostringstream out;
  out << "hoform report\n\n";
  if (r.contains("symbolic")) {
    const auto& s = r.at("symbolic");
    out << "symbolic (g=" << s.at("profile").at("g") << ", m=" << s.at("profile").at("m") << "): "
        << (s.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
    for (const auto& l : s.at("levels")) {
      out << "  t=" << l.at("t") << " k=" << l.at("k") << "  |I|=" << l.at("I_size") << " |J|=" << l.at("J_size")
          << "  rank " << l.at("rank") << "  failures " << l.at("failures") << "\n";
    }
    for (const auto& l : s.at("parabolic_lemma")) {
      out << "  parabolic lemma t=" << l.at("t") << " k=" << l.at("k") << "  " << l.at("entries") << " entries  "
          << verdict(l.at("passed").get<bool>()) << "\n";
    }
    out << "\n";
  }
  if (r.contains("numeric")) {
    const auto& n = r.at("numeric");
    out << "numeric (" << n.at("group").get<std::string>() << ", tol " << sci(n.at("options").at("tol"))
        << "): " << (n.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
    for (const auto& s : n.at("suites")) {
      out << "  " << s.at("suite").get<std::string>() << "  max residual " << sci(s.at("max_residual")) << "  "
          << verdict(s.at("passed").get<bool>()) << "\n";
      for (const auto& k : s.at("max_by_kind")) {
        out << "    " << k.at("kind").get<std::string>() << " " << sci(k.at("max_residual")) << "\n";
      }
    }
    out << "\n";
  }
  out << "dimension table\n";
  char line[128];
  std::snprintf(line, sizeof line, "  %3s %3s %3s %8s %12s %11s %12s\n", "t", "g", "k", "dim M_k", "implemented",
                "enumerated", "closed form");
  out << line;
  for (const auto& row : r.at("dimensions").at("rows")) {
    std::snprintf(line, sizeof line, "  %3d %3d %3d %8d %12zu %11zu %12zu\n", row.at("t").get<int>(),
                  row.at("g").get<int>(), row.at("k").get<int>(), row.at("dim_M_k").get<int>(),
                  row.at("implemented").get<std::size_t>(), row.at("enumerated").get<std::size_t>(),
                  row.at("closed_form").get<std::size_t>());
    out << line;
  }
  out << "  note: " << r.at("dimensions").at("note").get<std::string>() << "\n\n";
  out << "overall: " << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace cli
