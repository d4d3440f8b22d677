#include "abqlab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "abqlab/dimension_bounds.hpp"
#include "abqlab/sym2_decomp.hpp"

namespace abq {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::invalid_argument("report: bad number '" + s + "'");
  return v;
}

std::string join_ints(const std::vector<int>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string tuple_string(const std::vector<int>& v) { return "(" + join_ints(v, ",") + ")"; }

Precision precision_or_throw(const std::string& s) {
  const auto p = parse_precision(s);
  if (!p) throw std::invalid_argument("report: unknown precision '" + s + "'");
  return *p;
}

}  // namespace

LabConfig RunConfig::lab_config() const {
  LabConfig c;
  c.samples = effective_samples();
  c.tolerance = tolerance;
  c.target_tail = target_tail;
  c.seed = seed;
  c.precision = precision;
  return c;
}

std::vector<Expectation> evaluate_expectations(const IdealReport& r) {
  std::vector<Expectation> out;
  auto add = [&](std::string name, bool pass, std::string expected, std::string observed) {
    out.push_back({std::move(name), pass, std::move(expected), std::move(observed)});
  };
  const int n = r.n;

  add("gap_ratio", r.gap_ratio >= 1e4, ">= 1e4", fmt_double(r.gap_ratio));
  add("heisenberg_invariance", r.heisenberg_residual < 1e-8, "< 1e-8", fmt_double(r.heisenberg_residual));

  if (n >= 5) {
    const auto ks = possible_k(n);
    std::vector<int> kv(ks.begin(), ks.end());
    add("k_admissible", ks.count(r.k) > 0, "in {" + join_ints(kv, ",") + "}", std::to_string(r.k));
  }
  const int predicted = predicted_k(n);
  if (predicted >= 0) add("k", r.k == predicted, std::to_string(predicted), std::to_string(r.k));

  if (n % 2 == 1) {
    add("k_multiple_of_n", r.k % n == 0, "multiple of " + std::to_string(n), std::to_string(r.k));
    return out;
  }

  std::vector<int> expected_tuple;
  if (n >= 6 && n <= 12) {
    const auto res = resolve_ideal_dimensions(n);
    if (res.status == ResolveStatus::Unique) {
      expected_tuple.assign(res.tuples.front().begin(), res.tuples.front().end());
      add("isotypic", r.isotypic == expected_tuple, tuple_string(expected_tuple), tuple_string(r.isotypic));
    }
  }

  bool any_base = false;
  for (const auto& t : r.torsion) {
    if (!expected_tuple.empty()) {
      IdealDimTuple tup{expected_tuple[0], expected_tuple[1], expected_tuple[2], expected_tuple[3]};
      const auto kb = base_counts(n, tup);
      const auto label = parse_torsion_label(t.involution);
      if (label) {
        const int want_b = kb[static_cast<int>(*label)];
        const int want_h = r.k - want_b;
        add("split_" + t.point, t.k_b == want_b && t.k_h == want_h,
            "(" + std::to_string(want_b) + "," + std::to_string(want_h) + ")",
            "(" + std::to_string(t.k_b) + "," + std::to_string(t.k_h) + ")");
      } else {
        add("split_" + t.point, false, "known involution", t.involution);
      }
    } else {
      add("split_sum_" + t.point, t.k_b + t.k_h == r.k, std::to_string(r.k),
          std::to_string(t.k_b + t.k_h));
    }
    any_base = any_base || t.k_b > 0;
  }
  if (any_base) add("scroll_containment", r.scroll_residual < 1e-8, "< 1e-8", fmt_double(r.scroll_residual));
  return out;
}

bool ReportDocument::pass() const {
  for (const auto& e : expectations) {
    if (!e.pass) return false;
  }
  return true;
}

ReportDocument make_document(const RunConfig& cfg, const VerificationRun& run) {
  ReportDocument doc;
  doc.config = cfg;
  doc.report = run.report;
  doc.retry_log = run.retry_log;
  doc.expectations = evaluate_expectations(run.report);
  return doc;
}

std::string format_report_text(const ReportDocument& doc) {
  std::ostringstream out;
  const auto& c = doc.config;
  const auto& r = doc.report;
  out << "abqlab-report v" << kReportVersion << "\n";
  out << "config.command = " << c.command << "\n";
  out << "config.n = " << c.n << "\n";
  out << "config.seed = " << c.seed << "\n";
  out << "config.samples = " << c.samples << "\n";
  out << "config.tolerance = " << fmt_double(c.tolerance) << "\n";
  out << "config.target_tail = " << fmt_double(c.target_tail) << "\n";
  out << "config.precision = " << to_string(c.precision) << "\n";
  out << "config.omega_file = " << c.omega_file << "\n";
  out << "config.out = " << c.out << "\n";
  out << "run.omega_seed = " << r.omega_seed << "\n";
  out << "run.omega =";
  for (const auto& w : r.omega) out << " " << fmt_double(w.real()) << " " << fmt_double(w.imag());
  out << "\n";
  out << "run.samples = " << r.samples << "\n";
  out << "run.retries = " << r.retries << "\n";
  for (const auto& line : doc.retry_log) out << "run.retry = " << line << "\n";
  out << "result.n = " << r.n << "\n";
  out << "result.k = " << r.k << "\n";
  out << "result.isotypic = " << join_ints(r.isotypic) << "\n";
  for (const auto& t : r.torsion) {
    out << "result.torsion = " << t.point << " " << t.involution << " " << t.k_b << " " << t.k_h << " "
        << t.base_families << " " << fmt_double(t.scroll_residual) << " " << fmt_double(t.harmonic_control)
        << "\n";
  }
  out << "diag.gap_ratio = " << fmt_double(r.gap_ratio) << "\n";
  out << "diag.sigma_max = " << fmt_double(r.sigma_max) << "\n";
  out << "diag.kept_sigma_min = " << fmt_double(r.kept_sigma_min) << "\n";
  out << "diag.dropped_sigma_max = " << fmt_double(r.dropped_sigma_max) << "\n";
  out << "diag.verification_residual = " << fmt_double(r.verification_residual) << "\n";
  out << "diag.heisenberg_residual = " << fmt_double(r.heisenberg_residual) << "\n";
  out << "diag.equivariance_residual = " << fmt_double(r.equivariance_residual) << "\n";
  out << "diag.sigma_direction = " << r.sigma_direction << "\n";
  out << "diag.scroll_residual = " << fmt_double(r.scroll_residual) << "\n";
  out << "diag.harmonic_control = " << fmt_double(r.harmonic_control) << "\n";
  for (const auto& e : doc.expectations) {
    out << "expect = " << e.name << "|" << (e.pass ? "PASS" : "FAIL") << "|" << e.expected << "|" << e.observed
        << "\n";
  }
  out << "status = " << (doc.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

ReportDocument parse_report_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "abqlab-report v" + std::to_string(kReportVersion)) {
    throw std::invalid_argument("report: missing or unsupported header");
  }
  ReportDocument doc;
  auto& c = doc.config;
  auto& r = doc.report;
  std::map<std::string, std::string> single;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find(" = ");
    std::string key;
    std::string value;
    if (eq == std::string::npos) {
      // "key =" with an empty value
      if (line.size() < 2 || line.substr(line.size() - 2) != " =") {
        throw std::invalid_argument("report: malformed line '" + line + "'");
      }
      key = line.substr(0, line.size() - 2);
    } else {
      key = line.substr(0, eq);
      value = line.substr(eq + 3);
    }
    if (key == "run.retry") {
      doc.retry_log.push_back(value);
    } else if (key == "result.torsion") {
      const auto f = split_ws(value);
      if (f.size() != 7) throw std::invalid_argument("report: bad torsion line");
      TorsionReport t;
      t.point = f[0];
      t.involution = f[1];
      t.k_b = std::stoi(f[2]);
      t.k_h = std::stoi(f[3]);
      t.base_families = f[4];
      t.scroll_residual = parse_double(f[5]);
      t.harmonic_control = parse_double(f[6]);
      r.torsion.push_back(t);
    } else if (key == "expect") {
      const auto f = split_on(value, '|');
      if (f.size() != 4) throw std::invalid_argument("report: bad expectation line");
      doc.expectations.push_back({f[0], f[1] == "PASS", f[2], f[3]});
    } else {
      single[key] = value;
    }
  }
  auto get = [&](const std::string& k) -> const std::string& {
    auto it = single.find(k);
    if (it == single.end()) throw std::invalid_argument("report: missing key " + k);
    return it->second;
  };
  c.command = get("config.command");
  c.n = std::stoi(get("config.n"));
  c.seed = std::stoull(get("config.seed"));
  c.samples = std::stoi(get("config.samples"));
  c.tolerance = parse_double(get("config.tolerance"));
  c.target_tail = parse_double(get("config.target_tail"));
  c.precision = precision_or_throw(get("config.precision"));
  c.omega_file = get("config.omega_file");
  c.out = get("config.out");
  r.omega_seed = std::stoull(get("run.omega_seed"));
  const auto om = split_ws(get("run.omega"));
  if (om.size() != 8) throw std::invalid_argument("report: omega needs 8 numbers");
  for (int i = 0; i < 4; ++i) r.omega[i] = {parse_double(om[2 * i]), parse_double(om[2 * i + 1])};
  r.samples = std::stoi(get("run.samples"));
  r.retries = std::stoi(get("run.retries"));
  r.n = std::stoi(get("result.n"));
  r.k = std::stoi(get("result.k"));
  for (const auto& t : split_ws(get("result.isotypic"))) r.isotypic.push_back(std::stoi(t));
  r.gap_ratio = parse_double(get("diag.gap_ratio"));
  r.sigma_max = parse_double(get("diag.sigma_max"));
  r.kept_sigma_min = parse_double(get("diag.kept_sigma_min"));
  r.dropped_sigma_max = parse_double(get("diag.dropped_sigma_max"));
  r.verification_residual = parse_double(get("diag.verification_residual"));
  r.heisenberg_residual = parse_double(get("diag.heisenberg_residual"));
  r.equivariance_residual = parse_double(get("diag.equivariance_residual"));
  r.sigma_direction = std::stoi(get("diag.sigma_direction"));
  r.scroll_residual = parse_double(get("diag.scroll_residual"));
  r.harmonic_control = parse_double(get("diag.harmonic_control"));
  const bool status = get("status") == "PASS";
  if (status != doc.pass()) throw std::invalid_argument("report: status disagrees with expectations");
  return doc;
}

std::string format_report_json(const ReportDocument& doc) {
  using nlohmann::ordered_json;
  const auto& c = doc.config;
  const auto& r = doc.report;
  ordered_json j;
  j["format"] = "abqlab-report";
  j["version"] = kReportVersion;
  j["config"] = {{"command", c.command},
                 {"n", c.n},
                 {"seed", c.seed},
                 {"samples", c.samples},
                 {"tolerance", c.tolerance},
                 {"target_tail", c.target_tail},
                 {"precision", to_string(c.precision)},
                 {"omega_file", c.omega_file},
                 {"out", c.out}};
  ordered_json omega = ordered_json::array();
  for (const auto& w : r.omega) omega.push_back({w.real(), w.imag()});
  j["run"] = {{"omega_seed", r.omega_seed},
              {"omega", omega},
              {"samples", r.samples},
              {"retries", r.retries},
              {"retry_log", doc.retry_log}};
  ordered_json torsion = ordered_json::array();
  for (const auto& t : r.torsion) {
    torsion.push_back({{"point", t.point},
                       {"involution", t.involution},
                       {"k_b", t.k_b},
                       {"k_h", t.k_h},
                       {"base_families", t.base_families},
                       {"scroll_residual", t.scroll_residual},
                       {"harmonic_control", t.harmonic_control}});
  }
  j["result"] = {{"n", r.n}, {"k", r.k}, {"isotypic", r.isotypic}, {"torsion", torsion}};
  j["diagnostics"] = {{"gap_ratio", r.gap_ratio},
                      {"sigma_max", r.sigma_max},
                      {"kept_sigma_min", r.kept_sigma_min},
                      {"dropped_sigma_max", r.dropped_sigma_max},
                      {"verification_residual", r.verification_residual},
                      {"heisenberg_residual", r.heisenberg_residual},
                      {"equivariance_residual", r.equivariance_residual},
                      {"sigma_direction", r.sigma_direction},
                      {"scroll_residual", r.scroll_residual},
                      {"harmonic_control", r.harmonic_control}};
  ordered_json ex = ordered_json::array();
  for (const auto& e : doc.expectations) {
    ex.push_back({{"name", e.name}, {"pass", e.pass}, {"expected", e.expected}, {"observed", e.observed}});
  }
  j["expectations"] = ex;
  j["status"] = doc.pass() ? "PASS" : "FAIL";
  return j.dump(2) + "\n";
}

ReportDocument parse_report_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("format") != "abqlab-report" || j.at("version") != kReportVersion) {
    throw std::invalid_argument("report: unsupported JSON format");
  }
  ReportDocument doc;
  auto& c = doc.config;
  auto& r = doc.report;
  const auto& jc = j.at("config");
  c.command = jc.at("command").get<std::string>();
  c.n = jc.at("n").get<int>();
  c.seed = jc.at("seed").get<std::uint64_t>();
  c.samples = jc.at("samples").get<int>();
  c.tolerance = jc.at("tolerance").get<double>();
  c.target_tail = jc.at("target_tail").get<double>();
  c.precision = precision_or_throw(jc.at("precision").get<std::string>());
  c.omega_file = jc.at("omega_file").get<std::string>();
  c.out = jc.at("out").get<std::string>();
  const auto& jr = j.at("run");
  r.omega_seed = jr.at("omega_seed").get<std::uint64_t>();
  for (int i = 0; i < 4; ++i) {
    r.omega[i] = {jr.at("omega").at(i).at(0).get<double>(), jr.at("omega").at(i).at(1).get<double>()};
  }
  r.samples = jr.at("samples").get<int>();
  r.retries = jr.at("retries").get<int>();
  doc.retry_log = jr.at("retry_log").get<std::vector<std::string>>();
  const auto& res = j.at("result");
  r.n = res.at("n").get<int>();
  r.k = res.at("k").get<int>();
  r.isotypic = res.at("isotypic").get<std::vector<int>>();
  for (const auto& t : res.at("torsion")) {
    r.torsion.push_back({t.at("point").get<std::string>(), t.at("involution").get<std::string>(),
                         t.at("k_b").get<int>(), t.at("k_h").get<int>(), t.at("base_families").get<std::string>(),
                         t.at("scroll_residual").get<double>(), t.at("harmonic_control").get<double>()});
  }
  const auto& d = j.at("diagnostics");
  r.gap_ratio = d.at("gap_ratio").get<double>();
  r.sigma_max = d.at("sigma_max").get<double>();
  r.kept_sigma_min = d.at("kept_sigma_min").get<double>();
  r.dropped_sigma_max = d.at("dropped_sigma_max").get<double>();
  r.verification_residual = d.at("verification_residual").get<double>();
  r.heisenberg_residual = d.at("heisenberg_residual").get<double>();
  r.equivariance_residual = d.at("equivariance_residual").get<double>();
  r.sigma_direction = d.at("sigma_direction").get<int>();
  r.scroll_residual = d.at("scroll_residual").get<double>();
  r.harmonic_control = d.at("harmonic_control").get<double>();
  for (const auto& e : j.at("expectations")) {
    doc.expectations.push_back({e.at("name").get<std::string>(), e.at("pass").get<bool>(),
                                e.at("expected").get<std::string>(), e.at("observed").get<std::string>()});
  }
  return doc;
}

void write_report_files(const std::string& path, const ReportDocument& doc) {
  for (const auto& [file, body] :
       {std::pair{path, format_report_text(doc)}, std::pair{path + ".json", format_report_json(doc)}}) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report " + file);
    out << body;
  }
}

std::string format_summary(const ReportDocument& doc) {
  const auto& r = doc.report;
  std::ostringstream out;
  out << "verify n=" << r.n << " seed=" << doc.config.seed << " samples=" << r.samples
      << " retries=" << r.retries << "\n";
  out << "  k = " << r.k << "   isotypic = " << tuple_string(r.isotypic) << "\n";
  for (const auto& t : r.torsion) {
    out << "  " << t.point << " (" << t.involution << "): k_b = " << t.k_b << ", k_h = " << t.k_h
        << ", base summand " << t.base_families << "\n";
  }
  out << "  gap ratio " << fmt_double(r.gap_ratio) << ", re-verification residual "
      << fmt_double(r.verification_residual) << ", scroll residual " << fmt_double(r.scroll_residual) << "\n";
  for (const auto& e : doc.expectations) {
    out << "  [" << (e.pass ? "PASS" : "FAIL") << "] " << e.name << ": expected " << e.expected << ", got "
        << e.observed << "\n";
  }
  out << (doc.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string format_decompose_table(int n) {
  std::ostringstream out;
  out << "Sym^2 V for n = " << n << ": dim " << sym2_dimension(n) << "\n";
  if (n % 2 == 1) {
    out << "component  dim\n";
    for (const auto& c : decompose(n)) out << c.name() << "  " << c.dimension() << "\n";
    return out.str();
  }
  const auto fam = families(n);
  const auto mult = family_multiplicities(n);
  out << "family  dim  multiplicity  sigma^d  tau^d\n";
  for (std::size_t f = 0; f < fam.size(); ++f) {
    if (fam[f].dimension() == 0) {
      out << fam[f].name() << "  0  0  -  -\n";
      continue;
    }
    const auto [ss, st] = central_signature(n, fam[f].l, fam[f].sign);
    out << fam[f].name() << "  " << fam[f].dimension() << "  " << mult[f] << "  " << (ss > 0 ? "+1" : "-1")
        << "  " << (st > 0 ? "+1" : "-1") << "\n";
  }
  out << "blocks:";
  for (const auto& c : decompose(n)) out << " " << c.name() << "[" << c.dimension() << "]";
  out << "\n";
  return out.str();
}

std::string format_bounds_table(int from, int to) {
  std::ostringstream out;
  out << "type     possible k     k_b       resolved (I0+,I0-,I1+,I1-)\n";
  for (int n = from; n <= to; ++n) {
    const auto ks = possible_k(n);
    std::vector<int> kv(ks.begin(), ks.end());
    std::string kb = "-";
    std::string resolved = "-";
    if (n % 2 == 0 && n / 2 >= 3) {
      const auto b = kb_bounds(n / 2);
      kb = join_ints(std::vector<int>(b.begin(), b.end()), ",");
    }
    if (n == 6 || n == 8 || n == 10 || n == 12) {
      const auto res = resolve_ideal_dimensions(n);
      resolved.clear();
      for (const auto& t : res.tuples) resolved += to_string(t) + " ";
      resolved += "[" + to_string(res.status) + "]";
    }
    char line[256];
    std::snprintf(line, sizeof line, "(1,%d)%*s%-14s %-9s %s\n", n, n < 10 ? 3 : 2, "",
                  join_ints(kv, ",").c_str(), kb.c_str(), resolved.c_str());
    out << line;
  }
  return out.str();
}

bool operator==(const TorsionReport& a, const TorsionReport& b) {
  return a.point == b.point && a.involution == b.involution && a.k_b == b.k_b && a.k_h == b.k_h &&
         a.base_families == b.base_families && a.scroll_residual == b.scroll_residual &&
         a.harmonic_control == b.harmonic_control;
}

bool operator==(const IdealReport& a, const IdealReport& b) {
  return a.n == b.n && a.k == b.k && a.isotypic == b.isotypic && a.torsion == b.torsion &&
         a.gap_ratio == b.gap_ratio && a.sigma_max == b.sigma_max && a.kept_sigma_min == b.kept_sigma_min &&
         a.dropped_sigma_max == b.dropped_sigma_max && a.verification_residual == b.verification_residual &&
         a.heisenberg_residual == b.heisenberg_residual && a.equivariance_residual == b.equivariance_residual &&
         a.sigma_direction == b.sigma_direction && a.scroll_residual == b.scroll_residual &&
         a.harmonic_control == b.harmonic_control && a.omega_seed == b.omega_seed && a.samples == b.samples &&
         a.retries == b.retries && a.omega == b.omega;
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.command == b.command && a.n == b.n && a.seed == b.seed && a.samples == b.samples &&
         a.tolerance == b.tolerance && a.target_tail == b.target_tail && a.precision == b.precision &&
         a.omega_file == b.omega_file && a.out == b.out;
}

bool operator==(const Expectation& a, const Expectation& b) {
  return a.name == b.name && a.pass == b.pass && a.expected == b.expected && a.observed == b.observed;
}

bool operator==(const ReportDocument& a, const ReportDocument& b) {
  return a.config == b.config && a.report == b.report && a.retry_log == b.retry_log &&
         a.expectations == b.expectations;
}

}  // namespace abq
