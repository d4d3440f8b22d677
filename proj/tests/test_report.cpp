#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "abqlab/report.hpp"

using namespace abq;

namespace {

ReportDocument synthetic_document() {
  ReportDocument doc;
  doc.config.command = "verify";
  doc.config.n = 10;
  doc.config.seed = 18446744073709551557ULL;
  doc.config.samples = 0;
  doc.config.tolerance = 1e-9;
  doc.config.precision = Precision::Extended;
  doc.config.omega_file = "";
  doc.config.out = "out dir/report.txt";
  auto& r = doc.report;
  r.n = 10;
  r.k = 15;
  r.isotypic = {5, 5, 5, 0};
  r.torsion = {{"x1", "sigma", 5, 10, "W_0^-+W_1^-", 1.2345678901234567e-14, 0.1 + 0.2},
               {"x2", "tau", 5, 10, "W_1^++W_1^-", 3e-300, 7.5}};
  r.gap_ratio = 1.0 / 3.0;
  r.sigma_max = 123.456;
  r.kept_sigma_min = 1e-3;
  r.dropped_sigma_max = 5e-324;
  r.verification_residual = 2.5e-15;
  r.heisenberg_residual = 0;
  r.equivariance_residual = 1e-14;
  r.sigma_direction = -1;
  r.scroll_residual = 1.2345678901234567e-14;
  r.harmonic_control = 0.30000000000000004;
  r.omega_seed = 99;
  r.samples = 220;
  r.retries = 1;
  r.omega = {std::complex<double>(0.1, 1.2), {-0.3, 0.4}, {-0.3, 0.4}, {0.25, 1.75}};
  doc.retry_log = {"attempt 0: indeterminate rank: gap ratio 12 below 10000"};
  doc.expectations = evaluate_expectations(r);
  return doc;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("text and JSON reports round-trip exactly") {
  const auto doc = synthetic_document();
  const auto text = format_report_text(doc);
  CHECK(text.rfind("abqlab-report v1\n", 0) == 0);
  const auto from_text = parse_report_text(text);
  CHECK(from_text == doc);
  CHECK(format_report_text(from_text) == text);

  const auto json = format_report_json(doc);
  const auto from_json = parse_report_json(json);
  CHECK(from_json == doc);
  CHECK(format_report_json(from_json) == json);
}

TEST_CASE("report from a real run round-trips and is written twice") {
  RunConfig cfg;
  cfg.n = 6;
  cfg.out = "test_report_n6.txt";
  const auto run = run_verification(6, cfg.lab_config());
  const auto doc = make_document(cfg, run);
  CHECK(doc.pass());
  write_report_files(cfg.out, doc);
  const auto text = slurp(cfg.out);
  const auto json = slurp(cfg.out + ".json");
  CHECK(parse_report_text(text) == doc);
  CHECK(parse_report_json(json) == doc);
  std::remove(cfg.out.c_str());
  std::remove((cfg.out + ".json").c_str());
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS(parse_report_text("abqlab-report v2\n"));
  CHECK_THROWS(parse_report_text("abqlab-report v1\nconfig.n = 3\n"));
  auto text = format_report_text(synthetic_document());
  const auto pos = text.find("status = ");
  auto flipped = text.substr(0, pos) + (synthetic_document().pass() ? "status = FAIL\n" : "status = PASS\n");
  CHECK_THROWS(parse_report_text(flipped));
  CHECK_THROWS(parse_report_json("{}"));
}

TEST_CASE("expectations") {
  IdealReport r;
  r.n = 10;
  r.k = 15;
  r.isotypic = {5, 5, 5, 0};
  r.gap_ratio = 1e6;
  for (auto [pt, inv] : {std::pair{"x1", "sigma"}, {"x2", "tau"}, {"x3", "sigmatau"}}) {
    r.torsion.push_back({pt, inv, 5, 10, "", 1e-14, 1.0});
  }
  auto ok = evaluate_expectations(r);
  bool all = true;
  for (const auto& e : ok) all = all && e.pass;
  CHECK(all);

  r.k = 20;
  auto bad = evaluate_expectations(r);
  int failures = 0;
  for (const auto& e : bad) failures += e.pass ? 0 : 1;
  CHECK(failures >= 1);

  r.k = 15;
  r.gap_ratio = 10;
  bool gap_failed = false;
  for (const auto& e : evaluate_expectations(r)) gap_failed = gap_failed || (e.name == "gap_ratio" && !e.pass);
  CHECK(gap_failed);

  IdealReport odd;
  odd.n = 9;
  odd.k = 9;
  odd.gap_ratio = 1e6;
  odd.isotypic = {9, 9, 9, 9, 9};
  for (const auto& e : evaluate_expectations(odd)) CHECK(e.pass);
}

TEST_CASE("bounds table") {
  const auto t = format_bounds_table(6, 12);
  CHECK(t.find("(1,6)   0,3            0         (0,0,0,0) [unique]") != std::string::npos);
  CHECK(t.find("(1,8)   4,8            0,4       (4,0,0,0) [unique]") != std::string::npos);
  CHECK(t.find("(1,10)  15,20          5         (5,5,5,0) [unique]") != std::string::npos);
  CHECK(t.find("(1,12)  30,36          12        (12,6,6,6) [unique]") != std::string::npos);
  CHECK(format_bounds_table(13, 13).find("(1,13)  39") != std::string::npos);
  CHECK(format_bounds_table(5, 5).find("(1,5)   0 ") != std::string::npos);
}

TEST_CASE("decompose table") {
  const auto t5 = format_decompose_table(5);
  CHECK(t5.find("W_0  5") != std::string::npos);
  CHECK(t5.find("W_2  5") != std::string::npos);
  const auto t8 = format_decompose_table(8);
  CHECK(t8.find("W_0^+  12  3  +1  +1") != std::string::npos);
  CHECK(t8.find("W_1^-  8  2  -1  -1") != std::string::npos);
  const auto t2 = format_decompose_table(2);
  CHECK(t2.find("dim 3") != std::string::npos);
}
