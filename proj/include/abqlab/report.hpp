#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abqlab/quadric_lab.hpp"

namespace abq {

inline constexpr int kReportVersion = 1;

/// Settings of one CLI run; echoed into every report.
struct RunConfig {
  std::string command = "verify";
  int n = 0;
  std::uint64_t seed = 1;
  int samples = 0;  // 0: 2 n (n + 1)
  double tolerance = 1e-9;
  double target_tail = 1e-13;
  Precision precision = Precision::Double;
  std::string omega_file;
  std::string out;

  int effective_samples() const { return samples > 0 ? samples : 2 * n * (n + 1); }
  LabConfig lab_config() const;
};

struct Expectation {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string observed;
};

// Checks a report against the dimension counts predicted for its n.
std::vector<Expectation> evaluate_expectations(const IdealReport& r);

struct ReportDocument {
  RunConfig config;
  IdealReport report;
  std::vector<std::string> retry_log;
  std::vector<Expectation> expectations;

  bool pass() const;
};

ReportDocument make_document(const RunConfig& cfg, const VerificationRun& run);

// Line-oriented "key = value" text with a versioned header.
std::string format_report_text(const ReportDocument& doc);
ReportDocument parse_report_text(const std::string& text);

// JSON twin carrying the same fields.
std::string format_report_json(const ReportDocument& doc);
ReportDocument parse_report_json(const std::string& text);

// Writes PATH and PATH.json.
void write_report_files(const std::string& path, const ReportDocument& doc);

std::string format_summary(const ReportDocument& doc);
std::string format_decompose_table(int n);
std::string format_bounds_table(int from, int to);

bool operator==(const TorsionReport& a, const TorsionReport& b);
bool operator==(const IdealReport& a, const IdealReport& b);
bool operator==(const RunConfig& a, const RunConfig& b);
bool operator==(const Expectation& a, const Expectation& b);
bool operator==(const ReportDocument& a, const ReportDocument& b);

}  // namespace abq
