#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "abqlab/dimension_bounds.hpp"
#include "abqlab/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitUsage = 64;

int run_verify(const abq::RunConfig& cfg, bool quiet) {
  std::optional<abq::PeriodMatrix> fixed;
  if (!cfg.omega_file.empty()) {
    const auto file = abq::read_period_matrix(cfg.omega_file);
    if (file.matrix.n != cfg.n) {
      std::cerr << "error: period matrix file is for n = " << file.matrix.n << ", not " << cfg.n << "\n";
      return kExitUsage;
    }
    fixed = file.matrix;
  }
  try {
    const auto run = abq::run_verification(cfg.n, cfg.lab_config(), fixed);
    const auto doc = abq::make_document(cfg, run);
    if (!cfg.out.empty()) abq::write_report_files(cfg.out, doc);
    if (!quiet) std::cout << abq::format_summary(doc);
    return doc.pass() ? kExitOk : kExitFail;
  } catch (const abq::IndeterminateRankError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
  } catch (const abq::VerificationError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
  } catch (const abq::TailCertificationError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
  }
  return kExitIndeterminate;
}

int run_suite(const abq::RunConfig& base) {
  int worst = kExitOk;
  for (int n = 5; n <= 13; ++n) {
    abq::RunConfig cfg = base;
    cfg.command = "suite";
    cfg.n = n;
    std::cout << "== n = " << n << "\n" << std::flush;
    const int code = run_verify(cfg, false);
    if (code == kExitIndeterminate || (code == kExitFail && worst == kExitOk)) worst = code;
  }
  std::cout << (worst == kExitOk ? "suite PASS" : "suite FAIL") << "\n";
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrics through Heisenberg-invariant abelian surfaces"};
  app.require_subcommand(1);

  int dec_n = 0;
  auto* decompose = app.add_subcommand("decompose", "Print the decomposition of Sym^2 V");
  decompose->add_option("--n", dec_n, "Polarization type (1,n)")->required()->check(CLI::Range(2, 1000));

  int from = 0;
  int to = 0;
  auto* bounds = app.add_subcommand("bounds", "Print the admissible dimension table");
  bounds->add_option("--from", from, "First n")->required()->check(CLI::Range(5, 1000));
  bounds->add_option("--to", to, "Last n")->required()->check(CLI::Range(5, 1000));

  abq::RunConfig cfg;
  std::string precision = "double";
  auto* verify = app.add_subcommand("verify", "Compute the quadrics through a sampled surface");
  verify->add_option("--n", cfg.n, "Polarization type (1,n)")->required()->check(CLI::Range(5, 64));
  verify->add_option("--seed", cfg.seed, "Base seed");
  verify->add_option("--samples", cfg.samples, "Number of sample points (default 2n(n+1))")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--omega", cfg.omega_file, "Period matrix file")->check(CLI::ExistingFile);
  verify->add_option("--tol", cfg.tolerance, "Relative rank tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--precision", precision, "double or extended")
      ->check(CLI::IsMember({"double", "extended"}));
  verify->add_option("--out", cfg.out, "Report path (a .json twin is written next to it)");

  auto* suite = app.add_subcommand("suite", "Run verify for n = 5..13");
  suite->add_option("--seed", cfg.seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*decompose) {
      std::cout << abq::format_decompose_table(dec_n);
      return kExitOk;
    }
    if (*bounds) {
      if (from > to) {
        std::cerr << "error: --from must not exceed --to\n";
        return kExitUsage;
      }
      std::cout << abq::format_bounds_table(from, to);
      return kExitOk;
    }
    cfg.precision = *abq::parse_precision(precision);
    if (*verify) {
      cfg.command = "verify";
      return run_verify(cfg, false);
    }
    return run_suite(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIndeterminate;
  }
}
