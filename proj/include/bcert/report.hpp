#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "bcert/estimator.hpp"
#include "bcert/oracle.hpp"

namespace bcert {

inline constexpr int kSchemaVersion = 1;

// Echo of the run configuration written into every report. Thread count is
// deliberately absent: reports must not depend on it.
struct RunInfo {
  std::string graph;
  double lambda = 1.0;
  double gamma = 1.0;
  std::optional<std::string> h;  // present in spectral mode
  std::optional<double> delta;   // present when p came from choose_p
  std::uint64_t p = 1;
  std::uint64_t seed = 0;
};

struct ReportOptions {
  // Wall-clock fields are written as null unless set, so output files are
  // byte-identical across runs.
  bool include_timing = false;
};

nlohmann::ordered_json certificate_json(const Certificate& cert, const RunInfo& run,
                                        const ReportOptions& options = {});

nlohmann::ordered_json dominated_json(const DominatedCertificate& cert, double kappa,
                                      const RunInfo& run, const ReportOptions& options = {});

struct BenchRun {
  std::uint64_t p = 0;
  std::uint64_t n = 0;
  Counters counters;
};

nlohmann::ordered_json bench_json(const BenchRun& run, const std::optional<BenchRun>& doubled,
                                  const RunInfo& info, const ReportOptions& options = {});

// Exact expectation and spectrum summary for small instances.
struct OracleReport {
  std::size_t n = 0;
  std::complex<double> exact_expectation;
  bool spectrum_computed = false;
  oracle::CheckResult nonnegativity;  // resolvent mode (or f2 in spectral mode)
  std::optional<double> kappa;
  std::optional<double> dominating_expectation;
  std::optional<oracle::CheckResult> domination;  // spectral mode
  std::optional<oracle::WalshSpectrum> spectrum;  // of the resolvent / dominating f2
};

struct OracleConfig {
  double lambda = 1.0;
  double gamma = 1.0;
  std::optional<std::string> h;
  double tol = 1e-10;
  unsigned threads = 1;  // not echoed into the report
};

OracleReport run_oracle(const Graph& graph, const OracleConfig& config);

nlohmann::ordered_json oracle_json(const OracleReport& report, const std::string& graph_label,
                                   const OracleConfig& config);

// Compact JSON with floats written as shortest round-trip decimals, followed
// by a newline.
std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace bcert
