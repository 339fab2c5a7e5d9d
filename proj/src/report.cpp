#include "bcert/report.hpp"

#include <charconv>
#include <cmath>

#include "bcert/error.hpp"

namespace bcert {

using nlohmann::ordered_json;

namespace {

ordered_json config_json(const RunInfo& run) {
  ordered_json c;
  c["graph"] = run.graph;
  c["lambda"] = run.lambda;
  c["gamma"] = run.gamma;
  c["mode"] = run.h ? "spectral" : "resolvent";
  c["h"] = run.h ? ordered_json(*run.h) : ordered_json(nullptr);
  c["p"] = run.p;
  c["delta"] = run.delta ? ordered_json(*run.delta) : ordered_json(nullptr);
  c["seed"] = run.seed;
  return c;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json counters_json(const Counters& counters, const ReportOptions& options) {
  ordered_json c;
  c["evaluations"] = counters.evaluations;
  c["factorizations"] = counters.factorizations;
  c["wall_ms"] = options.include_timing ? ordered_json(counters.wall_ms) : ordered_json(nullptr);
  return c;
}

void append_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string_view text(buf, static_cast<std::size_t>(res.ptr - buf));
  out += text;
  // Keep floats recognisable as such ("2" -> "2.0").
  if (text.find_first_of(".eEn") == std::string_view::npos) out += ".0";
}

void dump_into(std::string& out, const ordered_json& j) {
  switch (j.type()) {
    case ordered_json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += ordered_json(key).dump();
        out += ':';
        dump_into(out, value);
      }
      out += '}';
      break;
    }
    case ordered_json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        dump_into(out, value);
      }
      out += ']';
      break;
    }
    case ordered_json::value_t::number_float:
      append_double(out, j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const ordered_json& doc) {
  std::string out;
  dump_into(out, doc);
  out += '\n';
  return out;
}

ordered_json certificate_json(const Certificate& cert, const RunInfo& run,
                              const ReportOptions& options) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "certificate";
  j["config"] = config_json(run);
  j["n"] = cert.dimension;
  j["f_bar"] = cert.f_bar;
  j["g_bar"] = cert.g_bar;
  j["lower"] = cert.lower;
  j["upper"] = cert.upper;
  j["realized_width"] = cert.upper - cert.lower;
  j["numerical_slack"] = cert.numerical_slack;
  j["g_at_ones"] = cert.g_at_ones;
  j["expected_width"] = cert.expected_width;
  j["markov_90_width"] = cert.markov_90_width;
  j["realized_within_markov"] = cert.realized_within_markov;
  j["c_bound"] = optional_number(cert.c_bound);
  j["apriori_width"] = optional_number(cert.apriori_width);
  j["counters"] = counters_json(cert.counters, options);
  return j;
}

ordered_json dominated_json(const DominatedCertificate& cert, double kappa, const RunInfo& run,
                            const ReportOptions& options) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "dominated_certificate";
  j["config"] = config_json(run);
  j["n"] = cert.dimension;
  j["kappa"] = kappa;
  j["center"] = {{"re", cert.center.real()}, {"im", cert.center.imag()}};
  j["radius"] = cert.radius;
  j["lower"] = cert.center.real() - cert.radius;
  j["upper"] = cert.center.real() + cert.radius;
  j["realized_width"] = 2.0 * cert.radius;
  j["numerical_slack"] = cert.numerical_slack;
  j["g_bar"] = cert.g_bar;
  j["g_at_ones"] = cert.g_at_ones;
  j["expected_width"] = cert.expected_width;
  j["markov_90_width"] = cert.markov_90_width;
  j["realized_within_markov"] = cert.realized_within_markov;
  j["c_bound"] = optional_number(cert.c_bound);
  j["apriori_width"] = optional_number(cert.apriori_width);
  j["counters"] = counters_json(cert.counters, options);
  return j;
}

namespace {

ordered_json bench_run_json(const BenchRun& run, const ReportOptions& options) {
  const auto naive = naive_equivalent_evaluations(run.n, run.p);
  ordered_json j;
  j["p"] = run.p;
  j["evaluations"] = run.counters.evaluations;
  j["factorizations"] = run.counters.factorizations;
  j["naive_equivalent_evaluations"] = naive;
  j["speedup"] = run.counters.factorizations == 0
                     ? ordered_json(nullptr)
                     : ordered_json(static_cast<double>(naive) /
                                    static_cast<double>(run.counters.factorizations));
  j["wall_ms"] =
      options.include_timing ? ordered_json(run.counters.wall_ms) : ordered_json(nullptr);
  return j;
}

}  // namespace

ordered_json bench_json(const BenchRun& run, const std::optional<BenchRun>& doubled,
                        const RunInfo& info, const ReportOptions& options) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bench";
  j["config"] = config_json(info);
  j["n"] = run.n;
  j["run"] = bench_run_json(run, options);
  if (doubled) {
    ordered_json d = bench_run_json(*doubled, options);
    d["wall_ratio"] = options.include_timing && run.counters.wall_ms > 0.0
                          ? ordered_json(doubled->counters.wall_ms / run.counters.wall_ms)
                          : ordered_json(nullptr);
    j["doubled"] = d;
  } else {
    j["doubled"] = nullptr;
  }
  return j;
}

OracleReport run_oracle(const Graph& graph, const OracleConfig& config) {
  ResolventParams params(config.lambda, config.gamma, laplacian(graph));
  OracleReport report;
  report.n = graph.vertex_count();
  const bool spectrum = report.n <= oracle::kMaxSpectrumDimension;

  if (!config.h) {
    const ResolventTrace f(params);
    if (spectrum) {
      auto s = oracle::walsh_spectrum(f, config.threads);
      report.exact_expectation = s.coefficients[0];
      report.nonnegativity = oracle::check_nonnegative(s, config.tol);
      report.spectrum = std::move(s);
      report.spectrum_computed = true;
    } else {
      report.exact_expectation = oracle::exact_expectation(f, config.threads);
    }
    return report;
  }

  const auto h = AnalyticFunction::parse(*config.h);
  const auto pair = dominating_resolvent_scale(h, params, graph);
  report.kappa = pair.kappa;
  if (spectrum) {
    const auto a = oracle::walsh_spectrum(*pair.f1, config.threads);
    auto b = oracle::walsh_spectrum(*pair.f2, config.threads);
    report.exact_expectation = a.coefficients[0];
    report.dominating_expectation = b.coefficients[0];
    report.nonnegativity = oracle::check_nonnegative(b, config.tol);
    report.domination = oracle::check_domination(a, b, config.tol);
    report.spectrum = std::move(b);
    report.spectrum_computed = true;
  } else {
    report.exact_expectation = oracle::exact_expectation(*pair.f1, config.threads);
    report.dominating_expectation = oracle::exact_expectation(*pair.f2, config.threads);
  }
  return report;
}

ordered_json oracle_json(const OracleReport& report, const std::string& graph_label,
                         const OracleConfig& config) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "oracle";
  ordered_json c;
  c["graph"] = graph_label;
  c["lambda"] = config.lambda;
  c["gamma"] = config.gamma;
  c["mode"] = config.h ? "spectral" : "resolvent";
  c["h"] = config.h ? ordered_json(*config.h) : ordered_json(nullptr);
  c["tol"] = config.tol;
  j["config"] = c;
  j["n"] = report.n;
  j["evaluations"] = std::uint64_t{1} << report.n;
  if (config.h) {
    j["exact_expectation"] = {{"re", report.exact_expectation.real()},
                              {"im", report.exact_expectation.imag()}};
    j["kappa"] = optional_number(report.kappa);
    j["dominating_expectation"] = optional_number(report.dominating_expectation);
  } else {
    j["exact_expectation"] = report.exact_expectation.real();
  }
  ordered_json s;
  s["computed"] = report.spectrum_computed;
  if (report.spectrum_computed) {
    s["min_coefficient"] = report.nonnegativity.worst_value;
    s["min_mask"] = report.nonnegativity.worst_mask;
    s["nonnegative"] = report.nonnegativity.ok;
    if (report.domination) {
      s["dominated"] = report.domination->ok;
      s["worst_excess"] = report.domination->worst_value;
      s["worst_excess_mask"] = report.domination->worst_mask;
    }
  }
  j["spectrum"] = s;
  return j;
}

}  // namespace bcert
