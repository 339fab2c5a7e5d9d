// bcert command-line driver. Talks to the library only through bcert.h.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage or configuration error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcert/bcert.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

constexpr std::uint64_t kConfirmEvaluations = 1'000'000;

// Reproduction of the 15x15 torus enclosure.
constexpr int kReproduceSide = 15;
constexpr std::uint64_t kReproduceP = 30;
constexpr std::uint64_t kReproduceSeed = 1;
constexpr double kReferenceLower = 0.2006;
constexpr double kReferenceUpper = 0.2030;

struct CliFailure {
  int exit_code;
  std::string message;
};

int exit_code_for(bcert_status status) {
  switch (status) {
    case BCERT_OK: return kExitOk;
    case BCERT_ERR_NUMERICAL:
    case BCERT_ERR_INTERNAL: return kExitNumerical;
    default: return kExitUsage;
  }
}

void check(bcert_status status, const std::string& context) {
  if (status != BCERT_OK) {
    throw CliFailure{exit_code_for(status),
                     context + ": " + bcert_status_name(status) + ": " + bcert_last_error()};
  }
}

struct GraphDeleter {
  void operator()(bcert_graph* g) const { bcert_graph_free(g); }
};
struct CertificateDeleter {
  void operator()(bcert_certificate* c) const { bcert_certificate_free(c); }
};
struct OracleDeleter {
  void operator()(bcert_oracle_report* r) const { bcert_oracle_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { bcert_string_free(s); }
};

using GraphHandle = std::unique_ptr<bcert_graph, GraphDeleter>;
using CertificateHandle = std::unique_ptr<bcert_certificate, CertificateDeleter>;
using OracleHandle = std::unique_ptr<bcert_oracle_report, OracleDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

// torus:M or edges:PATH
GraphHandle load_graph(const std::string& spec) {
  bcert_graph* raw = nullptr;
  if (spec.rfind("torus:", 0) == 0) {
    int m = 0;
    try {
      std::size_t used = 0;
      m = std::stoi(spec.substr(6), &used);
      if (used != spec.size() - 6) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw CliFailure{kExitUsage, "bad torus side in --graph " + spec};
    }
    check(bcert_graph_torus(m, &raw), "--graph " + spec);
  } else if (spec.rfind("edges:", 0) == 0) {
    check(bcert_graph_from_file(spec.substr(6).c_str(), &raw), "--graph " + spec);
  } else {
    throw CliFailure{kExitUsage, "--graph must be torus:M or edges:PATH (got " + spec + ")"};
  }
  return GraphHandle(raw);
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t seed = 0;
  check(bcert_parse_seed(text.c_str(), &seed), "--seed");
  return seed;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text << std::flush;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    if (!out) throw CliFailure{kExitUsage, "cannot write " + out_path};
  }
}

struct RunArgs {
  std::string graph;
  double lambda = 1.0;
  double gamma = 1.0;
  std::optional<std::uint64_t> p;
  std::optional<double> delta;
  std::string seed = "0";
  std::string h;
  std::string out;
  unsigned threads = 0;
  bool yes = false;
  bool timing = false;
};

void add_run_options(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--graph", args.graph, "torus:M or edges:PATH")->required();
  cmd->add_option("--lambda", args.lambda, "disorder strength (> 0)")->capture_default_str();
  cmd->add_option("--gamma", args.gamma, "spectral gap (> 0)")->capture_default_str();
  auto* p = cmd->add_option("--p", args.p, "sample count");
  auto* delta = cmd->add_option("--delta", args.delta, "target error; p chosen automatically");
  p->excludes(delta);
  delta->excludes(p);
  cmd->add_option("--seed", args.seed, "SplitMix64 seed (decimal or 0x-hex)")
      ->capture_default_str();
  cmd->add_option("--h", args.h, "analytic h for spectral mode: poly:c0,c1,... or exp:s");
  cmd->add_option("--out", args.out, "also write the JSON report to this path");
  cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  cmd->add_flag("--yes", args.yes, "run even when more than 1e6 evaluations are implied");
  cmd->add_flag("--timing", args.timing, "record wall-clock times in the JSON report");
}

// Resolves p (directly or through delta) and fills the C option block.
bcert_run_options make_options(const RunArgs& args, const bcert_graph* graph) {
  if (!args.p && !args.delta) throw CliFailure{kExitUsage, "exactly one of --p or --delta is required"};

  bcert_run_options o;
  bcert_run_options_init(&o);
  o.lambda = args.lambda;
  o.gamma = args.gamma;
  o.seed = parse_seed(args.seed);
  o.threads = args.threads;
  o.h_spec = args.h.empty() ? nullptr : args.h.c_str();
  o.graph_label = args.graph.c_str();
  o.include_timing = args.timing ? 1 : 0;

  if (args.p) {
    if (*args.p == 0) throw CliFailure{kExitUsage, "--p must be at least 1"};
    o.p = *args.p;
    return o;
  }

  check(bcert_choose_p(args.lambda, args.gamma, *args.delta, &o.p), "--delta");
  o.delta = *args.delta;
  std::uint64_t evaluations = 0;
  std::uint64_t naive = 0;
  const std::uint64_t n = bcert_graph_vertex_count(graph);
  check(bcert_pair_evaluation_count(o.p, &evaluations), "--delta");
  check(bcert_naive_equivalent_evaluations(n, o.p, &naive), "--delta");

  // One timed evaluation at the all-ones point for the wall-time estimate.
  std::vector<std::int8_t> ones(n, 1);
  const auto start = std::chrono::steady_clock::now();
  check(bcert_evaluate_resolvent(graph, args.lambda, args.gamma, ones.data(), n, nullptr, nullptr),
        "timing probe");
  double per_eval =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.h_spec != nullptr) per_eval *= 2.0;

  std::fprintf(stderr,
               "delta %g -> p = %llu: %llu evaluations (naive-equivalent %llu), "
               "estimated wall time %.1f s on one core\n",
               *args.delta, static_cast<unsigned long long>(o.p),
               static_cast<unsigned long long>(evaluations),
               static_cast<unsigned long long>(naive), per_eval * static_cast<double>(evaluations));
  if (evaluations > kConfirmEvaluations && !args.yes) {
    throw CliFailure{kExitUsage, "refusing to run more than 1e6 evaluations without --yes"};
  }
  return o;
}

void print_summary(const bcert_summary& s) {
  if (s.dominated) {
    std::fprintf(stderr, "center = %.10g %+.3gi, radius = %.6g (kappa = %.10g)\n", s.f_bar,
                 s.center_im, s.radius, s.kappa);
  }
  std::fprintf(stderr, "certified interval [%.10f, %.10f] (n = %zu, p = %llu, seed = %llu)\n",
               s.lower, s.upper, s.n, static_cast<unsigned long long>(s.p),
               static_cast<unsigned long long>(s.seed));
  std::fprintf(stderr,
               "realized width %.6g, expected %.6g, markov-90 %.6g, a-priori %.6g, "
               "within markov: %s\n",
               s.upper - s.lower, s.expected_width, s.markov_90_width, s.apriori_width,
               s.realized_within_markov ? "yes" : "no");
  std::fprintf(stderr, "%llu evaluations, %llu factorizations, %.1f ms\n",
               static_cast<unsigned long long>(s.evaluations),
               static_cast<unsigned long long>(s.factorizations), s.wall_ms);
}

CertificateHandle run_certificate(const bcert_graph* graph, const bcert_run_options& o,
                                  bcert_summary& summary, std::string& json) {
  bcert_certificate* raw = nullptr;
  check(bcert_certify(graph, &o, &raw), "certify");
  CertificateHandle cert(raw);
  check(bcert_certificate_summary(cert.get(), &summary), "summary");
  char* text = nullptr;
  check(bcert_certificate_json(cert.get(), &text), "json");
  json = OwnedString(text).get();
  return cert;
}

int cmd_certify(const RunArgs& args) {
  const auto graph = load_graph(args.graph);
  const auto options = make_options(args, graph.get());
  bcert_summary summary{};
  std::string json;
  run_certificate(graph.get(), options, summary, json);
  print_summary(summary);
  emit(json, args.out);
  return kExitOk;
}

int cmd_reproduce(const std::string& out, unsigned threads, bool timing) {
  bcert_graph* raw = nullptr;
  check(bcert_graph_torus(kReproduceSide, &raw), "torus");
  const GraphHandle graph(raw);
  const std::string label = "torus:" + std::to_string(kReproduceSide);

  bcert_run_options o;
  bcert_run_options_init(&o);
  o.p = kReproduceP;
  o.seed = kReproduceSeed;
  o.threads = threads;
  o.graph_label = label.c_str();
  o.include_timing = timing ? 1 : 0;

  bcert_summary s{};
  std::string json;
  run_certificate(graph.get(), o, s, json);
  print_summary(s);
  const bool intersects = s.lower <= kReferenceUpper && kReferenceLower <= s.upper;
  std::fprintf(stderr, "reference enclosure [%.4f, %.4f]: %s\n", kReferenceLower,
               kReferenceUpper, intersects ? "intersects" : "DISJOINT");
  emit(json, out);
  return intersects ? kExitOk : kExitNumerical;
}

int cmd_oracle(const std::string& graph_spec, double lambda, double gamma, const std::string& h,
               const std::string& out, const std::string& csv, unsigned threads) {
  const auto graph = load_graph(graph_spec);
  bcert_oracle_report* raw = nullptr;
  check(bcert_oracle(graph.get(), lambda, gamma, h.empty() ? nullptr : h.c_str(),
                     graph_spec.c_str(), threads, &raw),
        "oracle");
  const OracleHandle report(raw);
  bcert_oracle_summary s{};
  check(bcert_oracle_summary_get(report.get(), &s), "oracle");
  std::fprintf(stderr, "exact expectation %.15g", s.exact_re);
  if (!h.empty()) std::fprintf(stderr, " %+.3gi", s.exact_im);
  std::fprintf(stderr, " over 2^%zu points\n", s.n);
  if (s.spectrum_computed) {
    std::fprintf(stderr, "min Walsh coefficient %.3g at mask %llu: nonnegative %s\n",
                 s.min_coefficient, static_cast<unsigned long long>(s.min_mask),
                 s.nonnegative ? "yes" : "no");
    if (s.has_domination) {
      std::fprintf(stderr, "domination |a_S| <= b_S: %s (worst excess %.3g)\n",
                   s.dominated ? "yes" : "no", s.worst_excess);
    }
  } else {
    std::fprintf(stderr, "spectrum skipped (n too large for the spectrum budget)\n");
  }
  char* text = nullptr;
  check(bcert_oracle_json(report.get(), &text), "oracle json");
  emit(OwnedString(text).get(), out);
  if (!csv.empty()) {
    char* table = nullptr;
    check(bcert_oracle_spectrum_csv(report.get(), &table), "--csv");
    const OwnedString owned(table);
    std::ofstream file(csv, std::ios::binary);
    file << owned.get();
    if (!file) throw CliFailure{kExitUsage, "cannot write " + csv};
  }
  return kExitOk;
}

int cmd_bench(const RunArgs& args, bool doubling) {
  const auto graph = load_graph(args.graph);
  const auto options = make_options(args, graph.get());
  bcert_summary first{};
  bcert_summary second{};
  char* text = nullptr;
  check(bcert_bench(graph.get(), &options, doubling ? 1 : 0, &text, &first, &second), "bench");
  const OwnedString json(text);

  const auto report = [](const bcert_summary& s) {
    std::uint64_t naive = 0;
    check(bcert_naive_equivalent_evaluations(s.n, s.p, &naive), "bench");
    std::fprintf(stderr,
                 "p = %llu: %llu factorizations vs naive-equivalent %llu f-evaluations "
                 "(speedup %.1fx), %.1f ms\n",
                 static_cast<unsigned long long>(s.p),
                 static_cast<unsigned long long>(s.factorizations),
                 static_cast<unsigned long long>(naive),
                 s.factorizations ? static_cast<double>(naive) / static_cast<double>(s.factorizations) : 0.0,
                 s.wall_ms);
  };
  report(first);
  if (doubling) {
    report(second);
    std::fprintf(stderr, "wall-time ratio for doubled p: %.2f\n",
                 first.wall_ms > 0 ? second.wall_ms / first.wall_ms : 0.0);
  }
  emit(json.get(), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified enclosures of expectations over i.i.d. random signs"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  RunArgs certify_args;
  auto* certify = app.add_subcommand("certify", "certify E f for one configuration");
  add_run_options(certify, certify_args);

  std::string reproduce_out;
  unsigned reproduce_threads = 0;
  bool reproduce_timing = false;
  auto* reproduce =
      app.add_subcommand("reproduce", "15x15 torus, lambda = gamma = 1, p = 30, seed 1");
  reproduce->add_option("--out", reproduce_out, "also write the JSON report to this path");
  reproduce->add_option("--threads", reproduce_threads, "worker threads (0 = all cores)");
  reproduce->add_flag("--timing", reproduce_timing, "record wall-clock times in the JSON report");

  std::string oracle_graph, oracle_h, oracle_out, oracle_csv;
  unsigned oracle_threads = 0;
  double oracle_lambda = 1.0, oracle_gamma = 1.0;
  auto* oracle = app.add_subcommand("oracle", "exact expectation and Walsh spectrum (small n)");
  oracle->add_option("--graph", oracle_graph, "torus:M or edges:PATH")->required();
  oracle->add_option("--lambda", oracle_lambda, "disorder strength (> 0)")->capture_default_str();
  oracle->add_option("--gamma", oracle_gamma, "spectral gap (> 0)")->capture_default_str();
  oracle->add_option("--h", oracle_h, "analytic h for spectral mode");
  oracle->add_option("--out", oracle_out, "also write the JSON report to this path");
  oracle->add_option("--csv", oracle_csv, "write the Walsh spectrum as CSV");
  oracle->add_option("--threads", oracle_threads, "worker threads (0 = all cores)");

  RunArgs bench_args;
  bool bench_doubling = false;
  auto* bench = app.add_subcommand("bench", "evaluation counters against the naive cost model");
  add_run_options(bench, bench_args);
  bench->add_flag("--doubling", bench_doubling, "also run with 2p and report the time ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*certify) return cmd_certify(certify_args);
    if (*reproduce) return cmd_reproduce(reproduce_out, reproduce_threads, reproduce_timing);
    if (*oracle) {
      return cmd_oracle(oracle_graph, oracle_lambda, oracle_gamma, oracle_h, oracle_out,
                        oracle_csv, oracle_threads);
    }
    if (*bench) return cmd_bench(bench_args, bench_doubling);
  } catch (const CliFailure& failure) {
    std::fprintf(stderr, "bcert: %s\n", failure.message.c_str());
    return failure.exit_code;
  }
  return kExitUsage;
}
