#include "bcert/bcert.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <variant>

#include "bcert/error.hpp"
#include "bcert/estimator.hpp"
#include "bcert/graph.hpp"
#include "bcert/report.hpp"

struct bcert_graph {
  bcert::Graph graph;
};

struct bcert_certificate {
  bcert::RunInfo run;
  bcert::ReportOptions report;
  std::variant<bcert::Certificate, bcert::DominatedCertificate> cert;
  double kappa = 0.0;
};

struct bcert_oracle_report {
  bcert::OracleReport report;
  bcert::OracleConfig config;
  std::string graph_label;
};

namespace {

thread_local std::string last_error;

bcert_status to_status(bcert::ErrorCode code) {
  switch (code) {
    case bcert::ErrorCode::invalid_argument: return BCERT_ERR_INVALID_ARGUMENT;
    case bcert::ErrorCode::parse: return BCERT_ERR_PARSE;
    case bcert::ErrorCode::numerical: return BCERT_ERR_NUMERICAL;
    case bcert::ErrorCode::budget: return BCERT_ERR_BUDGET;
    case bcert::ErrorCode::io: return BCERT_ERR_IO;
    case bcert::ErrorCode::internal: return BCERT_ERR_INTERNAL;
  }
  return BCERT_ERR_INTERNAL;
}

template <class Fn>
bcert_status guarded(Fn&& fn) {
  try {
    fn();
    return BCERT_OK;
  } catch (const bcert::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BCERT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BCERT_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return BCERT_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) bcert::fail(bcert::ErrorCode::invalid_argument, what);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::unique_ptr<bcert_certificate> run_certify(const bcert::Graph& graph,
                                               const bcert_run_options& o) {
  auto handle = std::make_unique<bcert_certificate>();
  handle->run.graph = o.graph_label != nullptr ? o.graph_label : "unnamed";
  handle->run.lambda = o.lambda;
  handle->run.gamma = o.gamma;
  if (o.h_spec != nullptr) handle->run.h = o.h_spec;
  if (o.delta > 0.0) handle->run.delta = o.delta;
  handle->run.p = o.p;
  handle->run.seed = o.seed;
  handle->report.include_timing = o.include_timing != 0;

  const bcert::ResolventParams params(o.lambda, o.gamma, bcert::laplacian(graph));
  bcert::CertifyOptions options;
  options.threads = o.threads;
  const double c = bcert::resolvent_difference_bound(o.lambda, o.gamma);
  if (o.h_spec == nullptr) {
    const bcert::ResolventTrace f(params);
    options.c_bound = c;
    handle->cert = bcert::certify(f, o.p, o.seed, options);
  } else {
    const auto h = bcert::AnalyticFunction::parse(o.h_spec);
    const auto pair = bcert::dominating_resolvent_scale(h, params, graph);
    options.c_bound = pair.kappa * c;
    handle->kappa = pair.kappa;
    handle->cert = bcert::certify_dominated(*pair.f1, *pair.f2, o.p, o.seed, options);
  }
  return handle;
}

void fill_summary(const bcert_certificate& handle, bcert_summary& s) {
  s = bcert_summary{};
  std::visit(
      [&](const auto& cert) {
        s.n = cert.dimension;
        s.p = cert.p;
        s.seed = cert.seed;
        s.g_bar = cert.g_bar;
        s.g_at_ones = cert.g_at_ones;
        s.expected_width = cert.expected_width;
        s.markov_90_width = cert.markov_90_width;
        s.apriori_width = cert.apriori_width.value_or(0.0);
        s.realized_within_markov = cert.realized_within_markov ? 1 : 0;
        s.evaluations = cert.counters.evaluations;
        s.factorizations = cert.counters.factorizations;
        s.wall_ms = cert.counters.wall_ms;
      },
      handle.cert);
  if (const auto* c = std::get_if<bcert::Certificate>(&handle.cert)) {
    s.lower = c->lower;
    s.upper = c->upper;
    s.f_bar = c->f_bar;
  } else {
    const auto& d = std::get<bcert::DominatedCertificate>(handle.cert);
    s.dominated = 1;
    s.f_bar = d.center.real();
    s.center_im = d.center.imag();
    s.radius = d.radius;
    s.kappa = handle.kappa;
    s.lower = d.center.real() - d.radius;
    s.upper = d.center.real() + d.radius;
  }
}

bcert::BenchRun bench_run(const bcert_certificate& handle) {
  bcert::BenchRun run;
  std::visit(
      [&](const auto& cert) {
        run.p = cert.p;
        run.n = cert.dimension;
        run.counters = cert.counters;
      },
      handle.cert);
  return run;
}

}  // namespace

extern "C" {

const char* bcert_version(void) { return "1.0.0"; }

const char* bcert_last_error(void) { return last_error.c_str(); }

const char* bcert_status_name(bcert_status status) {
  switch (status) {
    case BCERT_OK: return "ok";
    case BCERT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BCERT_ERR_PARSE: return "parse error";
    case BCERT_ERR_NUMERICAL: return "numerical failure";
    case BCERT_ERR_BUDGET: return "budget exceeded";
    case BCERT_ERR_IO: return "i/o error";
    case BCERT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void bcert_string_free(char* str) { std::free(str); }

bcert_status bcert_graph_torus(int m, bcert_graph** out) {
  return guarded([&] {
    require(out != nullptr, "null output pointer");
    *out = new bcert_graph{bcert::Graph::torus(m)};
  });
}

bcert_status bcert_graph_from_edge_list(const char* text, bcert_graph** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new bcert_graph{bcert::Graph::from_edge_list(text)};
  });
}

bcert_status bcert_graph_from_file(const char* path, bcert_graph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new bcert_graph{bcert::load_edge_list_file(path)};
  });
}

void bcert_graph_free(bcert_graph* graph) { delete graph; }

size_t bcert_graph_vertex_count(const bcert_graph* graph) {
  return graph != nullptr ? graph->graph.vertex_count() : 0;
}

size_t bcert_graph_edge_count(const bcert_graph* graph) {
  return graph != nullptr ? graph->graph.edge_count() : 0;
}

int bcert_graph_max_degree(const bcert_graph* graph) {
  return graph != nullptr ? graph->graph.max_degree() : 0;
}

void bcert_run_options_init(bcert_run_options* options) {
  if (options == nullptr) return;
  *options = bcert_run_options{};
  options->lambda = 1.0;
  options->gamma = 1.0;
  options->p = 1;
  options->threads = 1;
}

bcert_status bcert_certify(const bcert_graph* graph, const bcert_run_options* options,
                           bcert_certificate** out) {
  return guarded([&] {
    require(graph != nullptr && options != nullptr && out != nullptr, "null argument");
    *out = run_certify(graph->graph, *options).release();
  });
}

bcert_status bcert_certificate_summary(const bcert_certificate* cert, bcert_summary* out) {
  return guarded([&] {
    require(cert != nullptr && out != nullptr, "null argument");
    fill_summary(*cert, *out);
  });
}

bcert_status bcert_certificate_json(const bcert_certificate* cert, char** json_out) {
  return guarded([&] {
    require(cert != nullptr && json_out != nullptr, "null argument");
    const auto doc = std::visit(
        [&](const auto& c) {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, bcert::Certificate>) {
            return bcert::certificate_json(c, cert->run, cert->report);
          } else {
            return bcert::dominated_json(c, cert->kappa, cert->run, cert->report);
          }
        },
        cert->cert);
    *json_out = copy_string(bcert::dump_json(doc));
  });
}

void bcert_certificate_free(bcert_certificate* cert) { delete cert; }

bcert_status bcert_bench(const bcert_graph* graph, const bcert_run_options* options, int doubling,
                         char** json_out, bcert_summary* first, bcert_summary* doubled) {
  return guarded([&] {
    require(graph != nullptr && options != nullptr, "null argument");
    const auto base = run_certify(graph->graph, *options);
    std::unique_ptr<bcert_certificate> twice;
    if (doubling != 0) {
      bcert_run_options o2 = *options;
      require(o2.p <= (std::uint64_t{1} << 31), "p too large to double");
      o2.p *= 2;
      twice = run_certify(graph->graph, o2);
    }
    if (first != nullptr) fill_summary(*base, *first);
    if (doubled != nullptr) {
      if (twice) {
        fill_summary(*twice, *doubled);
      } else {
        *doubled = bcert_summary{};
      }
    }
    if (json_out != nullptr) {
      std::optional<bcert::BenchRun> second;
      if (twice) second = bench_run(*twice);
      *json_out = copy_string(
          bcert::dump_json(bcert::bench_json(bench_run(*base), second, base->run, base->report)));
    }
  });
}

bcert_status bcert_oracle(const bcert_graph* graph, double lambda, double gamma,
                          const char* h_spec, const char* graph_label, unsigned threads,
                          bcert_oracle_report** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "null argument");
    auto handle = std::make_unique<bcert_oracle_report>();
    handle->config.lambda = lambda;
    handle->config.gamma = gamma;
    handle->config.threads = threads;
    if (h_spec != nullptr) handle->config.h = h_spec;
    handle->graph_label = graph_label != nullptr ? graph_label : "unnamed";
    handle->report = bcert::run_oracle(graph->graph, handle->config);
    *out = handle.release();
  });
}

bcert_status bcert_oracle_summary_get(const bcert_oracle_report* report,
                                      bcert_oracle_summary* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "null argument");
    const auto& r = report->report;
    *out = bcert_oracle_summary{};
    out->n = r.n;
    out->exact_re = r.exact_expectation.real();
    out->exact_im = r.exact_expectation.imag();
    out->spectrum_computed = r.spectrum_computed ? 1 : 0;
    out->nonnegative = r.nonnegativity.ok ? 1 : 0;
    out->min_coefficient = r.nonnegativity.worst_value;
    out->min_mask = r.nonnegativity.worst_mask;
    if (r.domination) {
      out->has_domination = 1;
      out->dominated = r.domination->ok ? 1 : 0;
      out->worst_excess = r.domination->worst_value;
    }
  });
}

bcert_status bcert_oracle_json(const bcert_oracle_report* report, char** json_out) {
  return guarded([&] {
    require(report != nullptr && json_out != nullptr, "null argument");
    *json_out = copy_string(bcert::dump_json(
        bcert::oracle_json(report->report, report->graph_label, report->config)));
  });
}

bcert_status bcert_oracle_spectrum_csv(const bcert_oracle_report* report, char** csv_out) {
  return guarded([&] {
    require(report != nullptr && csv_out != nullptr, "null argument");
    if (!report->report.spectrum) {
      bcert::fail(bcert::ErrorCode::budget, "spectrum was not computed for n = " +
                                                std::to_string(report->report.n));
    }
    std::ostringstream out;
    bcert::oracle::write_spectrum_csv(out, *report->report.spectrum);
    *csv_out = copy_string(out.str());
  });
}

void bcert_oracle_free(bcert_oracle_report* report) { delete report; }

bcert_status bcert_choose_p(double lambda, double gamma, double delta, uint64_t* p) {
  return guarded([&] {
    require(p != nullptr, "null output pointer");
    *p = bcert::choose_p(lambda, gamma, delta);
  });
}

bcert_status bcert_markov_apriori(double c, uint64_t p, double* width) {
  return guarded([&] {
    require(width != nullptr, "null output pointer");
    *width = bcert::markov_apriori(c, p);
  });
}

bcert_status bcert_pair_evaluation_count(uint64_t p, uint64_t* count) {
  return guarded([&] {
    require(count != nullptr, "null output pointer");
    *count = bcert::pair_evaluation_count(p);
  });
}

bcert_status bcert_naive_equivalent_evaluations(uint64_t n, uint64_t p, uint64_t* count) {
  return guarded([&] {
    require(count != nullptr, "null output pointer");
    *count = bcert::naive_equivalent_evaluations(n, p);
  });
}

bcert_status bcert_parse_seed(const char* text, uint64_t* seed) {
  return guarded([&] {
    require(text != nullptr && seed != nullptr, "null argument");
    *seed = bcert::parse_seed(text);
  });
}

bcert_status bcert_contour_norm_integral(const char* h_spec, int max_degree, double lambda,
                                         double gamma, double* kappa) {
  return guarded([&] {
    require(h_spec != nullptr && kappa != nullptr, "null argument");
    *kappa = bcert::contour_norm_integral(bcert::AnalyticFunction::parse(h_spec), max_degree,
                                          lambda, gamma);
  });
}

bcert_status bcert_evaluate_resolvent(const bcert_graph* graph, double lambda, double gamma,
                                      const int8_t* signs, size_t n, double* f, double* g) {
  return guarded([&] {
    require(graph != nullptr && signs != nullptr, "null argument");
    require(n == graph->graph.vertex_count(), "sign count does not match the graph");
    const bcert::ResolventTrace fn(
        bcert::ResolventParams(lambda, gamma, bcert::laplacian(graph->graph)));
    const auto v = fn.value_and_g(bcert::SignVector(std::vector<bcert::Sign>(signs, signs + n)));
    if (f != nullptr) *f = v.f;
    if (g != nullptr) *g = v.g;
  });
}

}  // extern "C"
