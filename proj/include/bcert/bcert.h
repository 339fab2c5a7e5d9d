/*
 * bcert C API.
 *
 * Certified two-sided enclosures of E f for functions f of n i.i.d. uniform
 * +-1 variables with nonnegative (or dominated) Walsh coefficients, applied
 * to resolvent traces of random Schrodinger operators lambda D - Laplacian.
 *
 * All objects are opaque handles created by bcert_* functions and released
 * with the matching *_free function. Every fallible call returns a
 * bcert_status; on failure bcert_last_error() describes the problem (the
 * message is thread-local and valid until the next failing call on the same
 * thread). Strings returned through char** out-parameters are owned by the
 * caller and must be released with bcert_string_free().
 */
#ifndef BCERT_BCERT_H
#define BCERT_BCERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BCERT_BUILDING_LIBRARY)
#    define BCERT_API __declspec(dllexport)
#  else
#    define BCERT_API __declspec(dllimport)
#  endif
#else
#  define BCERT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bcert_status {
  BCERT_OK = 0,
  BCERT_ERR_INVALID_ARGUMENT = 1,
  BCERT_ERR_PARSE = 2,
  BCERT_ERR_NUMERICAL = 3,
  BCERT_ERR_BUDGET = 4,
  BCERT_ERR_IO = 5,
  BCERT_ERR_INTERNAL = 6
} bcert_status;

typedef struct bcert_graph bcert_graph;
typedef struct bcert_certificate bcert_certificate;
typedef struct bcert_oracle_report bcert_oracle_report;

BCERT_API const char* bcert_version(void);
BCERT_API const char* bcert_last_error(void);
BCERT_API const char* bcert_status_name(bcert_status status);
BCERT_API void bcert_string_free(char* str);

/* Graphs */

BCERT_API bcert_status bcert_graph_torus(int m, bcert_graph** out);
BCERT_API bcert_status bcert_graph_from_edge_list(const char* text, bcert_graph** out);
BCERT_API bcert_status bcert_graph_from_file(const char* path, bcert_graph** out);
BCERT_API void bcert_graph_free(bcert_graph* graph);
BCERT_API size_t bcert_graph_vertex_count(const bcert_graph* graph);
BCERT_API size_t bcert_graph_edge_count(const bcert_graph* graph);
BCERT_API int bcert_graph_max_degree(const bcert_graph* graph);

/* Certification */

typedef struct bcert_run_options {
  double lambda;           /* disorder strength, > 0 */
  double gamma;            /* spectral gap, > 0 */
  uint64_t p;              /* sample count, >= 1 */
  uint64_t seed;           /* SplitMix64 seed */
  unsigned threads;        /* worker count; 0 = hardware concurrency */
  const char* h_spec;      /* NULL: resolvent mode; else "poly:..." or "exp:s" */
  const char* graph_label; /* echoed into reports; NULL means "unnamed" */
  double delta;            /* echoed into reports when > 0 */
  int include_timing;      /* nonzero: write wall_ms into JSON reports */
} bcert_run_options;

/* lambda = gamma = 1, p = 1, seed = 0, threads = 1, everything else unset. */
BCERT_API void bcert_run_options_init(bcert_run_options* options);

typedef struct bcert_summary {
  int dominated;      /* 1 for spectral-mode (dominated) certificates */
  size_t n;
  uint64_t p;
  uint64_t seed;
  double lower;
  double upper;
  double f_bar;       /* dominated: real part of the center */
  double center_im;   /* dominated only */
  double radius;      /* dominated only */
  double kappa;       /* dominated only */
  double g_bar;
  double g_at_ones;
  double expected_width;
  double markov_90_width;
  double apriori_width;
  int realized_within_markov;
  uint64_t evaluations;
  uint64_t factorizations;
  double wall_ms;
} bcert_summary;

BCERT_API bcert_status bcert_certify(const bcert_graph* graph, const bcert_run_options* options,
                                     bcert_certificate** out);
BCERT_API bcert_status bcert_certificate_summary(const bcert_certificate* cert,
                                                 bcert_summary* out);
BCERT_API bcert_status bcert_certificate_json(const bcert_certificate* cert, char** json_out);
BCERT_API void bcert_certificate_free(bcert_certificate* cert);

/* Runs certify at p (and at 2p when doubling is nonzero) and reports
 * measured counters against the naive (n+1) p^2 evaluation count. */
BCERT_API bcert_status bcert_bench(const bcert_graph* graph, const bcert_run_options* options,
                                   int doubling, char** json_out, bcert_summary* first,
                                   bcert_summary* doubled);

/* Oracle (exact enumeration, small n only) */

typedef struct bcert_oracle_summary {
  size_t n;
  double exact_re;
  double exact_im;
  int spectrum_computed;
  int nonnegative;
  double min_coefficient;
  uint64_t min_mask;
  int has_domination;
  int dominated;
  double worst_excess;
} bcert_oracle_summary;

/* threads: worker count for the enumeration; 0 = hardware concurrency. */
BCERT_API bcert_status bcert_oracle(const bcert_graph* graph, double lambda, double gamma,
                                    const char* h_spec, const char* graph_label,
                                    unsigned threads, bcert_oracle_report** out);
BCERT_API bcert_status bcert_oracle_summary_get(const bcert_oracle_report* report,
                                                bcert_oracle_summary* out);
BCERT_API bcert_status bcert_oracle_json(const bcert_oracle_report* report, char** json_out);
/* "mask,coefficient" CSV of the (dominating) resolvent spectrum. */
BCERT_API bcert_status bcert_oracle_spectrum_csv(const bcert_oracle_report* report,
                                                 char** csv_out);
BCERT_API void bcert_oracle_free(bcert_oracle_report* report);

/* Scalars */

BCERT_API bcert_status bcert_choose_p(double lambda, double gamma, double delta, uint64_t* p);
BCERT_API bcert_status bcert_markov_apriori(double c, uint64_t p, double* width);
BCERT_API bcert_status bcert_pair_evaluation_count(uint64_t p, uint64_t* count);
BCERT_API bcert_status bcert_naive_equivalent_evaluations(uint64_t n, uint64_t p,
                                                          uint64_t* count);
BCERT_API bcert_status bcert_parse_seed(const char* text, uint64_t* seed);
BCERT_API bcert_status bcert_contour_norm_integral(const char* h_spec, int max_degree,
                                                   double lambda, double gamma, double* kappa);

/* f(eps) and g(eps) of the resolvent trace; signs holds n entries of +-1. */
BCERT_API bcert_status bcert_evaluate_resolvent(const bcert_graph* graph, double lambda,
                                                double gamma, const int8_t* signs, size_t n,
                                                double* f, double* g);

#ifdef __cplusplus
}
#endif

#endif /* BCERT_BCERT_H */
