#include "bcert/estimator.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bcert/error.hpp"
#include "bcert/parallel.hpp"

namespace bcert {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_dimension(std::size_t fn_dim, const SampleSet& samples) {
  if (fn_dim != samples.dimension()) {
    fail(ErrorCode::invalid_argument, "function dimension " + std::to_string(fn_dim) +
                                          " does not match sample dimension " +
                                          std::to_string(samples.dimension()));
  }
}

// Off-diagonal pairs (i, j), i < j, in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t p) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

// (p * diagonal + 2 * off-diagonal sum) / p^2
double combine(double diagonal, double off_sum, std::size_t p) {
  const double pd = static_cast<double>(p);
  return (pd * diagonal + 2.0 * off_sum) / (pd * pd);
}

}  // namespace

std::uint64_t pair_evaluation_count(std::uint64_t p) {
  if (p == 0) fail(ErrorCode::invalid_argument, "p must be at least 1");
  if (p > (std::uint64_t{1} << 32)) {
    fail(ErrorCode::budget, "p = " + std::to_string(p) + " overflows the evaluation counter");
  }
  return p * (p - 1) / 2 + 1;
}

std::uint64_t naive_equivalent_evaluations(std::uint64_t n, std::uint64_t p) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  if (p != 0 && (p > max / p || n + 1 > max / (p * p))) {
    fail(ErrorCode::budget, "naive-equivalent evaluation count overflows 64 bits");
  }
  return (n + 1) * p * p;
}

PairEstimate pair_estimate(const BernoulliFunction& fn, const SampleSet& samples,
                           const EstimateOptions& options) {
  check_dimension(fn.dimension(), samples);
  const std::size_t p = samples.rows();
  const auto pairs = upper_pairs(p);

  const ValueAndG diagonal = fn.value_and_g(SignVector::ones(samples.dimension()));
  std::vector<double> f_values(pairs.size());
  std::vector<double> g_values(pairs.size());
  parallel_for(pairs.size(), options.threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const ValueAndG v = fn.value_and_g(samples.pair_product(i, j));
    f_values[k] = v.f;
    g_values[k] = v.g;
  });

  PairEstimate out;
  out.f_at_ones = diagonal.f;
  out.g_at_ones = diagonal.g;
  out.f_bar = combine(diagonal.f, pairwise_sum(f_values), p);
  out.g_bar = combine(diagonal.g, pairwise_sum(g_values), p);
  out.evaluations = pairs.size() + 1;
  return out;
}

ComplexPairEstimate pair_estimate(const ComplexBernoulliFunction& fn, const SampleSet& samples,
                                  const EstimateOptions& options) {
  check_dimension(fn.dimension(), samples);
  const std::size_t p = samples.rows();
  const auto pairs = upper_pairs(p);

  const std::complex<double> diagonal = fn.value(SignVector::ones(samples.dimension()));
  std::vector<double> re(pairs.size());
  std::vector<double> im(pairs.size());
  parallel_for(pairs.size(), options.threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const std::complex<double> v = fn.value(samples.pair_product(i, j));
    re[k] = v.real();
    im[k] = v.imag();
  });

  ComplexPairEstimate out;
  out.f_bar = {combine(diagonal.real(), pairwise_sum(re), p),
               combine(diagonal.imag(), pairwise_sum(im), p)};
  out.evaluations = pairs.size() + 1;
  return out;
}

Certificate certify(const BernoulliFunction& fn, std::uint64_t p, std::uint64_t seed,
                    const CertifyOptions& options) {
  pair_evaluation_count(p);
  return certify(fn, SampleSet::generate(p, fn.dimension(), seed), options);
}

Certificate certify(const BernoulliFunction& fn, const SampleSet& samples,
                    const CertifyOptions& options) {
  const auto start = Clock::now();
  const std::uint64_t factorizations_before = fn.factorizations();
  const PairEstimate est = pair_estimate(fn, samples, {options.threads});

  Certificate cert;
  cert.p = samples.rows();
  cert.seed = samples.seed();
  cert.dimension = samples.dimension();
  cert.f_bar = est.f_bar;
  cert.g_bar = est.g_bar;
  cert.lower = est.f_bar - est.g_bar - kNumericalSlack;
  cert.upper = est.f_bar + kNumericalSlack;
  cert.g_at_ones = est.g_at_ones;
  const double pd = static_cast<double>(cert.p);
  cert.expected_width = est.g_at_ones / pd;
  cert.markov_90_width = 10.0 * est.g_at_ones / pd;
  cert.realized_within_markov = est.g_bar <= cert.markov_90_width;
  if (options.c_bound) {
    cert.c_bound = options.c_bound;
    cert.apriori_width = markov_apriori(*options.c_bound, cert.p);
  }
  cert.counters.evaluations = est.evaluations;
  cert.counters.factorizations = fn.factorizations() - factorizations_before;
  cert.counters.wall_ms = elapsed_ms(start);

  if (!(cert.lower <= cert.upper)) {
    fail(ErrorCode::numerical, "certificate has lower > upper (g_bar = " +
                                   std::to_string(cert.g_bar) +
                                   "); the nonnegativity attestation does not hold");
  }
  return cert;
}

DominatedCertificate certify_dominated(const ComplexBernoulliFunction& f1,
                                       const BernoulliFunction& f2, std::uint64_t p,
                                       std::uint64_t seed, const CertifyOptions& options) {
  pair_evaluation_count(p);
  return certify_dominated(f1, f2, SampleSet::generate(p, f1.dimension(), seed), options);
}

DominatedCertificate certify_dominated(const ComplexBernoulliFunction& f1,
                                       const BernoulliFunction& f2, const SampleSet& samples,
                                       const CertifyOptions& options) {
  if (f1.dimension() != f2.dimension()) {
    fail(ErrorCode::invalid_argument, "dominated pair has mismatched dimensions");
  }
  const auto start = Clock::now();
  const std::uint64_t before = f1.factorizations() + f2.factorizations();
  const ComplexPairEstimate center = pair_estimate(f1, samples, {options.threads});
  const PairEstimate dominating = pair_estimate(f2, samples, {options.threads});

  DominatedCertificate cert;
  cert.p = samples.rows();
  cert.seed = samples.seed();
  cert.dimension = samples.dimension();
  cert.center = center.f_bar;
  cert.g_bar = dominating.g_bar;
  cert.radius = dominating.g_bar + kNumericalSlack;
  cert.g_at_ones = dominating.g_at_ones;
  const double pd = static_cast<double>(cert.p);
  cert.expected_width = dominating.g_at_ones / pd;
  cert.markov_90_width = 10.0 * dominating.g_at_ones / pd;
  cert.realized_within_markov = dominating.g_bar <= cert.markov_90_width;
  if (options.c_bound) {
    cert.c_bound = options.c_bound;
    cert.apriori_width = markov_apriori(*options.c_bound, cert.p);
  }
  cert.counters.evaluations = center.evaluations;
  cert.counters.factorizations = f1.factorizations() + f2.factorizations() - before;
  cert.counters.wall_ms = elapsed_ms(start);

  if (!(cert.radius >= 0.0)) {
    fail(ErrorCode::numerical, "dominated certificate has negative radius; "
                               "the domination attestation does not hold");
  }
  return cert;
}

double markov_apriori(double c, std::uint64_t p) {
  if (!(c >= 0.0) || !std::isfinite(c)) fail(ErrorCode::invalid_argument, "c must be >= 0");
  if (p == 0) fail(ErrorCode::invalid_argument, "p must be at least 1");
  return 10.0 * c / (2.0 * static_cast<double>(p));
}

std::uint64_t choose_p(double lambda, double gamma, double delta) {
  if (!(lambda > 0.0) || !(gamma > 0.0) || !(delta > 0.0)) {
    fail(ErrorCode::invalid_argument, "lambda, gamma and delta must all be positive");
  }
  const double target = 10.0 * lambda / (gamma * gamma * delta);
  if (!std::isfinite(target) || target >= 4294967296.0) {
    fail(ErrorCode::budget, "delta is too small: 10 lambda / (gamma^2 delta) = " +
                                std::to_string(target) + " samples");
  }
  return static_cast<std::uint64_t>(std::floor(target)) + 1;
}

}  // namespace bcert
