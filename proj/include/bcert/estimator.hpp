#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "bcert/functions.hpp"
#include "bcert/sampling.hpp"

namespace bcert {

// Absolute padding applied to certificate endpoints to absorb rounding in the
// dense factorizations.
inline constexpr double kNumericalSlack = 1e-8;

struct Counters {
  std::uint64_t evaluations = 0;     // distinct sign vectors evaluated
  std::uint64_t factorizations = 0;  // matrix factorizations performed
  double wall_ms = 0.0;
};

struct EstimateOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Pair averages over the p^2 sign products X^(i) * X^(j).
//
// Only the p(p-1)/2 off-diagonal pairs i < j and the constant diagonal
// (all-ones) are evaluated. Per-pair values are stored by lexicographic pair
// index and reduced in that fixed order, so the result is bit-identical for
// any thread count.
struct PairEstimate {
  double f_bar = 0.0;
  double g_bar = 0.0;
  double f_at_ones = 0.0;
  double g_at_ones = 0.0;
  std::uint64_t evaluations = 0;
};

PairEstimate pair_estimate(const BernoulliFunction& fn, const SampleSet& samples,
                           const EstimateOptions& options = {});

// Pair average of a complex function (no g).
struct ComplexPairEstimate {
  std::complex<double> f_bar;
  std::uint64_t evaluations = 0;
};

ComplexPairEstimate pair_estimate(const ComplexBernoulliFunction& fn, const SampleSet& samples,
                                  const EstimateOptions& options = {});

// Deterministic enclosure E f in [lower, upper] for f with nonnegative Walsh
// coefficients (attested by the caller).
struct Certificate {
  double f_bar = 0.0;
  double g_bar = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  double g_at_ones = 0.0;
  double expected_width = 0.0;   // g(1,...,1) / p, the mean of g_bar
  double markov_90_width = 0.0;  // 10 g(1,...,1) / p
  bool realized_within_markov = false;
  std::optional<double> c_bound;        // bounded-difference constant, if known
  std::optional<double> apriori_width;  // 10 c / (2p)
  double numerical_slack = kNumericalSlack;
  std::size_t dimension = 0;
  Counters counters;
};

struct CertifyOptions {
  unsigned threads = 1;
  std::optional<double> c_bound;
};

Certificate certify(const BernoulliFunction& fn, std::uint64_t p, std::uint64_t seed,
                    const CertifyOptions& options = {});

// Same, over a caller-supplied sample set.
Certificate certify(const BernoulliFunction& fn, const SampleSet& samples,
                    const CertifyOptions& options = {});

// |E f1 - center| <= radius whenever |a_S(f1)| <= b_S(f2) coefficientwise.
struct DominatedCertificate {
  std::complex<double> center;
  double radius = 0.0;
  double g_bar = 0.0;
  double g_at_ones = 0.0;
  double expected_width = 0.0;
  double markov_90_width = 0.0;
  bool realized_within_markov = false;
  std::optional<double> c_bound;
  std::optional<double> apriori_width;
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  double numerical_slack = kNumericalSlack;
  std::size_t dimension = 0;
  Counters counters;
};

DominatedCertificate certify_dominated(const ComplexBernoulliFunction& f1,
                                       const BernoulliFunction& f2, std::uint64_t p,
                                       std::uint64_t seed, const CertifyOptions& options = {});

DominatedCertificate certify_dominated(const ComplexBernoulliFunction& f1,
                                       const BernoulliFunction& f2, const SampleSet& samples,
                                       const CertifyOptions& options = {});

// Width 10c/(2p) that g_bar stays below with probability >= 90%.
double markov_apriori(double c, std::uint64_t p);

// Bounded-difference constant of the resolvent trace: 2 lambda / gamma^2.
inline double resolvent_difference_bound(double lambda, double gamma) {
  return 2.0 * lambda / (gamma * gamma);
}

// Smallest integer strictly greater than 10 lambda / (gamma^2 delta).
std::uint64_t choose_p(double lambda, double gamma, double delta);

// p(p-1)/2 + 1 distinct evaluations per certify run.
std::uint64_t pair_evaluation_count(std::uint64_t p);

// (n+1) p^2 evaluations of f for the literal double sum with naive g.
std::uint64_t naive_equivalent_evaluations(std::uint64_t n, std::uint64_t p);

}  // namespace bcert
