// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcert/error.hpp"
#include "bcert/estimator.hpp"
#include "bcert/oracle.hpp"
#include "cli_runner.hpp"
#include "test_support.hpp"

using namespace bcert;
using nlohmann::json;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

ResolventParams torus_params(int m, double lambda = 1.0, double gamma = 1.0) {
  return ResolventParams(lambda, gamma, laplacian(Graph::torus(m)));
}

void ac1_reproduce() {
  const auto start = std::chrono::steady_clock::now();
  const auto r = testing::run_cli("reproduce --threads 1");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.exit_code != 0 && r.out.empty()) {
    report("AC1", false, fmt("reproduce exited with %d", r.exit_code));
    return;
  }
  const auto doc = json::parse(r.out);
  const double lo = doc["lower"], hi = doc["upper"];
  const bool intersects = lo <= 0.2030 && 0.2006 <= hi;
  const auto evals = doc["counters"]["evaluations"].get<std::uint64_t>();
  report("AC1", r.exit_code == 0 && intersects && evals == 436 && secs < 120.0,
         fmt("[%.10f, %.10f] vs [0.2006, 0.2030], evaluations %llu, %.1f s on one thread", lo, hi,
             static_cast<unsigned long long>(evals), secs));
}

void ac2_sandwich() {
  const ResolventTrace f(torus_params(3));
  const double exact = oracle::exact_expectation(f);
  bool ok = true;
  double worst = -1e300;
  int runs = 0;
  for (std::uint64_t p : {1, 2, 3, 5}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed, ++runs) {
      const auto est = pair_estimate(f, sample(p, 9, seed));
      const auto cert = certify(f, p, seed);
      // Raw enclosure without the numerical slack, then the certified one.
      const double raw_lo = est.f_bar - est.g_bar, raw_hi = est.f_bar;
      ok = ok && raw_lo - 1e-12 <= exact && exact <= raw_hi + 1e-12;
      ok = ok && cert.lower - 1e-12 <= exact && exact <= cert.upper + 1e-12;
      worst = std::max({worst, raw_lo - exact, exact - raw_hi});
    }
  }
  report("AC2", ok,
         fmt("E f = %.15f, %d runs, worst violation of the unslacked enclosure %.3g", exact, runs,
             worst));
}

void ac3_nonnegativity() {
  bool ok = true;
  double min_coeff = 1e300;
  int checked = 0;
  const auto check = [&](const Graph& g, double lambda, double gamma) {
    const auto s = oracle::walsh_spectrum(ResolventTrace(ResolventParams(lambda, gamma, laplacian(g))));
    const auto r = oracle::check_nonnegative(s, 1e-10);
    ok = ok && r.ok;
    for (double c : s.coefficients) min_coeff = std::min(min_coeff, c);
    ++checked;
  };
  check(Graph::torus(3), 1.0, 1.0);
  for (std::uint64_t k = 0; k < 5; ++k) {
    const auto g = testing::random_connected_graph(8 + k, 0.3, 100 + k);
    for (auto [lambda, gamma] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) check(g, lambda, gamma);
  }
  report("AC3", ok, fmt("%d spectra, smallest coefficient %.3g (tolerance -1e-10)", checked, min_coeff));
}

void ac4_difference_bounds() {
  bool ok = true;
  double worst_g = -1e300, worst_d = -1e300;
  std::mt19937_64 rng(2024);
  for (int m : {3, 4}) {
    const std::size_t n = static_cast<std::size_t>(m * m);
    for (double lambda : {0.5, 1.0, 2.0}) {
      for (double gamma : {0.5, 1.0, 2.0}) {
        const ResolventTrace f(torus_params(m, lambda, gamma));
        const double g_cap = lambda / (gamma * gamma);
        const double d_cap = 2.0 * lambda / (static_cast<double>(n) * gamma * gamma);
        for (int trial = 0; trial < 1000; ++trial) {
          const auto eps = testing::random_signs(n, rng);
          const double fe = f.value(eps);
          double g = 0.0;
          for (std::size_t r = 0; r < n; ++r) {
            const double diff = fe - f.value(flip(eps, r));
            g += diff / 2.0;
            worst_d = std::max(worst_d, std::abs(diff) - d_cap);
          }
          worst_g = std::max(worst_g, g - g_cap);
        }
      }
    }
  }
  ok = worst_g <= 1e-10 && worst_d <= 1e-10;
  report("AC4", ok,
         fmt("18000 samples; max g - lambda/gamma^2 = %.3g, max |diff| - 2 lambda/(n gamma^2) = %.3g",
             worst_g, worst_d));
}

void ac5_fast_path() {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  std::uniform_real_distribution<double> param(0.2, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = size(rng);
    const auto g = testing::random_connected_graph(n, 0.15, rng());
    const ResolventTrace f(ResolventParams(param(rng), param(rng), laplacian(g)));
    const auto eps = testing::random_signs(n, rng);
    const auto fast = f.value_and_g(eps);
    const double naive = naive_g(f, eps);
    worst = std::max(worst, std::abs(fast.g - naive) / std::abs(naive));
  }
  report("AC5", worst <= 1e-9, fmt("200 instances, n <= 64, max relative difference %.3g", worst));
}

void ac6_expectation_identity() {
  const ResolventTrace f(torus_params(3));
  std::vector<double> g_bars;
  double g_ones = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto cert = certify(f, 5, seed);
    g_bars.push_back(cert.g_bar);
    g_ones = cert.g_at_ones;
  }
  double mean = 0.0;
  for (double g : g_bars) mean += g;
  mean /= 200.0;
  double var = 0.0;
  for (double g : g_bars) var += (g - mean) * (g - mean);
  const double se = std::sqrt(var / 199.0 / 200.0);
  const double z = (mean - g_ones / 5.0) / se;
  report("AC6", std::abs(z) <= 4.0,
         fmt("mean G = %.6g, g(1)/p = %.6g, SE %.3g, z = %.2f", mean, g_ones / 5.0, se, z));
}

void ac7_dominated() {
  const auto g = Graph::torus(3);
  const ResolventParams params(1.0, 1.0, laplacian(g));
  const auto pair = dominating_resolvent_scale(AnalyticFunction::polynomial({0.0, 0.0, 1.0}), params, g);
  // E tr (lambda D + L)^2 / n = lambda^2 + (sum of squared degrees + degree sum) / n = 1 + 20.
  const double closed = 1.0 + (9.0 * 16.0 + 9.0 * 4.0) / 9.0;
  const auto exact = oracle::exact_expectation(*pair.f1);
  bool ok = std::abs(exact - closed) < 1e-10;
  double worst = -1e300;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto cert = certify_dominated(*pair.f1, *pair.f2, 20, seed);
    worst = std::max(worst, std::abs(cert.center - closed) - cert.radius);
    ok = ok && std::abs(cert.center - closed) <= cert.radius;
  }
  report("AC7", ok,
         fmt("closed form %.1f, enumeration %.12f%+.1gi, kappa %.6g, 50 seeds, max |c-21| - r = %.3g",
             closed, exact.real(), exact.imag(), pair.kappa, worst));
}

void ac8_quadrature() {
  bool ok = true;
  std::string detail;
  for (int d : {0, 1, 4, 7}) {
    const double kappa = contour_norm_integral(AnalyticFunction::polynomial({1.0}), d, 1.0, 1.0);
    ok = ok && std::abs(kappa - (d + 2.0)) <= 1e-12;
  }
  const double k8 = contour_norm_integral(AnalyticFunction::polynomial({0.0, 0.0, 1.0}), 0, 1.0, 1.0);
  ok = ok && std::abs(k8 - 8.0) <= 1e-10;
  detail += fmt("h=1 exact for d in {0,1,4,7}; z^2 at d=0 gives %.12f", k8);
  int stabilized = 0, specs = 0;
  for (const char* spec : {"poly:1", "poly:0,1", "poly:0,0,1", "poly:0,0,0,1", "poly:1,1",
                           "poly:0.5,-1,0.25", "poly:1,2,3,4,5", "exp:0.1", "exp:0.5", "exp:1",
                           "exp:-1", "exp:2"}) {
    for (int d : {0, 4, 8}) {
      ++specs;
      try {
        const auto c = contour_norm_integral_detail(AnalyticFunction::parse(spec), d, 1.0, 1.0);
        if (c.nodes <= kContourMaxNodes) ++stabilized;
      } catch (const Error&) {
      }
    }
  }
  ok = ok && stabilized == specs;
  detail += fmt("; %d/%d built-in cases stabilized within %d nodes", stabilized, specs, kContourMaxNodes);
  report("AC8", ok, detail);
}

void ac9_determinism() {
  bool ok = true;
  int compared = 0;
  for (const std::string cmd : {"certify --graph torus:5 --p 12 --seed 3",
                                "certify --graph torus:3 --h poly:0,0,1 --p 10 --seed 4",
                                "certify --graph torus:4 --delta 2", "reproduce",
                                "oracle --graph torus:3", "oracle --graph torus:3 --h exp:0.5",
                                "bench --graph torus:4 --p 8 --doubling"}) {
    const auto a = testing::run_cli(cmd + " --threads 1");
    const auto b = testing::run_cli(cmd + " --threads 4");
    const auto c = testing::run_cli(cmd + " --threads 1");
    ok = ok && a.exit_code == 0 && !a.out.empty() && a.out == b.out && a.out == c.out;
    ++compared;
  }
  report("AC9", ok, fmt("%d commands, --threads 1 vs 4 vs repeat, byte-identical JSON", compared));
}

void ac10_cost_model() {
  bool ok = true;
  const ResolventTrace f(torus_params(4));
  for (std::uint64_t p : {1, 2, 5, 13, 30}) {
    const auto cert = certify(f, p, p, {.threads = 2, .c_bound = std::nullopt});
    ok = ok && cert.counters.evaluations == p * (p - 1) / 2 + 1;
  }
  const auto r = testing::run_cli("bench --graph torus:15 --p 30 --seed 1");
  std::uint64_t naive = 0, evals = 0;
  if (r.exit_code == 0) {
    const auto doc = json::parse(r.out);
    naive = doc["run"]["naive_equivalent_evaluations"];
    evals = doc["run"]["evaluations"];
  }
  ok = ok && naive == 203400 && evals == 436;
  report("AC10", ok,
         fmt("p(p-1)/2+1 evaluations for p in {1,2,5,13,30}; bench torus:15 p=30: %llu vs naive %llu",
             static_cast<unsigned long long>(evals), static_cast<unsigned long long>(naive)));
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria{ac1_reproduce,     ac2_sandwich,      ac3_nonnegativity,
                                         ac4_difference_bounds, ac5_fast_path, ac6_expectation_identity,
                                         ac7_dominated,     ac8_quadrature,    ac9_determinism,
                                         ac10_cost_model};
  for (auto* criterion : criteria) {
    try {
      criterion();
    } catch (const std::exception& e) {
      std::printf("FAIL  unexpected exception: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
