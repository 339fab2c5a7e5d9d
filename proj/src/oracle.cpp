#include "bcert/oracle.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "bcert/error.hpp"
#include "bcert/parallel.hpp"

namespace bcert::oracle {

namespace {

void check_budget(std::size_t n, std::size_t limit, const char* what) {
  if (n == 0) fail(ErrorCode::invalid_argument, "function has dimension 0");
  if (n > limit) {
    fail(ErrorCode::budget, std::string(what) + " over n = " + std::to_string(n) +
                                " needs 2^" + std::to_string(n) + " = " +
                                std::to_string(std::uint64_t{1} << n) +
                                " evaluations; the limit is n <= " + std::to_string(limit));
  }
}

template <class T, class Fn>
std::vector<T> enumerate(const Fn& fn, std::size_t limit, const char* what, unsigned threads) {
  const std::size_t n = fn.dimension();
  check_budget(n, limit, what);
  std::vector<T> values(std::size_t{1} << n);
  parallel_for(values.size(), threads,
               [&](std::size_t mask) { values[mask] = fn.value(point_from_mask(n, mask)); });
  return values;
}

template <class T>
void fwht_impl(std::vector<T>& a) {
  const std::size_t size = a.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    fail(ErrorCode::invalid_argument, "Walsh-Hadamard transform needs a power-of-two length");
  }
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t k = block; k < block + half; ++k) {
        const T x = a[k];
        const T y = a[k + half];
        a[k] = x + y;
        a[k + half] = x - y;
      }
    }
  }
}

std::size_t log2_exact(std::size_t size) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  return n;
}

template <class T>
BasicWalshSpectrum<T> spectrum_from_values(std::vector<T> values) {
  fwht_impl(values);
  const double scale = 1.0 / static_cast<double>(values.size());
  for (auto& v : values) v *= scale;
  return {log2_exact(values.size()), std::move(values)};
}

// Fixed-order pairwise reduction over real parts, identical to the
// estimator's summation.
double mean(const std::vector<double>& values) {
  return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace

SignVector point_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Sign> signs(n);
  for (std::size_t k = 0; k < n; ++k) signs[k] = ((mask >> k) & 1U) ? Sign{-1} : Sign{1};
  return SignVector(std::move(signs));
}

std::vector<double> evaluate_all(const BernoulliFunction& fn, unsigned threads) {
  return enumerate<double>(fn, kMaxExpectationDimension, "exact enumeration", threads);
}

std::vector<std::complex<double>> evaluate_all(const ComplexBernoulliFunction& fn,
                                               unsigned threads) {
  return enumerate<std::complex<double>>(fn, kMaxExpectationDimension, "exact enumeration",
                                         threads);
}

double exact_expectation(const BernoulliFunction& fn, unsigned threads) {
  return mean(evaluate_all(fn, threads));
}

std::complex<double> exact_expectation(const ComplexBernoulliFunction& fn, unsigned threads) {
  const auto values = evaluate_all(fn, threads);
  std::vector<double> re(values.size());
  std::vector<double> im(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    re[k] = values[k].real();
    im[k] = values[k].imag();
  }
  return {mean(re), mean(im)};
}

void fwht(std::vector<double>& values) { fwht_impl(values); }
void fwht(std::vector<std::complex<double>>& values) { fwht_impl(values); }

WalshSpectrum walsh_spectrum_from_values(std::vector<double> values) {
  return spectrum_from_values(std::move(values));
}

ComplexWalshSpectrum walsh_spectrum_from_values(std::vector<std::complex<double>> values) {
  return spectrum_from_values(std::move(values));
}

WalshSpectrum walsh_spectrum(const BernoulliFunction& fn, unsigned threads) {
  return spectrum_from_values(
      enumerate<double>(fn, kMaxSpectrumDimension, "Walsh spectrum", threads));
}

ComplexWalshSpectrum walsh_spectrum(const ComplexBernoulliFunction& fn, unsigned threads) {
  return spectrum_from_values(
      enumerate<std::complex<double>>(fn, kMaxSpectrumDimension, "Walsh spectrum", threads));
}

std::vector<double> reconstruct(const WalshSpectrum& spectrum) {
  std::vector<double> values = spectrum.coefficients;
  fwht_impl(values);
  return values;
}

CheckResult check_nonnegative(const WalshSpectrum& spectrum, double tol) {
  CheckResult result;
  result.worst_value = spectrum.coefficients.empty() ? 0.0 : spectrum.coefficients[0];
  for (std::uint64_t mask = 0; mask < spectrum.coefficients.size(); ++mask) {
    if (spectrum.coefficients[mask] < result.worst_value) {
      result.worst_value = spectrum.coefficients[mask];
      result.worst_mask = mask;
    }
  }
  result.ok = result.worst_value >= -tol;
  return result;
}

namespace {

template <class T>
CheckResult domination_impl(const BasicWalshSpectrum<T>& a, const WalshSpectrum& b, double tol) {
  if (a.n != b.n || a.coefficients.size() != b.coefficients.size()) {
    fail(ErrorCode::invalid_argument, "spectra have different dimensions");
  }
  CheckResult result;
  result.worst_value = -INFINITY;
  for (std::uint64_t mask = 0; mask < a.coefficients.size(); ++mask) {
    const double excess = std::abs(a.coefficients[mask]) - b.coefficients[mask];
    if (excess > result.worst_value) {
      result.worst_value = excess;
      result.worst_mask = mask;
    }
  }
  result.ok = result.worst_value <= tol;
  return result;
}

}  // namespace

CheckResult check_domination(const ComplexWalshSpectrum& a, const WalshSpectrum& b, double tol) {
  return domination_impl(a, b, tol);
}

CheckResult check_domination(const WalshSpectrum& a, const WalshSpectrum& b, double tol) {
  return domination_impl(a, b, tol);
}

void write_spectrum_csv(std::ostream& out, const WalshSpectrum& spectrum) {
  out << "mask,coefficient\n";
  char buf[64];
  for (std::uint64_t mask = 0; mask < spectrum.coefficients.size(); ++mask) {
    auto res = std::to_chars(buf, buf + sizeof buf, spectrum.coefficients[mask]);
    out << mask << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
}

}  // namespace bcert::oracle
