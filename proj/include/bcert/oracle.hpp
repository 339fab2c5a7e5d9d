#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "bcert/functions.hpp"

namespace bcert::oracle {

// Enumeration and spectrum budgets (2^n evaluations).
inline constexpr std::size_t kMaxExpectationDimension = 24;
inline constexpr std::size_t kMaxSpectrumDimension = 16;

// Bitmask conventions: bit k of a subset mask S is set iff coordinate k is in
// S. Point masks enumerate sign vectors with bit k set iff eps_k = -1.
SignVector point_from_mask(std::size_t n, std::uint64_t mask);

// Walsh coefficients a_S, indexed by subset mask, with
// f(eps) = sum_S a_S prod_{k in S} eps_k.
template <class T>
struct BasicWalshSpectrum {
  std::size_t n = 0;
  std::vector<T> coefficients;

  const T& operator[](std::uint64_t mask) const { return coefficients[mask]; }
};

using WalshSpectrum = BasicWalshSpectrum<double>;
using ComplexWalshSpectrum = BasicWalshSpectrum<std::complex<double>>;

// 2^{-n} sum over all eps of f(eps).
double exact_expectation(const BernoulliFunction& fn, unsigned threads = 1);
std::complex<double> exact_expectation(const ComplexBernoulliFunction& fn,
                                       unsigned threads = 1);

// All 2^n values, in point-mask order.
std::vector<double> evaluate_all(const BernoulliFunction& fn, unsigned threads = 1);
std::vector<std::complex<double>> evaluate_all(const ComplexBernoulliFunction& fn,
                                               unsigned threads = 1);

// In-place unnormalised fast Walsh-Hadamard transform of a length-2^n array.
void fwht(std::vector<double>& values);
void fwht(std::vector<std::complex<double>>& values);

WalshSpectrum walsh_spectrum(const BernoulliFunction& fn, unsigned threads = 1);
ComplexWalshSpectrum walsh_spectrum(const ComplexBernoulliFunction& fn, unsigned threads = 1);

// From point-mask ordered values.
WalshSpectrum walsh_spectrum_from_values(std::vector<double> values);
ComplexWalshSpectrum walsh_spectrum_from_values(std::vector<std::complex<double>> values);

// Values f at every point mask reconstructed from a spectrum.
std::vector<double> reconstruct(const WalshSpectrum& spectrum);

struct CheckResult {
  bool ok = true;
  std::uint64_t worst_mask = 0;
  double worst_value = 0.0;  // most negative a_S, or largest |a_S| - b_S
};

// ok iff min_S a_S >= -tol.
CheckResult check_nonnegative(const WalshSpectrum& spectrum, double tol);

// ok iff |a_S| <= b_S + tol for every S.
CheckResult check_domination(const ComplexWalshSpectrum& a, const WalshSpectrum& b, double tol);
CheckResult check_domination(const WalshSpectrum& a, const WalshSpectrum& b, double tol);

// CSV with header "mask,coefficient", one row per subset mask.
void write_spectrum_csv(std::ostream& out, const WalshSpectrum& spectrum);

}  // namespace bcert::oracle
