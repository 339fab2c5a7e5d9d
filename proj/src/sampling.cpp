#include "bcert/sampling.hpp"

#include <limits>
#include <string>

#include "bcert/error.hpp"

namespace bcert {

namespace {

void check_signs(const std::vector<Sign>& signs) {
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] != 1 && signs[k] != -1) {
      fail(ErrorCode::invalid_argument,
           "sign vector entry " + std::to_string(k) + " is not -1 or +1");
    }
  }
}

}  // namespace

SignVector::SignVector(std::vector<Sign> signs) : signs_(std::move(signs)) { check_signs(signs_); }

SignVector::SignVector(std::initializer_list<int> signs) {
  signs_.reserve(signs.size());
  for (int s : signs) {
    if (s != 1 && s != -1) {
      fail(ErrorCode::invalid_argument,
           "sign vector entry " + std::to_string(signs_.size()) + " is not -1 or +1");
    }
    signs_.push_back(static_cast<Sign>(s));
  }
}

SignVector flip(const SignVector& v, std::size_t r) {
  if (r >= v.size()) {
    fail(ErrorCode::invalid_argument, "flip coordinate " + std::to_string(r) +
                                          " out of range for dimension " +
                                          std::to_string(v.size()));
  }
  std::vector<Sign> out = v.signs_;
  out[r] = static_cast<Sign>(-out[r]);
  return SignVector(std::move(out), SignVector::trusted{});
}

SampleSet::SampleSet(std::size_t p, std::size_t n, std::uint64_t seed)
    : p_(p), n_(n), seed_(seed) {
  if (p == 0 || n == 0) fail(ErrorCode::invalid_argument, "sample set needs p >= 1 and n >= 1");
  if (p > std::numeric_limits<std::size_t>::max() / n ||
      p * n > signs_.max_size()) {
    fail(ErrorCode::invalid_argument, "sample set of " + std::to_string(p) + " x " +
                                          std::to_string(n) + " signs exceeds addressable size");
  }
  signs_.resize(p * n);
}

SampleSet SampleSet::generate(std::size_t p, std::size_t n, std::uint64_t seed) {
  SampleSet s(p, n, seed);
  SplitMix64 rng(seed);
  for (auto& sign : s.signs_) sign = (rng.next() >> 63) == 0 ? Sign{1} : Sign{-1};
  return s;
}

SampleSet SampleSet::from_rows(const std::vector<SignVector>& rows) {
  if (rows.empty()) fail(ErrorCode::invalid_argument, "sample set needs at least one row");
  SampleSet s(rows.size(), rows.front().size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != s.n_) fail(ErrorCode::invalid_argument, "sample rows differ in length");
    std::copy(rows[i].span().begin(), rows[i].span().end(), s.signs_.begin() + i * s.n_);
  }
  return s;
}

std::span<const Sign> SampleSet::row(std::size_t i) const {
  if (i >= p_) fail(ErrorCode::invalid_argument, "sample row " + std::to_string(i) + " out of range");
  return std::span<const Sign>(signs_).subspan(i * n_, n_);
}

SignVector SampleSet::pair_product(std::size_t i, std::size_t j) const {
  const auto a = row(i);
  const auto b = row(j);
  std::vector<Sign> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = static_cast<Sign>(a[k] * b[k]);
  return SignVector(std::move(out), SignVector::trusted{});
}

}  // namespace bcert

#include <charconv>

namespace bcert {

std::uint64_t parse_seed(std::string_view text) {
  int base = 10;
  std::string_view digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  }
  std::uint64_t value = 0;
  const char* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), last, value, base);
  if (digits.empty() || ec != std::errc{} || ptr != last) {
    fail(ErrorCode::invalid_argument,
         "seed '" + std::string(text) + "' is not a decimal or 0x-hex 64-bit unsigned integer");
  }
  return value;
}

}  // namespace bcert
