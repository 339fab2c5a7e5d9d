#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace bcert {

using Sign = std::int8_t;

// Vector over {-1,+1}. Entries are kept as signed bytes so that products stay
// in exact integer arithmetic.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<Sign> signs);
  SignVector(std::initializer_list<int> signs);

  static SignVector ones(std::size_t n) { return SignVector(std::vector<Sign>(n, 1), trusted{}); }

  std::size_t size() const noexcept { return signs_.size(); }
  Sign operator[](std::size_t k) const { return signs_[k]; }
  std::span<const Sign> span() const noexcept { return signs_; }
  const Sign* data() const noexcept { return signs_.data(); }

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  struct trusted {};
  SignVector(std::vector<Sign> signs, trusted) : signs_(std::move(signs)) {}
  friend class SampleSet;
  friend SignVector flip(const SignVector&, std::size_t);

  std::vector<Sign> signs_;
};

// Copy of v with coordinate r negated.
SignVector flip(const SignVector& v, std::size_t r);

// SplitMix64 (Steele, Lea, Flood). state += golden gamma, then two xor-shift
// multiply rounds. All arithmetic is modulo 2^64.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// p rows of n i.i.d. uniform signs. Row-major consumption of a single
// SplitMix64 stream: sign = +1 iff the top bit of the output is 0.
class SampleSet {
 public:
  static SampleSet generate(std::size_t p, std::size_t n, std::uint64_t seed);

  // From explicit rows; every row must have the same length.
  static SampleSet from_rows(const std::vector<SignVector>& rows);

  std::size_t rows() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const Sign> row(std::size_t i) const;

  // Componentwise product of rows i and j.
  SignVector pair_product(std::size_t i, std::size_t j) const;

 private:
  SampleSet(std::size_t p, std::size_t n, std::uint64_t seed);

  std::size_t p_ = 0;
  std::size_t n_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Sign> signs_;
};

inline SampleSet sample(std::size_t p, std::size_t n, std::uint64_t seed) {
  return SampleSet::generate(p, n, seed);
}

}  // namespace bcert

#include <string_view>

namespace bcert {

// Decimal or 0x-prefixed hexadecimal unsigned 64-bit integer.
std::uint64_t parse_seed(std::string_view text);

}  // namespace bcert
