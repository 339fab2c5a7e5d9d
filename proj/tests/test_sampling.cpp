#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "bcert/error.hpp"
#include "bcert/sampling.hpp"

using namespace bcert;

TEST_CASE("SplitMix64 reproduces the published reference outputs") {
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(zero.next() == 0x06C45D188009454FULL);

  SplitMix64 rng(1234567);
  const std::array<std::uint64_t, 5> expected{6457827717110365317ULL, 3203168211198807973ULL,
                                              9817491932198370423ULL, 4593380528125082431ULL,
                                              16408922859458223821ULL};
  for (auto e : expected) CHECK(rng.next() == e);
}

TEST_CASE("sample consumes the stream row-major with top-bit signs") {
  const auto s = sample(3, 4, 0);
  CHECK(s.row(0)[0] == -1);  // 0xE220... has its top bit set

  SplitMix64 rng(0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const Sign expected = (rng.next() >> 63) ? Sign{-1} : Sign{1};
      CHECK(s.row(i)[k] == expected);
    }
  }
}

TEST_CASE("sample is deterministic") {
  const auto a = sample(17, 33, 0xDEADBEEF);
  const auto b = sample(17, 33, 0xDEADBEEF);
  for (std::size_t i = 0; i < 17; ++i) {
    CHECK(std::equal(a.row(i).begin(), a.row(i).end(), b.row(i).begin()));
  }
  const auto c = sample(17, 33, 0xDEADBEF0);
  bool differs = false;
  for (std::size_t i = 0; i < 17; ++i) {
    differs |= !std::equal(a.row(i).begin(), a.row(i).end(), c.row(i).begin());
  }
  CHECK(differs);
}

TEST_CASE("one million signs have mean within 4 sigma of zero") {
  const std::size_t n = 1'000'000;
  const auto s = sample(1, n, 0);
  const auto row = s.row(0);
  const long sum = std::accumulate(row.begin(), row.end(), 0L);
  CHECK(std::abs(static_cast<double>(sum) / n) <= 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("pair products of independent rows are uniform (chi-square, n = 4)") {
  const std::size_t draws = 200'000;
  const std::size_t n = 4;
  const auto s = sample(2 * draws, n, 42);
  std::array<long, 16> counts{};
  for (std::size_t d = 0; d < draws; ++d) {
    const auto v = s.pair_product(2 * d, 2 * d + 1);
    unsigned mask = 0;
    for (std::size_t k = 0; k < n; ++k) mask |= (v[k] < 0 ? 1U : 0U) << k;
    ++counts[mask];
  }
  const double expected = static_cast<double>(draws) / 16.0;
  double chi2 = 0.0;
  for (long c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 15 degrees of freedom, 0.1% upper quantile.
  CHECK(chi2 < 37.70);
}

TEST_CASE("pair_product") {
  const auto s = sample(5, 12, 9);
  for (std::size_t i = 0; i < 5; ++i) CHECK(s.pair_product(i, i) == SignVector::ones(12));
  CHECK(s.pair_product(1, 3) == s.pair_product(3, 1));

  const auto explicit_rows = SampleSet::from_rows({SignVector{1, -1}, SignVector{-1, -1}});
  CHECK(explicit_rows.pair_product(0, 1) == SignVector{-1, 1});

  CHECK_THROWS_AS(s.pair_product(5, 0), Error);
  CHECK_THROWS_AS(s.pair_product(0, 5), Error);
}

TEST_CASE("flip") {
  const SignVector v{1, -1, 1, 1};
  for (std::size_t r = 0; r < v.size(); ++r) CHECK(flip(flip(v, r), r) == v);
  CHECK(flip(SignVector{1, 1}, 0) == SignVector{-1, 1});

  const auto ones = SignVector::ones(6);
  for (std::size_t r = 0; r < 6; ++r) {
    const auto f = flip(ones, r);
    for (std::size_t k = 0; k < 6; ++k) CHECK(f[k] == (k == r ? -1 : 1));
  }
  CHECK_THROWS_AS(flip(v, 4), Error);
}

TEST_CASE("sign vectors only hold +-1") {
  CHECK_THROWS_AS(SignVector({1, 0}), Error);
  CHECK_THROWS_AS(SignVector(std::vector<Sign>{1, 2}), Error);
  CHECK_THROWS_AS(SampleSet::from_rows({SignVector{1}, SignVector{1, 1}}), Error);
  CHECK_THROWS_AS(sample(0, 3, 0), Error);
  CHECK_THROWS_AS(sample(3, 0, 0), Error);
  CHECK_THROWS_AS(sample(std::size_t{1} << 40, std::size_t{1} << 40, 0), Error);
}

TEST_CASE("seeds parse as decimal or 0x-hex") {
  CHECK(parse_seed("0") == 0);
  CHECK(parse_seed("7") == 7);
  CHECK(parse_seed("0x1F") == 31);
  CHECK(parse_seed("0XfF") == 255);
  CHECK(parse_seed("18446744073709551615") == ~std::uint64_t{0});
  CHECK(parse_seed("0xFFFFFFFFFFFFFFFF") == ~std::uint64_t{0});
  for (const char* bad : {"", "-1", "12a", "0x", "0xG", "18446744073709551616", " 1", "1.5"}) {
    CHECK_THROWS_AS(parse_seed(bad), Error);
  }
}
