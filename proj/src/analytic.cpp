#include <charconv>
#include <cmath>
#include <string>

#include "bcert/error.hpp"
#include "bcert/functions.hpp"

namespace bcert {

namespace {

double parse_real(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    fail(ErrorCode::invalid_argument,
         "bad number '" + std::string(text) + "' in function spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

AnalyticFunction::AnalyticFunction(std::string name, Evaluator evaluator, bool attested_analytic,
                                   bool real_on_real)
    : name_(std::move(name)),
      evaluator_(std::move(evaluator)),
      attested_(attested_analytic),
      real_on_real_(real_on_real) {
  if (!evaluator_) fail(ErrorCode::invalid_argument, "analytic function needs an evaluator");
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) fail(ErrorCode::invalid_argument, "polynomial needs a coefficient");
  std::string name = "poly:";
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) name += ',';
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, coeffs[k]);
    name.append(buf, res.ptr);
  }
  auto horner = [c = std::move(coeffs)](std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  return AnalyticFunction(std::move(name), std::move(horner), true, true);
}

AnalyticFunction AnalyticFunction::exponential(double s) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, s);
  return AnalyticFunction("exp:" + std::string(buf, res.ptr),
                          [s](std::complex<double> z) { return std::exp(s * z); }, true, true);
}

AnalyticFunction AnalyticFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    fail(ErrorCode::invalid_argument,
         "function spec '" + std::string(spec) + "' must be poly:c0,c1,... or exp:s");
  }
  const auto kind = spec.substr(0, colon);
  auto rest = spec.substr(colon + 1);
  if (kind == "exp") return exponential(parse_real(rest, spec));
  if (kind == "poly") {
    std::vector<double> coeffs;
    while (true) {
      const auto comma = rest.find(',');
      coeffs.push_back(parse_real(rest.substr(0, comma), spec));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return polynomial(std::move(coeffs));
  }
  fail(ErrorCode::invalid_argument, "unknown function kind '" + std::string(kind) + "'");
}

}  // namespace bcert
