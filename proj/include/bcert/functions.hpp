#pragma once

#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "bcert/graph.hpp"
#include "bcert/sampling.hpp"

namespace bcert {

struct ValueAndG {
  double f = 0.0;
  double g = 0.0;
};

// f : {-1,1}^n -> R. Implementations must be pure; evaluations at distinct
// points may run concurrently.
class BernoulliFunction {
 public:
  virtual ~BernoulliFunction() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(const SignVector& eps) const = 0;

  // (f(eps), g(eps)) with g(eps) = 1/2 sum_r [f(eps) - f(flip(eps, r))].
  // Defaults to n+1 plain evaluations.
  virtual ValueAndG value_and_g(const SignVector& eps) const;

  // Matrix factorizations performed so far by this object.
  virtual std::uint64_t factorizations() const { return 0; }
};

// Complex-valued counterpart, used for the dominated estimator.
class ComplexBernoulliFunction {
 public:
  virtual ~ComplexBernoulliFunction() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::complex<double> value(const SignVector& eps) const = 0;
  virtual std::uint64_t factorizations() const { return 0; }
};

// Reference g: evaluates f exactly n+1 times.
double naive_g(const BernoulliFunction& f, const SignVector& eps);

// Wraps an arbitrary callable. Mostly useful for tests and for oracle checks.
class CallableFunction final : public BernoulliFunction {
 public:
  using Callable = std::function<double(const SignVector&)>;

  CallableFunction(std::size_t n, Callable fn) : n_(n), fn_(std::move(fn)) {}

  std::size_t dimension() const override { return n_; }
  double value(const SignVector& eps) const override;

 private:
  std::size_t n_;
  Callable fn_;
};

// Wraps a complex callable as a ComplexBernoulliFunction.
class CallableComplexFunction final : public ComplexBernoulliFunction {
 public:
  using Callable = std::function<std::complex<double>(const SignVector&)>;

  CallableComplexFunction(std::size_t n, Callable fn) : n_(n), fn_(std::move(fn)) {}

  std::size_t dimension() const override { return n_; }
  std::complex<double> value(const SignVector& eps) const override;

 private:
  std::size_t n_;
  Callable fn_;
};

// Disorder strength lambda and gap gamma over a fixed Laplacian.
class ResolventParams {
 public:
  ResolventParams(double lambda, double gamma, Laplacian laplacian);

  double lambda() const noexcept { return lambda_; }
  double gamma() const noexcept { return gamma_; }
  const Laplacian& laplacian() const noexcept { return laplacian_; }
  std::size_t dimension() const noexcept { return laplacian_.size(); }

  // (lambda + gamma) I - lambda D_eps - Laplacian.
  Eigen::MatrixXd shifted_operator(const SignVector& eps) const;

  // -lambda D_eps - Laplacian.
  Eigen::MatrixXd schrodinger_operator(const SignVector& eps) const;

 private:
  double lambda_;
  double gamma_;
  Laplacian laplacian_;
};

// f(eps) = (1/n) Tr[((lambda+gamma) I - lambda D_eps - Laplacian)^{-1}].
//
// value() factors M(eps) by Cholesky and returns ||L^{-1}||_F^2 / n.
// value_and_g() forms the explicit inverse once and obtains every
// single-coordinate flip by Sherman-Morrison: flipping eps_r adds
// 2 lambda eps_r e_r e_r^T to M, so
//   Tr M'^{-1} = Tr M^{-1} - 2 lambda eps_r |M^{-1} e_r|^2 / (1 + 2 lambda eps_r M^{-1}_rr).
// One O(n^3) factorization plus O(n^2) for all n flips.
class ResolventTrace final : public BernoulliFunction {
 public:
  explicit ResolventTrace(ResolventParams params) : params_(std::move(params)) {}

  const ResolventParams& params() const noexcept { return params_; }

  std::size_t dimension() const override { return params_.dimension(); }
  double value(const SignVector& eps) const override;
  ValueAndG value_and_g(const SignVector& eps) const override;
  std::uint64_t factorizations() const override { return factorizations_.load(); }

 private:
  void check_dimension(const SignVector& eps) const;

  ResolventParams params_;
  mutable std::atomic<std::uint64_t> factorizations_{0};
};

inline double resolvent_trace(const ResolventParams& params, const SignVector& eps) {
  return ResolventTrace(params).value(eps);
}

inline ValueAndG resolvent_trace_with_g(const ResolventParams& params, const SignVector& eps) {
  return ResolventTrace(params).value_and_g(eps);
}

// kappa * base, sharing base's fast (f, g) path.
class ScaledFunction final : public BernoulliFunction {
 public:
  ScaledFunction(double kappa, std::shared_ptr<const BernoulliFunction> base);

  double scale() const noexcept { return kappa_; }

  std::size_t dimension() const override { return base_->dimension(); }
  double value(const SignVector& eps) const override { return kappa_ * base_->value(eps); }
  ValueAndG value_and_g(const SignVector& eps) const override;
  std::uint64_t factorizations() const override { return base_->factorizations(); }

 private:
  double kappa_;
  std::shared_ptr<const BernoulliFunction> base_;
};

// A function h of one complex variable together with the caller's claim that
// it is analytic on a neighbourhood of the disk the dominated estimator needs.
class AnalyticFunction {
 public:
  using Evaluator = std::function<std::complex<double>(std::complex<double>)>;

  AnalyticFunction(std::string name, Evaluator evaluator, bool attested_analytic,
                   bool real_on_real = false);

  // sum_k coeffs[k] z^k (coefficients low to high).
  static AnalyticFunction polynomial(std::vector<double> coeffs);
  // exp(s z).
  static AnalyticFunction exponential(double s);
  // "poly:c0,c1,...,ck" or "exp:s".
  static AnalyticFunction parse(std::string_view spec);

  std::complex<double> operator()(std::complex<double> z) const { return evaluator_(z); }
  const std::string& name() const noexcept { return name_; }
  bool attested_analytic() const noexcept { return attested_; }
  bool real_on_real() const noexcept { return real_on_real_; }

 private:
  std::string name_;
  Evaluator evaluator_;
  bool attested_;
  bool real_on_real_;
};

// (1/n) sum over eigenvalues mu of (-lambda D_eps - Laplacian) of h(mu).
std::complex<double> spectral_functional_trace(const AnalyticFunction& h,
                                               const ResolventParams& params,
                                               const SignVector& eps);

class SpectralTrace final : public ComplexBernoulliFunction {
 public:
  SpectralTrace(AnalyticFunction h, ResolventParams params);

  std::size_t dimension() const override { return params_.dimension(); }
  std::complex<double> value(const SignVector& eps) const override;
  std::uint64_t factorizations() const override { return factorizations_.load(); }

 private:
  AnalyticFunction h_;
  ResolventParams params_;
  mutable std::atomic<std::uint64_t> factorizations_{0};
};

struct ContourIntegral {
  double kappa = 0.0;
  int nodes = 0;  // node count at which refinement was accepted
};

// kappa = (R / 2 pi) * integral_0^{2 pi} |h(d + R e^{it})| dt with
// R = d + lambda + gamma, by the periodic trapezoidal rule. Node count doubles
// from `nodes` until consecutive values agree to 1e-10 relative.
ContourIntegral contour_norm_integral_detail(const AnalyticFunction& h, int max_degree,
                                             double lambda, double gamma, int nodes = 64);

inline double contour_norm_integral(const AnalyticFunction& h, int max_degree, double lambda,
                                    double gamma, int nodes = 64) {
  return contour_norm_integral_detail(h, max_degree, lambda, gamma, nodes).kappa;
}

inline constexpr int kContourMaxNodes = 1 << 20;

// f1 = trace of h(-lambda D_eps - Laplacian) and its dominating function
// f2 = kappa * resolvent trace, whose Walsh coefficients bound those of f1.
struct DominatingPair {
  std::shared_ptr<const SpectralTrace> f1;
  std::shared_ptr<const ScaledFunction> f2;
  double kappa = 0.0;
};

DominatingPair dominating_resolvent_scale(const AnalyticFunction& h,
                                          const ResolventParams& params, const Graph& graph);

}  // namespace bcert
