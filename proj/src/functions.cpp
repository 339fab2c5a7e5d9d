#include "bcert/functions.hpp"

#include <cmath>
#include <string>

#include "bcert/error.hpp"

namespace bcert {

ValueAndG BernoulliFunction::value_and_g(const SignVector& eps) const {
  const double f = value(eps);
  double g = 0.0;
  for (std::size_t r = 0; r < eps.size(); ++r) g += f - value(flip(eps, r));
  return {f, 0.5 * g};
}

double naive_g(const BernoulliFunction& f, const SignVector& eps) {
  if (eps.size() != f.dimension()) {
    fail(ErrorCode::invalid_argument, "sign vector length " + std::to_string(eps.size()) +
                                          " does not match function dimension " +
                                          std::to_string(f.dimension()));
  }
  return f.BernoulliFunction::value_and_g(eps).g;
}

double CallableFunction::value(const SignVector& eps) const {
  if (eps.size() != n_) fail(ErrorCode::invalid_argument, "sign vector length mismatch");
  return fn_(eps);
}

std::complex<double> CallableComplexFunction::value(const SignVector& eps) const {
  if (eps.size() != n_) fail(ErrorCode::invalid_argument, "sign vector length mismatch");
  return fn_(eps);
}

ResolventParams::ResolventParams(double lambda, double gamma, Laplacian laplacian)
    : lambda_(lambda), gamma_(gamma), laplacian_(std::move(laplacian)) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    fail(ErrorCode::invalid_argument, "lambda must be positive and finite");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    fail(ErrorCode::invalid_argument, "gamma must be positive and finite");
  }
}

Eigen::MatrixXd ResolventParams::schrodinger_operator(const SignVector& eps) const {
  if (eps.size() != dimension()) {
    fail(ErrorCode::invalid_argument, "sign vector length " + std::to_string(eps.size()) +
                                          " does not match graph size " +
                                          std::to_string(dimension()));
  }
  Eigen::MatrixXd h = -laplacian_.matrix();
  for (std::size_t k = 0; k < eps.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    h(i, i) -= lambda_ * eps[k];
  }
  return h;
}

Eigen::MatrixXd ResolventParams::shifted_operator(const SignVector& eps) const {
  Eigen::MatrixXd m = schrodinger_operator(eps);
  m.diagonal().array() += lambda_ + gamma_;
  return m;
}

void ResolventTrace::check_dimension(const SignVector& eps) const {
  if (eps.size() != dimension()) {
    fail(ErrorCode::invalid_argument, "sign vector length " + std::to_string(eps.size()) +
                                          " does not match graph size " +
                                          std::to_string(dimension()));
  }
}

double ResolventTrace::value(const SignVector& eps) const {
  check_dimension(eps);
  const Eigen::LLT<Eigen::MatrixXd> llt(params_.shifted_operator(eps));
  factorizations_.fetch_add(1, std::memory_order_relaxed);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::numerical, "Cholesky factorization of the shifted operator failed");
  }
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXd l_inv = Eigen::MatrixXd::Identity(n, n);
  llt.matrixL().solveInPlace(l_inv);
  return l_inv.squaredNorm() / static_cast<double>(n);
}

ValueAndG ResolventTrace::value_and_g(const SignVector& eps) const {
  check_dimension(eps);
  const Eigen::LLT<Eigen::MatrixXd> llt(params_.shifted_operator(eps));
  factorizations_.fetch_add(1, std::memory_order_relaxed);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::numerical, "Cholesky factorization of the shifted operator failed");
  }
  const auto n = static_cast<Eigen::Index>(dimension());
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));

  const double two_lambda = 2.0 * params_.lambda();
  double flip_sum = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    const double s = static_cast<double>(eps[static_cast<std::size_t>(r)]);
    const double denom = 1.0 + two_lambda * s * inv(r, r);
    if (!(denom > 0.0)) {
      fail(ErrorCode::internal,
           "nonpositive Sherman-Morrison denominator at coordinate " + std::to_string(r));
    }
    flip_sum += two_lambda * s * inv.col(r).squaredNorm() / denom;
  }
  const double nd = static_cast<double>(n);
  return {inv.trace() / nd, 0.5 * flip_sum / nd};
}

ScaledFunction::ScaledFunction(double kappa, std::shared_ptr<const BernoulliFunction> base)
    : kappa_(kappa), base_(std::move(base)) {
  if (!base_) fail(ErrorCode::invalid_argument, "scaled function needs a base function");
  if (!std::isfinite(kappa)) fail(ErrorCode::invalid_argument, "scale must be finite");
}

ValueAndG ScaledFunction::value_and_g(const SignVector& eps) const {
  const auto base = base_->value_and_g(eps);
  return {kappa_ * base.f, kappa_ * base.g};
}

std::complex<double> spectral_functional_trace(const AnalyticFunction& h,
                                               const ResolventParams& params,
                                               const SignVector& eps) {
  if (!h.attested_analytic()) {
    fail(ErrorCode::invalid_argument,
         "function '" + h.name() + "' carries no analyticity attestation");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(params.schrodinger_operator(eps),
                                                              Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::numerical, "eigendecomposition of the Schrodinger operator failed");
  }
  const auto& mu = solver.eigenvalues();
  std::complex<double> sum = 0.0;
  if (h.real_on_real()) {
    double re = 0.0;
    for (Eigen::Index k = 0; k < mu.size(); ++k) re += h(mu(k)).real();
    sum = re;
  } else {
    for (Eigen::Index k = 0; k < mu.size(); ++k) sum += h(mu(k));
  }
  return sum / static_cast<double>(mu.size());
}

SpectralTrace::SpectralTrace(AnalyticFunction h, ResolventParams params)
    : h_(std::move(h)), params_(std::move(params)) {
  if (!h_.attested_analytic()) {
    fail(ErrorCode::invalid_argument,
         "function '" + h_.name() + "' carries no analyticity attestation");
  }
}

std::complex<double> SpectralTrace::value(const SignVector& eps) const {
  factorizations_.fetch_add(1, std::memory_order_relaxed);
  return spectral_functional_trace(h_, params_, eps);
}

ContourIntegral contour_norm_integral_detail(const AnalyticFunction& h, int max_degree,
                                             double lambda, double gamma, int nodes) {
  if (nodes < 8 || nodes % 2 != 0) {
    fail(ErrorCode::invalid_argument, "contour quadrature needs an even node count >= 8");
  }
  if (max_degree < 0) fail(ErrorCode::invalid_argument, "max degree must be nonnegative");
  if (!(lambda > 0.0) || !(gamma > 0.0)) {
    fail(ErrorCode::invalid_argument, "lambda and gamma must be positive");
  }
  const double center = static_cast<double>(max_degree);
  const double radius = center + lambda + gamma;

  // Mean of |h| over `count` equispaced points; the integral is radius * mean.
  const auto trapezoid = [&](int count) {
    double sum = 0.0;
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
      sum += std::abs(h(center + radius * std::polar(1.0, t)));
    }
    return radius * sum / static_cast<double>(count);
  };

  double previous = trapezoid(nodes);
  if (!std::isfinite(previous)) fail(ErrorCode::numerical, "contour integrand is not finite");
  for (int count = 2 * nodes; count <= kContourMaxNodes; count *= 2) {
    const double current = trapezoid(count);
    if (!std::isfinite(current)) fail(ErrorCode::numerical, "contour integrand is not finite");
    if (std::abs(current - previous) <= 1e-10 * std::abs(current)) return {current, count};
    previous = current;
  }
  fail(ErrorCode::numerical, "contour quadrature for '" + h.name() +
                                 "' did not converge within " +
                                 std::to_string(kContourMaxNodes) + " nodes");
}

DominatingPair dominating_resolvent_scale(const AnalyticFunction& h,
                                          const ResolventParams& params, const Graph& graph) {
  if (graph.vertex_count() != params.dimension()) {
    fail(ErrorCode::invalid_argument, "graph does not match the Laplacian dimension");
  }
  const double kappa =
      contour_norm_integral(h, graph.max_degree(), params.lambda(), params.gamma());
  DominatingPair pair;
  pair.f1 = std::make_shared<SpectralTrace>(h, params);
  pair.f2 = std::make_shared<ScaledFunction>(kappa, std::make_shared<ResolventTrace>(params));
  pair.kappa = kappa;
  return pair;
}

}  // namespace bcert
