#include "fkdet/chern.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace fkdet {

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) fail(errc::invalid_argument, "quadrature needs >= 1 node");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre gl;
  gl.nodes.resize(static_cast<size_t>(n));
  gl.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[static_cast<size_t>(i)] = -x;
    gl.weights[static_cast<size_t>(i)] = w;
    gl.nodes[static_cast<size_t>(n - 1 - i)] = x;
    gl.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return cache.emplace(n, std::move(gl)).first->second;
}

namespace {

// Composite Gauss-Legendre of the logarithmic derivative over the knot
// intervals of the path.
AElement log_derivative_integral(const SmoothPath& sigma, int nodes) {
  const GaussLegendre& gl = gauss_legendre(nodes);
  AElement acc = AElement::zeros(sigma.pair());
  const std::vector<double> knots = sigma.knots();
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    const double mid = 0.5 * (knots[i] + knots[i + 1]);
    const double half = 0.5 * (knots[i + 1] - knots[i]);
    for (int q = 0; q < nodes; ++q) {
      const PathJet jet = sigma.jet(mid + half * gl.nodes[static_cast<size_t>(q)]);
      acc += Complex(half * gl.weights[static_cast<size_t>(q)]) *
             (jet.d * jet.v.inverse());
    }
  }
  return acc;
}

}  // namespace

JElement rel_log(const SmoothPath& sigma, const QuadratureOptions& opt) {
  if (sigma.support() != Support::j_restricted)
    fail(errc::support_violation, "rel_log needs a J-restricted path");
  const AElement coarse = log_derivative_integral(sigma, opt.nodes);
  const AElement fine = log_derivative_integral(sigma, 2 * opt.nodes);
  if (a_norm(fine - coarse) > opt.failure_tol)
    fail(errc::quadrature_failure,
         "node doubling moved the path integral beyond the gate");
  return JElement::from_a(fine);
}

JElement ch_rel(const SmoothPath& sigma, const QuadratureOptions& opt) {
  return mat_trace(rel_log(sigma, opt), sigma.level());
}

Complex tau_tilde(const SmoothPath& sigma, const QuadratureOptions& opt) {
  return -tau(ch_rel(sigma, opt));
}

namespace {

TensorChain transgression_grid(const Homotopy& h, int grid) {
  const GaussLegendre& gl = gauss_legendre(grid);
  TensorChain chain(h.pair());
  for (int i = 0; i < grid; ++i) {
    const double s = 0.5 + 0.5 * gl.nodes[static_cast<size_t>(i)];
    const double ws = 0.5 * gl.weights[static_cast<size_t>(i)];
    for (int q = 0; q < grid; ++q) {
      const double t = 0.5 + 0.5 * gl.nodes[static_cast<size_t>(q)];
      const double wt = 0.5 * gl.weights[static_cast<size_t>(q)];
      const Homotopy::Jet jet = h.jet(s, t);
      const AElement hinv = jet.v.inverse();
      chain.add(JElement::from_a(Complex(-ws * wt) * (jet.dt * hinv)),
                jet.ds * hinv);
    }
  }
  return chain;
}

}  // namespace

TensorChain transgression_L(const Homotopy& h, int grid, double failure_tol) {
  const TensorChain coarse = transgression_grid(h, grid);
  const TensorChain fine = transgression_grid(h, 2 * grid);
  const JElement gap = hochschild_b(fine) - hochschild_b(coarse);
  if (j_norm(gap) > failure_tol)
    fail(errc::quadrature_failure,
         "grid doubling moved the transgression beyond the gate");
  return coarse;  // the contract is the m x m chain; fine only gates it
}

}  // namespace fkdet
