#pragma once

#include "fkdet/paths.hpp"

namespace fkdet {

struct QuadratureOptions {
  int nodes = 32;            // Gauss-Legendre nodes per smooth piece
  double failure_tol = 1e-8; // doubling-check gate for path integrals
};

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Nodes and weights by Newton iteration on the Legendre recurrence.
const GaussLegendre& gauss_legendre(int n);

// Integral of the logarithmic derivative d(sigma)/dt sigma^{-1} over [0,1],
// split at the path's knots, with a node-doubling error estimate. The path
// must be J-restricted; the result is supported on the finite mask.
JElement rel_log(const SmoothPath& sigma, const QuadratureOptions& opt = {});

// Generalized trace of rel_log down to the base pair of the amplification.
JElement ch_rel(const SmoothPath& sigma, const QuadratureOptions& opt = {});

Complex tau_tilde(const SmoothPath& sigma, const QuadratureOptions& opt = {});

// L(H) = - int int dH/dt H^{-1} (x) dH/ds H^{-1} dt ds on an m x m
// Gauss-Legendre grid, with a grid-doubling gate on the Hochschild image.
TensorChain transgression_L(const Homotopy& h, int grid = 24,
                            double failure_tol = 1e-7);

}  // namespace fkdet
