#pragma once

#include "fkdet/chern.hpp"

namespace fkdet {

// Complex number taken modulo the integer lattice spanned by a finite set
// of generators; equality searches bounded integer coefficients.
struct QuotientValue {
  Complex rep;
  std::vector<Complex> generators;

  bool congruent(const QuotientValue& other, double tol = 1e-6,
                 int coeff_bound = 20) const;
};

// Lattice membership of a single complex number.
bool in_lattice(const Complex& z, const std::vector<Complex>& generators,
                double tol = 1e-6, int coeff_bound = 20);

// A smooth loop at the identity reinterpreted as a relative path; the
// angular substitution is absorbed into the parametrization.
SmoothPath boundary(const SmoothPath& loop);

// Endpoint inverse of a relative path, as a perturbation of the identity.
GPairElement theta(const SmoothPath& sigma);

// Two-segment lift through the unitary and the positive part: first
// exp(i ramp(t) x) with x = unitary_log(g |g|^{-1}), then multiplication by
// exp(ramp(t) log|g|). Endpoint g; J-restricted throughout.
SmoothPath connect_to_identity(const GPairElement& g);

// Pointwise product of the pointwise commutators [alpha_i, beta_i].
SmoothPath commutator_lift(
    const TracialPair& pair,
    const std::vector<std::pair<SmoothPath, SmoothPath>>& pairs);

// gamma_e * gamma_f^{-1} for idempotents with e - f in the ideal.
SmoothPath bott_class(const AElement& e, const AElement& f);

// Generators 2 pi i w_k of the winding subgroup, one per masked block.
std::vector<Complex> winding_subgroup(const TracialPair& pair);

}  // namespace fkdet
