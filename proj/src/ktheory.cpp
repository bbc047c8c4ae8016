#include "fkdet/ktheory.hpp"

#include <cmath>
#include <functional>

namespace fkdet {

namespace {

bool search_lattice(const Complex& target,
                    const std::vector<Complex>& generators, size_t index,
                    const Complex& acc, double tol, int bound) {
  if (index == generators.size()) return std::abs(target - acc) <= tol;
  for (int c = -bound; c <= bound; ++c) {
    if (search_lattice(target, generators, index + 1,
                       acc + static_cast<double>(c) * generators[index], tol,
                       bound))
      return true;
  }
  return false;
}

}  // namespace

bool in_lattice(const Complex& z, const std::vector<Complex>& generators,
                double tol, int coeff_bound) {
  return search_lattice(z, generators, 0, Complex(0.0), tol, coeff_bound);
}

bool QuotientValue::congruent(const QuotientValue& other, double tol,
                              int coeff_bound) const {
  return in_lattice(rep - other.rep, generators, tol, coeff_bound);
}

SmoothPath boundary(const SmoothPath& loop) {
  const AElement end = loop.value(1.0);
  const AElement id = AElement::identity(loop.pair());
  double dev = 0.0;
  for (int k = 0; k < end.block_count(); ++k)
    dev = std::max(dev, (end.part(k) - id.part(k)).norm());
  if (dev > 1e-8) fail(errc::not_a_loop, "path does not close at the identity");
  return loop;
}

GPairElement theta(const SmoothPath& sigma) {
  if (sigma.support() != Support::j_restricted)
    fail(errc::support_violation, "theta needs a J-restricted path");
  return GPairElement::from_a(sigma.value(1.0).inverse());
}

SmoothPath connect_to_identity(const GPairElement& g) {
  const TracialPair& pair = g.pair();
  AElement x = AElement::zeros(pair);       // unitary_log of the polar part
  AElement logp = AElement::zeros(pair);    // log |g|
  for (int k = 0; k < pair.block_count(); ++k) {
    if (!pair.finite(k)) continue;  // blocks there are exactly the identity
    const PolarForm pf = polar(g.g().part(k));
    x.part(k) = unitary_log(pf.u);
    logp.part(k) = func_herm(pf.p, [](double t) {
      return Complex(std::log(t), 0.0);
    });
  }
  // The second base is the computed end of the first segment, so the seam
  // is continuous by construction.
  const AElement u = exp_a(kImag * x);
  return SmoothPath::from_segments(
      {Segment{0.0, 0.5, AElement::identity(pair), kImag * x},
       Segment{0.5, 1.0, u, logp}},
      Support::j_restricted);
}

SmoothPath commutator_lift(
    const TracialPair& pair,
    const std::vector<std::pair<SmoothPath, SmoothPath>>& pairs) {
  SmoothPath acc = SmoothPath::constant(pair, Support::j_restricted);
  for (const auto& [alpha, beta] : pairs) {
    require_same_pair(alpha.pair(), pair, "commutator factor");
    if (alpha.support() != Support::j_restricted)
      fail(errc::support_violation,
           "commutator lift needs J-restricted left factors");
    acc = pw_product(acc, pw_commutator(alpha, beta));
  }
  return acc;
}

SmoothPath bott_class(const AElement& e, const AElement& f) {
  require_same_pair(e.pair(), f.pair(), "Bott class");
  if (!(e - f).is_j_supported(1e-8))
    fail(errc::support_violation,
         "Bott class needs e - f supported on the finite mask");
  const SmoothPath loop =
      pw_product(idempotent_loop(e), pw_inverse(idempotent_loop(f)));
  return as_j_restricted(loop);
}

std::vector<Complex> winding_subgroup(const TracialPair& pair) {
  std::vector<Complex> gens;
  for (int k : pair.mask())
    gens.push_back(2.0 * M_PI * kImag * pair.weight(k));
  return gens;
}

}  // namespace fkdet
