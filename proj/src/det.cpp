#include "fkdet/det.hpp"

#include <algorithm>
#include <cmath>

#include "fkdet/sampling.hpp"

namespace fkdet {

QuotientValue det_tilde(const GPairElement& g, const QuadratureOptions& opt) {
  const SmoothPath lift = connect_to_identity(g.inverse());
  return {tau_tilde(lift, opt), winding_subgroup(g.pair())};
}

double det_fk(const GPairElement& g, const QuadratureOptions& opt) {
  return std::exp(det_tilde(g, opt).rep.real());
}

double det_closed(const GPairElement& g) {
  double acc = 0.0;
  for (int k : g.pair().mask()) {
    const PolarForm pf = polar(g.g().part(k));
    const CMatrix logp = func_herm(pf.p, [](double t) {
      return Complex(std::log(t), 0.0);
    });
    acc += g.pair().weight(k) * logp.trace().real();
  }
  return std::exp(acc);
}

bool PropertyReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const Entry& e) { return e.pass; });
}

namespace {

double rel_dev(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

GPairElement conjugate(const AElement& h, const GPairElement& g) {
  return GPairElement::from_a(h * g.g() * h.inverse());
}

AElement off_mask_invertible(Rng& rng, const TracialPair& pair, double cond) {
  AElement h = AElement::identity(pair);
  for (int k = 0; k < pair.block_count(); ++k)
    if (!pair.finite(k)) h.part(k) = random_invertible(rng, pair.dim(k), cond);
  return h;
}

GPairElement random_j_unitary(Rng& rng, const TracialPair& pair) {
  std::map<int, CMatrix> parts;
  for (int k : pair.mask()) {
    const int d = pair.dim(k);
    parts[k] = random_unitary(rng, d) - CMatrix::Identity(d, d);
  }
  return GPairElement(JElement::from_masked_parts(pair, std::move(parts)));
}

}  // namespace

PropertyReport property_suite(const TracialPair& pair, int trials,
                              uint64_t seed) {
  if (trials < 1) fail(errc::invalid_argument, "property suite needs trials >= 1");
  const double cond = 100.0;
  double mult = 0.0, conj = 0.0, conj_exact = 0.0, expo = 0.0, unit = 0.0,
         comm = 0.0, route = 0.0;
  const Rng root(seed);
  for (int i = 0; i < trials; ++i) {
    Rng rng = root.child(static_cast<uint64_t>(i));

    const GPairElement g = random_g_element(rng, pair, cond);
    const GPairElement h = random_g_element(rng, pair, cond);
    mult = std::max(mult, rel_dev(det_fk(g * h), det_fk(g) * det_fk(h)));

    const AElement c = random_a_invertible(rng, pair, cond);
    conj = std::max(conj, rel_dev(det_fk(conjugate(c, g)), det_fk(g)));

    const AElement coff = off_mask_invertible(rng, pair, cond);
    conj_exact = std::max(
        conj_exact, std::abs(det_closed(conjugate(coff, g)) - det_closed(g)));

    const JElement x = random_j_hermitian(rng, pair, 0.5);
    expo = std::max(expo, rel_dev(det_fk(GPairElement::from_a(exp_a(x.as_a()))),
                                  std::exp(tau(x).real())));

    unit = std::max(unit, std::abs(det_fk(random_j_unitary(rng, pair)) - 1.0));

    const GPairElement gc = random_g_element(rng, pair, cond);
    const AElement hc = random_a_invertible(rng, pair, cond);
    const GPairElement commutator = GPairElement::from_a(
        gc.g() * hc * gc.g().inverse() * hc.inverse());
    comm = std::max(comm, std::abs(det_fk(commutator) - 1.0));

    route = std::max(route, rel_dev(det_fk(g), det_closed(g)));
  }

  PropertyReport report;
  auto push = [&](const std::string& name, double dev, double tol) {
    report.entries.push_back({name, trials, dev, tol, dev <= tol});
  };
  push("multiplicativity", mult, 1e-6);
  push("conjugation_invariance", conj, 1e-6);
  push("conjugation_off_mask_exact", conj_exact, 0.0);
  push("exponential_law", expo, 1e-7);
  push("unitary_kernel", unit, 1e-8);
  push("commutator_triviality", comm, 1e-6);
  push("route_agreement", route, 1e-6);
  return report;
}

}  // namespace fkdet
