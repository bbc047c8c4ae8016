#pragma once

#include <cstdint>
#include <string>

#include "fkdet/ktheory.hpp"

namespace fkdet {

// Trace of the path integral along a lift of g, modulo the winding lattice.
// The lift connects the identity to g^{-1} so that the endpoint-inverse map
// carries its class to [g].
QuotientValue det_tilde(const GPairElement& g,
                        const QuadratureOptions& opt = {});

// exp of the real part of det_tilde; well defined because every lattice
// generator is purely imaginary.
double det_fk(const GPairElement& g, const QuadratureOptions& opt = {});

// Path-free route: exp(Re tau(log|g|)) through polar decomposition and
// functional calculus only.
double det_closed(const GPairElement& g);

struct PropertyReport {
  struct Entry {
    std::string name;
    int trials;
    double max_dev;  // relative where a scale exists, absolute otherwise
    double tol;
    bool pass;
  };
  std::vector<Entry> entries;
  bool all_pass() const;
};

// Multiplicativity, conjugation invariance, exponential law, unitary
// kernel, commutator triviality and route agreement on seeded random
// inputs. Deterministic in (pair, trials, seed).
PropertyReport property_suite(const TracialPair& pair, int trials,
                              uint64_t seed);

}  // namespace fkdet
