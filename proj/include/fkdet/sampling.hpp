#pragma once

#include <cstdint>
#include <random>

#include "fkdet/paths.hpp"

namespace fkdet {

// Deterministic random stream. Gaussian variates are produced by Box-Muller
// on top of the raw 64-bit stream, so sequences do not depend on the
// standard library's distribution implementations.
class Rng {
public:
  explicit Rng(uint64_t seed);

  uint64_t u64() { return gen_(); }
  double real();  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * real(); }
  int uniform_int(int lo, int hi);  // inclusive
  double normal();
  Complex cnormal();

  // Independent substream; deterministic in (seed, index).
  Rng child(uint64_t index) const;

private:
  uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

CMatrix random_matrix(Rng& rng, int n);
CMatrix random_hermitian(Rng& rng, int n);
CMatrix random_unitary(Rng& rng, int n);
// Singular values log-uniform in [1/cond, 1] with both ends attained.
CMatrix random_invertible(Rng& rng, int n, double cond);
CMatrix random_positive(Rng& rng, int n, double cond);
CMatrix random_projection(Rng& rng, int n, int rank);

AElement random_a_element(Rng& rng, const TracialPair& pair, double scale = 1.0);
JElement random_j_element(Rng& rng, const TracialPair& pair, double scale = 1.0);
JElement random_j_hermitian(Rng& rng, const TracialPair& pair,
                            double scale = 1.0);
// Identity off the mask, random invertible blocks on it.
GPairElement random_g_element(Rng& rng, const TracialPair& pair,
                              double cond = 100.0);
// Invertible on every block.
AElement random_a_invertible(Rng& rng, const TracialPair& pair,
                             double cond = 100.0);
// Hermitian projection supported on one random masked block.
JElement random_j_projection(Rng& rng, const TracialPair& pair);

SmoothPath random_j_path(Rng& rng, const TracialPair& pair, int segments = 2,
                         double scale = 0.6);
SmoothPath random_a_path(Rng& rng, const TracialPair& pair, int segments = 2,
                         double scale = 0.6);

}  // namespace fkdet
