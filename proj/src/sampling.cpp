#include "fkdet/sampling.hpp"

#include <cmath>

namespace fkdet {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

double Rng::real() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(u64() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = real(), v = real();
  while (u <= 1e-300) u = real();
  const double r = std::sqrt(-2.0 * std::log(u));
  have_spare_ = true;
  spare_ = r * std::sin(2.0 * M_PI * v);
  return r * std::cos(2.0 * M_PI * v);
}

Complex Rng::cnormal() {
  const double re = normal();
  return {re, normal()};
}

Rng Rng::child(uint64_t index) const {
  return Rng(splitmix64(seed_ ^ splitmix64(index + 0x51ed270b4c2a9d11ull)));
}

CMatrix random_matrix(Rng& rng, int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.cnormal() / std::sqrt(2.0);
  return m;
}

CMatrix random_hermitian(Rng& rng, int n) {
  const CMatrix m = random_matrix(rng, n);
  return 0.5 * (m + m.adjoint());
}

CMatrix random_unitary(Rng& rng, int n) {
  const CMatrix m = random_matrix(rng, n);
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ();
  // Fix the phase freedom so the result is a deterministic function of m.
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_invertible(Rng& rng, int n, double cond) {
  const CMatrix u = random_unitary(rng, n);
  const CMatrix v = random_unitary(rng, n);
  Eigen::VectorXd s(n);
  s(0) = 1.0;
  if (n > 1) s(n - 1) = 1.0 / cond;
  for (int i = 1; i + 1 < n; ++i)
    s(i) = std::exp(-rng.real() * std::log(cond));
  return u * s.asDiagonal() * v.adjoint();
}

CMatrix random_positive(Rng& rng, int n, double cond) {
  const CMatrix u = random_unitary(rng, n);
  Eigen::VectorXd s(n);
  s(0) = 1.0;
  if (n > 1) s(n - 1) = 1.0 / cond;
  for (int i = 1; i + 1 < n; ++i)
    s(i) = std::exp(-rng.real() * std::log(cond));
  CMatrix p = u * s.asDiagonal() * u.adjoint();
  return 0.5 * (p + p.adjoint().eval());
}

CMatrix random_projection(Rng& rng, int n, int rank) {
  const CMatrix u = random_unitary(rng, n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < rank && i < n; ++i) s(i) = 1.0;
  CMatrix p = u * s.asDiagonal() * u.adjoint();
  return 0.5 * (p + p.adjoint().eval());
}

AElement random_a_element(Rng& rng, const TracialPair& pair, double scale) {
  AElement x = AElement::zeros(pair);
  for (int k = 0; k < pair.block_count(); ++k)
    x.part(k) = scale * random_matrix(rng, pair.dim(k));
  return x;
}

JElement random_j_element(Rng& rng, const TracialPair& pair, double scale) {
  std::map<int, CMatrix> parts;
  for (int k : pair.mask()) parts[k] = scale * random_matrix(rng, pair.dim(k));
  return JElement::from_masked_parts(pair, std::move(parts));
}

JElement random_j_hermitian(Rng& rng, const TracialPair& pair, double scale) {
  std::map<int, CMatrix> parts;
  for (int k : pair.mask())
    parts[k] = scale * random_hermitian(rng, pair.dim(k));
  return JElement::from_masked_parts(pair, std::move(parts));
}

GPairElement random_g_element(Rng& rng, const TracialPair& pair, double cond) {
  std::map<int, CMatrix> parts;
  for (int k : pair.mask()) {
    const int d = pair.dim(k);
    parts[k] = random_invertible(rng, d, cond) - CMatrix::Identity(d, d);
  }
  return GPairElement(JElement::from_masked_parts(pair, std::move(parts)));
}

AElement random_a_invertible(Rng& rng, const TracialPair& pair, double cond) {
  AElement x = AElement::zeros(pair);
  for (int k = 0; k < pair.block_count(); ++k)
    x.part(k) = random_invertible(rng, pair.dim(k), cond);
  return x;
}

JElement random_j_projection(Rng& rng, const TracialPair& pair) {
  const auto& mask = pair.mask();
  const int k = mask[static_cast<size_t>(
      rng.uniform_int(0, static_cast<int>(mask.size()) - 1))];
  const int d = pair.dim(k);
  std::map<int, CMatrix> parts;
  parts[k] = random_projection(rng, d, rng.uniform_int(1, d));
  return JElement::from_masked_parts(pair, std::move(parts));
}

namespace {

SmoothPath random_path(Rng& rng, const TracialPair& pair, int segments,
                       double scale, bool j_restricted) {
  std::vector<Segment> segs;
  AElement base = AElement::identity(pair);
  for (int i = 0; i < segments; ++i) {
    const AElement gen = j_restricted
                             ? random_j_element(rng, pair, scale).as_a()
                             : random_a_element(rng, pair, scale);
    segs.push_back(Segment{static_cast<double>(i) / segments,
                           static_cast<double>(i + 1) / segments, base, gen});
    base = base * exp_a(gen);
  }
  return SmoothPath::from_segments(
      std::move(segs),
      j_restricted ? Support::j_restricted : Support::a_unrestricted);
}

}  // namespace

SmoothPath random_j_path(Rng& rng, const TracialPair& pair, int segments,
                         double scale) {
  return random_path(rng, pair, segments, scale, true);
}

SmoothPath random_a_path(Rng& rng, const TracialPair& pair, int segments,
                         double scale) {
  return random_path(rng, pair, segments, scale, false);
}

}  // namespace fkdet
