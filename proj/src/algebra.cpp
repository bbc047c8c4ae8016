#include "fkdet/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace fkdet {

TracialPair::TracialPair(std::vector<int> blocks, std::vector<int> finite_mask,
                         std::map<int, double> weights)
    : blocks_(std::move(blocks)) {
  if (blocks_.empty())
    fail(errc::invalid_argument, "tracial pair needs at least one block");
  for (int d : blocks_)
    if (d < 1) fail(errc::invalid_argument, "block dimensions must be >= 1");
  finite_.assign(blocks_.size(), false);
  weights_.assign(blocks_.size(), 0.0);
  if (finite_mask.empty())
    fail(errc::invalid_argument, "finite mask must be nonempty");
  std::sort(finite_mask.begin(), finite_mask.end());
  for (size_t i = 0; i < finite_mask.size(); ++i) {
    const int k = finite_mask[i];
    if (k < 0 || k >= block_count())
      fail(errc::invalid_argument, "finite mask index out of range");
    if (i > 0 && finite_mask[i - 1] == k)
      fail(errc::invalid_argument, "finite mask has duplicate indices");
    const auto it = weights.find(k);
    if (it == weights.end())
      fail(errc::invalid_argument, "missing weight for a masked block");
    if (!(it->second > 0.0) || !std::isfinite(it->second))
      fail(errc::invalid_argument, "trace weights must be finite and > 0");
    finite_[static_cast<size_t>(k)] = true;
    weights_[static_cast<size_t>(k)] = it->second;
  }
  for (const auto& [k, w] : weights) {
    (void)w;
    if (k < 0 || k >= block_count() || !finite_[static_cast<size_t>(k)])
      fail(errc::invalid_argument, "weight given for a block not in the mask");
  }
  mask_ = std::move(finite_mask);
}

double TracialPair::weight(int k) const {
  if (!finite(k)) fail(errc::invalid_argument, "block carries no finite trace");
  return weights_[static_cast<size_t>(k)];
}

TracialPair TracialPair::amplified(int n) const {
  if (n < 1) fail(errc::invalid_argument, "amplification level must be >= 1");
  std::vector<int> dims(blocks_);
  for (int& d : dims) d *= n;
  std::map<int, double> w;
  for (int k : mask_) w[k] = weights_[static_cast<size_t>(k)];
  return TracialPair(std::move(dims), mask_, std::move(w));
}

void require_same_pair(const TracialPair& a, const TracialPair& b,
                       const char* what) {
  if (!(a == b))
    fail(errc::pair_mismatch, std::string(what) + " over different pairs");
}

AElement::AElement(TracialPair pair, std::vector<CMatrix> parts)
    : pair_(std::move(pair)), parts_(std::move(parts)) {
  if (static_cast<int>(parts_.size()) != pair_.block_count())
    fail(errc::shape_mismatch, "wrong number of blocks");
  for (int k = 0; k < pair_.block_count(); ++k) {
    validate_cmatrix(parts_[static_cast<size_t>(k)], "block");
    if (parts_[static_cast<size_t>(k)].rows() != pair_.dim(k))
      fail(errc::shape_mismatch, "block dimension does not match the pair");
  }
}

AElement AElement::zeros(const TracialPair& pair) {
  std::vector<CMatrix> parts;
  for (int k = 0; k < pair.block_count(); ++k)
    parts.push_back(CMatrix::Zero(pair.dim(k), pair.dim(k)));
  return AElement(pair, std::move(parts));
}

AElement AElement::identity(const TracialPair& pair) {
  std::vector<CMatrix> parts;
  for (int k = 0; k < pair.block_count(); ++k)
    parts.push_back(CMatrix::Identity(pair.dim(k), pair.dim(k)));
  return AElement(pair, std::move(parts));
}

AElement AElement::adjoint() const {
  std::vector<CMatrix> parts;
  for (const CMatrix& m : parts_) parts.push_back(m.adjoint());
  return AElement(pair_, std::move(parts));
}

AElement AElement::inverse() const {
  std::vector<CMatrix> parts;
  for (const CMatrix& m : parts_) parts.push_back(fkdet::inverse(m));
  return AElement(pair_, std::move(parts));
}

AElement& AElement::operator+=(const AElement& o) {
  require_same_pair(pair_, o.pair_, "sum");
  for (size_t k = 0; k < parts_.size(); ++k) parts_[k] += o.parts_[k];
  return *this;
}

AElement& AElement::operator-=(const AElement& o) {
  require_same_pair(pair_, o.pair_, "difference");
  for (size_t k = 0; k < parts_.size(); ++k) parts_[k] -= o.parts_[k];
  return *this;
}

AElement operator*(const AElement& a, const AElement& b) {
  require_same_pair(a.pair_, b.pair_, "product");
  std::vector<CMatrix> parts;
  for (size_t k = 0; k < a.parts_.size(); ++k)
    parts.push_back(a.parts_[k] * b.parts_[k]);
  return AElement(a.pair_, std::move(parts));
}

AElement operator*(const Complex& c, AElement a) {
  for (CMatrix& m : a.parts_) m *= c;
  return a;
}

bool AElement::is_j_supported(double tol) const {
  for (int k = 0; k < block_count(); ++k) {
    if (pair_.finite(k)) continue;
    if (part(k).norm() > tol) return false;
  }
  return true;
}

double a_norm(const AElement& x) {
  double r = 0.0;
  for (int k = 0; k < x.block_count(); ++k)
    r = std::max(r, op_norm(x.part(k)));
  return r;
}

AElement exp_a(const AElement& x) {
  std::vector<CMatrix> parts;
  for (int k = 0; k < x.block_count(); ++k) parts.push_back(mat_exp(x.part(k)));
  return AElement(x.pair(), std::move(parts));
}

JElement JElement::zeros(const TracialPair& pair) {
  return JElement(AElement::zeros(pair));
}

JElement JElement::from_a(const AElement& a, double snap_tol) {
  AElement out = a;
  for (int k = 0; k < a.block_count(); ++k) {
    if (a.pair().finite(k)) continue;
    if (a.part(k).norm() > snap_tol)
      fail(errc::support_violation,
           "element is not supported on the finite-trace blocks");
    out.part(k).setZero();
  }
  return JElement(std::move(out));
}

JElement JElement::from_masked_parts(const TracialPair& pair,
                                     std::map<int, CMatrix> parts) {
  AElement out = AElement::zeros(pair);
  for (auto& [k, m] : parts) {
    if (k < 0 || k >= pair.block_count() || !pair.finite(k))
      fail(errc::support_violation, "part assigned outside the finite mask");
    validate_cmatrix(m, "masked part");
    if (m.rows() != pair.dim(k))
      fail(errc::shape_mismatch, "masked part dimension mismatch");
    out.part(k) = std::move(m);
  }
  return JElement(std::move(out));
}

JElement JElement::adjoint() const { return JElement(a_.adjoint()); }

JElement& JElement::operator+=(const JElement& o) {
  a_ += o.a_;
  return *this;
}

JElement& JElement::operator-=(const JElement& o) {
  a_ -= o.a_;
  return *this;
}

JElement operator*(const Complex& c, const JElement& j) {
  return JElement(c * j.a_);
}

JElement operator*(const JElement& j, const AElement& a) {
  return JElement(j.a_ * a);
}

JElement operator*(const AElement& a, const JElement& j) {
  return JElement(a * j.a_);
}

JElement operator*(const JElement& a, const JElement& b) {
  return JElement(a.a_ * b.a_);
}

Complex tau(const JElement& x) {
  Complex r = 0.0;
  for (int k : x.pair().mask()) r += x.pair().weight(k) * x.part(k).trace();
  return r;
}

double j_norm(const JElement& x) {
  double trace_part = 0.0;
  for (int k : x.pair().mask())
    trace_part += x.pair().weight(k) * operator_abs(x.part(k)).trace().real();
  return a_norm(x.as_a()) + trace_part;
}

GPairElement::GPairElement(const JElement& j)
    : j_(j), g_(AElement::identity(j.pair()) + j.as_a()) {
  for (int k = 0; k < g_.block_count(); ++k)
    require_invertible(g_.part(k), kInvertGate, "1 + j block");
}

GPairElement GPairElement::from_a(const AElement& g, double snap_tol) {
  return GPairElement(JElement::from_a(g - AElement::identity(g.pair()),
                                       snap_tol));
}

GPairElement GPairElement::inverse() const { return from_a(g_.inverse()); }

GPairElement operator*(const GPairElement& a, const GPairElement& b) {
  return GPairElement::from_a(a.g_ * b.g_);
}

void TensorChain::add(JElement j, AElement a) {
  require_same_pair(pair_, j.pair(), "tensor term");
  require_same_pair(pair_, a.pair(), "tensor term");
  terms_.emplace_back(std::move(j), std::move(a));
}

JElement hochschild_b(const TensorChain& c) {
  JElement r = JElement::zeros(c.pair());
  for (size_t i = 0; i < c.size(); ++i) {
    const auto& [j, a] = c.term(i);
    r += j * a - a * j;
  }
  return r;
}

Amplification::Amplification(TracialPair base, int n)
    : base_(std::move(base)), n_(n), total_(base_.amplified(n)) {}

AElement Amplification::embed(
    const std::vector<std::vector<AElement>>& grid) const {
  if (static_cast<int>(grid.size()) != n_)
    fail(errc::shape_mismatch, "grid must have n rows");
  for (const auto& row : grid)
    if (static_cast<int>(row.size()) != n_)
      fail(errc::shape_mismatch, "grid must have n columns");
  AElement out = AElement::zeros(total_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      require_same_pair(grid[i][j].pair(), base_, "grid entry");
      for (int k = 0; k < base_.block_count(); ++k) {
        const int d = base_.dim(k);
        out.part(k).block(i * d, j * d, d, d) = grid[i][j].part(k);
      }
    }
  return out;
}

AElement Amplification::embed_at(const AElement& x, int slot,
                                 bool diag_identity) const {
  require_same_pair(x.pair(), base_, "embedded element");
  if (slot < 0 || slot >= n_) fail(errc::out_of_range, "slot out of range");
  AElement out =
      diag_identity ? AElement::identity(total_) : AElement::zeros(total_);
  for (int k = 0; k < base_.block_count(); ++k) {
    const int d = base_.dim(k);
    out.part(k).block(slot * d, slot * d, d, d) = x.part(k);
  }
  return out;
}

std::vector<std::vector<AElement>> Amplification::extract(
    const AElement& x) const {
  require_same_pair(x.pair(), total_, "extracted element");
  std::vector<std::vector<AElement>> grid;
  for (int i = 0; i < n_; ++i) {
    std::vector<AElement> row;
    for (int j = 0; j < n_; ++j) {
      std::vector<CMatrix> parts;
      for (int k = 0; k < base_.block_count(); ++k) {
        const int d = base_.dim(k);
        parts.push_back(x.part(k).block(i * d, j * d, d, d));
      }
      row.emplace_back(base_, std::move(parts));
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

namespace {

TracialPair deamplified_pair(const TracialPair& total, int n) {
  std::vector<int> dims;
  for (int k = 0; k < total.block_count(); ++k) {
    if (total.dim(k) % n != 0)
      fail(errc::shape_mismatch,
           "block dimension is not a multiple of the amplification level");
    dims.push_back(total.dim(k) / n);
  }
  std::map<int, double> w;
  for (int k : total.mask()) w[k] = total.weight(k);
  return TracialPair(std::move(dims), total.mask(), std::move(w));
}

}  // namespace

JElement mat_trace(const JElement& x, int n) {
  if (n < 1) fail(errc::invalid_argument, "amplification level must be >= 1");
  if (n == 1) return x;
  const TracialPair base = deamplified_pair(x.pair(), n);
  std::map<int, CMatrix> parts;
  for (int k : base.mask()) {
    const int d = base.dim(k);
    CMatrix acc = CMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i) acc += x.part(k).block(i * d, i * d, d, d);
    parts[k] = std::move(acc);
  }
  return JElement::from_masked_parts(base, std::move(parts));
}

double entry_sum_j_norm(const JElement& x, int n) {
  const TracialPair base = deamplified_pair(x.pair(), n);
  const Amplification amp(base, n);
  double r = 0.0;
  for (const auto& row : amp.extract(x.as_a()))
    for (const AElement& entry : row) r += j_norm(JElement::from_a(entry, 1e-8));
  return r;
}

}  // namespace fkdet
