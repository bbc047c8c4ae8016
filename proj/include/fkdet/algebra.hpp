#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fkdet/numkernel.hpp"

namespace fkdet {

// Weighted block-matrix model of a trace ideal sitting inside a finite
// direct sum of matrix algebras. Blocks listed in the finite mask carry a
// positive trace weight; blocks outside it model the infinite-trace corner
// and admit no trace-class perturbation.
class TracialPair {
public:
  TracialPair(std::vector<int> blocks, std::vector<int> finite_mask,
              std::map<int, double> weights);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  int dim(int k) const { return blocks_[static_cast<size_t>(k)]; }
  bool finite(int k) const { return finite_[static_cast<size_t>(k)]; }
  double weight(int k) const;
  const std::vector<int>& blocks() const { return blocks_; }
  const std::vector<int>& mask() const { return mask_; }

  TracialPair amplified(int n) const;

  bool operator==(const TracialPair& o) const = default;

private:
  std::vector<int> blocks_;
  std::vector<bool> finite_;
  std::vector<double> weights_;  // zero on non-finite blocks
  std::vector<int> mask_;        // sorted finite indices
};

void require_same_pair(const TracialPair& a, const TracialPair& b,
                       const char* what);

// Block-diagonal operator over a tracial pair; the ambient algebra.
class AElement {
public:
  AElement(TracialPair pair, std::vector<CMatrix> parts);

  static AElement zeros(const TracialPair& pair);
  static AElement identity(const TracialPair& pair);

  const TracialPair& pair() const { return pair_; }
  int block_count() const { return pair_.block_count(); }
  const CMatrix& part(int k) const { return parts_[static_cast<size_t>(k)]; }
  CMatrix& part(int k) { return parts_[static_cast<size_t>(k)]; }

  AElement adjoint() const;
  AElement inverse() const;  // blockwise LU, no gate

  AElement& operator+=(const AElement& o);
  AElement& operator-=(const AElement& o);
  friend AElement operator+(AElement a, const AElement& b) { return a += b; }
  friend AElement operator-(AElement a, const AElement& b) { return a -= b; }
  friend AElement operator*(const AElement& a, const AElement& b);
  friend AElement operator*(const Complex& c, AElement a);

  bool is_j_supported(double tol = 0.0) const;

private:
  TracialPair pair_;
  std::vector<CMatrix> parts_;
};

double a_norm(const AElement& x);

// Blockwise matrix exponential.
AElement exp_a(const AElement& x);

// Element of the trace ideal: blocks off the finite mask are exactly zero.
class JElement {
public:
  static JElement zeros(const TracialPair& pair);
  // Off-mask blocks must be below snap_tol in operator norm; they are then
  // zeroed exactly. Throws SupportViolation otherwise.
  static JElement from_a(const AElement& a, double snap_tol = 1e-8);
  // Only the masked parts are given; everything else is zero.
  static JElement from_masked_parts(const TracialPair& pair,
                                    std::map<int, CMatrix> parts);

  const AElement& as_a() const { return a_; }
  const TracialPair& pair() const { return a_.pair(); }
  const CMatrix& part(int k) const { return a_.part(k); }

  JElement adjoint() const;
  JElement& operator+=(const JElement& o);
  JElement& operator-=(const JElement& o);
  friend JElement operator+(JElement a, const JElement& b) { return a += b; }
  friend JElement operator-(JElement a, const JElement& b) { return a -= b; }
  friend JElement operator*(const Complex& c, const JElement& j);
  // Ideal property: products with ambient elements stay in the ideal.
  friend JElement operator*(const JElement& j, const AElement& a);
  friend JElement operator*(const AElement& a, const JElement& j);
  friend JElement operator*(const JElement& a, const JElement& b);

private:
  explicit JElement(AElement a) : a_(std::move(a)) {}
  AElement a_;
};

// Hyper-trace: weighted sum of the matrix traces of the masked blocks.
Complex tau(const JElement& x);

// Trace-ideal norm: operator norm plus tau(|x|).
double j_norm(const JElement& x);

// Invertible perturbation of the identity by an ideal element, g = 1 + j.
class GPairElement {
public:
  explicit GPairElement(const JElement& j);
  static GPairElement from_a(const AElement& g, double snap_tol = 1e-8);

  const JElement& j() const { return j_; }
  const AElement& g() const { return g_; }
  const TracialPair& pair() const { return j_.pair(); }

  GPairElement inverse() const;
  friend GPairElement operator*(const GPairElement& a, const GPairElement& b);

private:
  JElement j_;
  AElement g_;
};

// Finite sum of elementary tensors j (x) a.
class TensorChain {
public:
  explicit TensorChain(TracialPair pair) : pair_(std::move(pair)) {}

  void add(JElement j, AElement a);
  size_t size() const { return terms_.size(); }
  const std::pair<JElement, AElement>& term(size_t i) const {
    return terms_[i];
  }
  const TracialPair& pair() const { return pair_; }

private:
  TracialPair pair_;
  std::vector<std::pair<JElement, AElement>> terms_;
};

// Hochschild boundary b: sum of j*a - a*j over the terms.
JElement hochschild_b(const TensorChain& c);

// The pair (M_n(J), M_n(A)) realized as a tracial pair with n-fold block
// dimensions, plus the maps between matrices of elements and elements of
// the amplified pair.
class Amplification {
public:
  Amplification(TracialPair base, int n);

  const TracialPair& base() const { return base_; }
  const TracialPair& total() const { return total_; }
  int n() const { return n_; }

  // Assembles an n x n grid of base elements into one amplified element.
  AElement embed(const std::vector<std::vector<AElement>>& grid) const;
  // Base element placed at diagonal slot s; value semantics: identity on
  // the other diagonal slots when diag_identity, zero otherwise.
  AElement embed_at(const AElement& x, int slot, bool diag_identity) const;
  std::vector<std::vector<AElement>> extract(const AElement& x) const;

private:
  TracialPair base_;
  int n_;
  TracialPair total_;
};

inline Amplification amplify(const TracialPair& p, int n) {
  return Amplification(p, n);
}

// Sum of the n diagonal sub-blocks of every block; the generalized trace
// down to the base pair. n = 1 is the identity map.
JElement mat_trace(const JElement& x, int n);

// Entry-sum matrix-algebra norm, kept as a diagnostic alongside j_norm.
double entry_sum_j_norm(const JElement& x, int n);

}  // namespace fkdet
