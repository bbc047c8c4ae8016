#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "fkdet/errors.hpp"

namespace fkdet {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline const Complex kImag{0.0, 1.0};

// Gate used everywhere an element must be invertible: smallest singular
// value at least kInvertGate times the largest.
inline constexpr double kInvertGate = 1e-10;

struct HermEig {
  RVector evals;  // ascending
  CMatrix u;      // unitary, m = u * diag(evals) * u^*
};

struct PolarForm {
  CMatrix u;  // unitary factor
  CMatrix p;  // positive factor, g = u * p
};

struct SingularBounds {
  double smallest;
  double largest;
};

// Rejects non-square shapes, empty matrices and non-finite entries.
void validate_cmatrix(const CMatrix& m, const char* what = "matrix");

double op_norm(const CMatrix& m);

SingularBounds singular_bounds(const CMatrix& m);

// Throws Singular when smallest/largest singular value < gate.
void require_invertible(const CMatrix& m, double gate = kInvertGate,
                        const char* what = "matrix");

CMatrix inverse(const CMatrix& g);

HermEig herm_eig(const CMatrix& m);

// u * diag(f(evals)) * u^*. If f maps the whole spectrum to the real axis
// the result is symmetrized, so Hermitian input and real f give Hermitian
// output. Non-finite f values raise DomainError.
CMatrix func_herm(const CMatrix& m, const std::function<Complex(double)>& f);

CMatrix mat_exp(const CMatrix& x);

PolarForm polar(const CMatrix& g);

// Hermitian x with mat_exp(i*x) = u and spectrum in (-pi, pi]. The branch
// at the cut is deterministic: an eigenvalue at -1 gets phase +pi.
CMatrix unitary_log(const CMatrix& u);

// |x| = (x^* x)^{1/2} with eigenvalues clamped at zero, so it is total on
// singular inputs (needed by the trace norm).
CMatrix operator_abs(const CMatrix& x);

}  // namespace fkdet
