#include "fkdet/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fkdet {

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_hermitian: return "NotHermitian";
    case errc::no_convergence: return "NoConvergence";
    case errc::domain_error: return "DomainError";
    case errc::singular: return "Singular";
    case errc::not_unitary: return "NotUnitary";
    case errc::pair_mismatch: return "PairMismatch";
    case errc::out_of_range: return "OutOfRange";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::not_idempotent: return "NotIdempotent";
    case errc::support_violation: return "SupportViolation";
    case errc::not_a_loop: return "NotALoop";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::parse_error: return "ParseError";
    case errc::usage_error: return "UsageError";
  }
  return "Unknown";
}

void validate_cmatrix(const CMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols())
    fail(errc::shape_mismatch,
         std::string(what) + " must be square with dimension >= 1");
  if (!m.allFinite())
    fail(errc::invalid_argument, std::string(what) + " has non-finite entries");
}

double op_norm(const CMatrix& m) {
  validate_cmatrix(m, "op_norm input");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m,
                                            Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(errc::no_convergence, "eigensolver failed in op_norm");
  const double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

SingularBounds singular_bounds(const CMatrix& m) {
  validate_cmatrix(m, "singular_bounds input");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m,
                                            Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(errc::no_convergence, "eigensolver failed in singular_bounds");
  const auto& ev = es.eigenvalues();
  return {std::sqrt(std::max(0.0, ev.minCoeff())),
          std::sqrt(std::max(0.0, ev.maxCoeff()))};
}

void require_invertible(const CMatrix& m, double gate, const char* what) {
  const SingularBounds sb = singular_bounds(m);
  if (sb.smallest < gate * sb.largest || sb.largest == 0.0)
    fail(errc::singular, std::string(what) + " fails the invertibility gate");
}

CMatrix inverse(const CMatrix& g) {
  validate_cmatrix(g, "inverse input");
  return Eigen::PartialPivLU<CMatrix>(g).inverse();
}

HermEig herm_eig(const CMatrix& m) {
  validate_cmatrix(m, "herm_eig input");
  const double dev = (m - m.adjoint()).norm();
  if (dev > 1e-12 * (1.0 + m.norm()))
    fail(errc::not_hermitian, "herm_eig input is not Hermitian");
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success)
    fail(errc::no_convergence, "Hermitian eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix func_herm(const CMatrix& m, const std::function<Complex(double)>& f) {
  const HermEig he = herm_eig(m);
  const Eigen::Index n = m.rows();
  Eigen::VectorXcd fe(n);
  bool real_valued = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex v = f(he.evals(i));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(errc::domain_error, "eigenvalue outside the domain of f");
    if (v.imag() != 0.0) real_valued = false;
    fe(i) = v;
  }
  CMatrix r = he.u * fe.asDiagonal() * he.u.adjoint();
  if (real_valued) r = 0.5 * (r + r.adjoint().eval());
  return r;
}

namespace {

// Truncated series on the scaled matrix; ||y|| <= 1/2 bounds the remainder
// of order 16 well below 1e-15 relative.
CMatrix exp_series(const CMatrix& y) {
  constexpr int order = 16;
  const CMatrix id = CMatrix::Identity(y.rows(), y.cols());
  CMatrix acc = id;
  for (int k = order; k >= 1; --k) acc = id + (y * acc) / static_cast<double>(k);
  return acc;
}

}  // namespace

CMatrix mat_exp(const CMatrix& x) {
  validate_cmatrix(x, "mat_exp input");
  const double scale = x.norm();  // Frobenius bounds the operator norm
  int squarings = 0;
  if (scale > 0.5) squarings = static_cast<int>(std::ceil(std::log2(scale / 0.5)));
  CMatrix r = exp_series(x / std::pow(2.0, squarings));
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

PolarForm polar(const CMatrix& g) {
  validate_cmatrix(g, "polar input");
  const HermEig he = herm_eig(g.adjoint() * g);
  const Eigen::Index n = g.rows();
  const double top = std::sqrt(std::max(0.0, he.evals(n - 1)));
  const double bottom = std::sqrt(std::max(0.0, he.evals(0)));
  if (top == 0.0 || bottom < kInvertGate * top)
    fail(errc::singular, "polar input fails the invertibility gate");
  Eigen::VectorXd s(n), sinv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i) = std::sqrt(he.evals(i));
    sinv(i) = 1.0 / s(i);
  }
  CMatrix p = he.u * s.asDiagonal() * he.u.adjoint();
  p = 0.5 * (p + p.adjoint().eval());
  CMatrix u = g * (he.u * sinv.asDiagonal() * he.u.adjoint());
  // One Newton step brings u*u - 1 from O(cond * eps) down to roundoff.
  u = 0.5 * u * (3.0 * CMatrix::Identity(n, n) - u.adjoint() * u);
  return {u, p};
}

CMatrix unitary_log(const CMatrix& u) {
  validate_cmatrix(u, "unitary_log input");
  const Eigen::Index n = u.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  if ((u.adjoint() * u - id).norm() > 1e-10)
    fail(errc::not_unitary, "unitary_log input is not unitary");

  // h and k commute for unitary u; diagonalize h, then refine each
  // near-degenerate h-eigenspace with the compression of k.
  const CMatrix h = 0.5 * (u + u.adjoint());
  const CMatrix k = (u - u.adjoint()) / (2.0 * kImag);
  const HermEig eh = herm_eig(h);

  CMatrix basis = eh.u;
  const double cluster_gap = 1e-8 * (1.0 + std::abs(eh.evals(n - 1)));
  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo + 1;
    while (hi < n && eh.evals(hi) - eh.evals(hi - 1) <= cluster_gap) ++hi;
    if (hi - lo > 1) {
      const CMatrix v = basis.middleCols(lo, hi - lo);
      const CMatrix kc = 0.5 * ((v.adjoint() * k * v).eval() +
                                (v.adjoint() * k * v).adjoint().eval());
      Eigen::SelfAdjointEigenSolver<CMatrix> es(kc);
      if (es.info() != Eigen::Success)
        fail(errc::no_convergence, "cluster refinement did not converge");
      basis.middleCols(lo, hi - lo) = v * es.eigenvectors();
    }
    lo = hi;
  }

  CMatrix x = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXcd v = basis.col(i);
    const double eta = (v.adjoint() * h * v)(0).real();
    const double kappa = (v.adjoint() * k * v)(0).real();
    double phase = std::atan2(kappa, eta);
    if (phase <= -M_PI + 1e-12) phase = M_PI;  // branch: -1 maps to +pi
    x += phase * (v * v.adjoint());
  }
  return 0.5 * (x + x.adjoint().eval());
}

CMatrix operator_abs(const CMatrix& x) {
  validate_cmatrix(x, "operator_abs input");
  return func_herm(x.adjoint() * x, [](double t) {
    return Complex(std::sqrt(std::max(0.0, t)), 0.0);
  });
}

}  // namespace fkdet
