#pragma once

#include <memory>
#include <vector>

#include "fkdet/algebra.hpp"

namespace fkdet {

enum class Support { j_restricted, a_unrestricted };

// Time profile of one exponential segment. The smooth ramp is flat of
// infinite order at both ends, so multi-segment paths are C-infinity at the
// seams; the linear profile is reserved for loops parametrized by a full
// turn of the circle; the bump vanishes at both ends.
enum class Ramp { smooth, linear, bump };

double smooth_ramp(double t);
double smooth_ramp_slope(double t);
double smooth_ramp_inverse(double y);
double ramp_value(Ramp r, double s);
double ramp_slope(Ramp r, double s);

// On [t0, t1] the path is t -> base * exp(ramp((t - t0)/(t1 - t0)) * gen).
struct Segment {
  double t0;
  double t1;
  AElement base;
  AElement gen;
  Ramp ramp = Ramp::smooth;
};

struct PathJet {
  AElement v;
  AElement d;
};

class PathNode;

// Piecewise-exponential path in the invertibles, closed under pointwise
// product, inverse, conjugation, smooth reparametrization and block
// embedding. Values start at the identity; J-restricted paths stay in
// 1 + ideal. Immutable; evaluation is pure.
class SmoothPath {
public:
  const TracialPair& pair() const { return pair_; }
  Support support() const { return support_; }
  int level() const { return level_; }

  AElement value(double t) const;
  AElement derivative(double t) const;
  PathJet jet(double t) const;
  AElement endpoint() const { return value(1.0); }

  // Sorted breakpoints of analyticity including 0 and 1; quadrature splits
  // at these.
  std::vector<double> knots() const;

  static SmoothPath constant(const TracialPair& pair,
                             Support support = Support::j_restricted,
                             int level = 1);
  static SmoothPath from_segments(std::vector<Segment> segments,
                                  Support support, int level = 1);
  // Single segment from the identity to exp(gen).
  static SmoothPath exp_segment(const AElement& gen, Support support,
                                Ramp ramp = Ramp::smooth, int level = 1);

  friend SmoothPath pw_product(const SmoothPath& a, const SmoothPath& b);
  friend SmoothPath pw_inverse(const SmoothPath& a);
  friend SmoothPath conjugate_by(const AElement& c, const SmoothPath& inner);
  friend SmoothPath pw_conjugate(const SmoothPath& conjugator,
                                 const SmoothPath& inner);
  friend SmoothPath pw_commutator(const SmoothPath& alpha,
                                  const SmoothPath& beta);
  friend SmoothPath concat_smooth(const SmoothPath& sigma0,
                                  const SmoothPath& sigma1);
  friend SmoothPath idempotent_loop(const AElement& e, int level);
  friend SmoothPath embed_path(const Amplification& amp, const SmoothPath& s,
                               int slot);
  friend SmoothPath as_j_restricted(const SmoothPath& s, double tol);
  friend class Homotopy;

private:
  SmoothPath(std::shared_ptr<const PathNode> node, TracialPair pair,
             Support support, int level);

  std::shared_ptr<const PathNode> node_;
  TracialPair pair_;
  Support support_;
  int level_;
};

SmoothPath pw_product(const SmoothPath& a, const SmoothPath& b);
SmoothPath pw_inverse(const SmoothPath& a);
SmoothPath conjugate_by(const AElement& c, const SmoothPath& inner);
// conjugator * inner * conjugator^{-1}; J-restricted whenever inner is.
SmoothPath pw_conjugate(const SmoothPath& conjugator, const SmoothPath& inner);
// alpha * beta * alpha^{-1} * beta^{-1}; J-restricted when either factor is.
SmoothPath pw_commutator(const SmoothPath& alpha, const SmoothPath& beta);
// Runs sigma1 on [0, 1/2] and sigma0 shifted by sigma1(1) on [1/2, 1], glued
// through ramp reparametrizations; endpoint sigma0(1) * sigma1(1).
SmoothPath concat_smooth(const SmoothPath& sigma0, const SmoothPath& sigma1);
// t -> exp(2 pi i t) e + 1 - e with its exact derivative 2 pi i exp(2 pi i t) e.
SmoothPath idempotent_loop(const AElement& e, int level = 1);
SmoothPath embed_path(const Amplification& amp, const SmoothPath& s, int slot);
// Verifies by sampling that every value is the identity off the mask, then
// re-flags the path as J-restricted.
SmoothPath as_j_restricted(const SmoothPath& s, double tol = 1e-8);

// Smallest singular value of sigma(t) over a uniform sweep.
double min_singular_on_sweep(const SmoothPath& s, int points = 64);

// Two-parameter families with analytic partials in both variables, closed
// over three kinds: conjugation H(s,t) = c(ts+1-s) inner(t) c(ts+1-s)^{-1},
// reparametrization H(s,t) = sigma(t + s(rho(t)-t)), and segment
// perturbation H(s,t) = sigma(t) exp(s mu(t) Y). Endpoints are fixed in s.
class Homotopy {
public:
  enum class Kind { conjugation, reparametrization, segment_perturbation };

  struct Jet {
    AElement v;
    AElement dt;
    AElement ds;
  };

  Kind kind() const { return kind_; }
  const TracialPair& pair() const { return pair_; }
  int level() const { return level_; }
  const SmoothPath& end0() const { return end0_; }  // H(0, .)
  const SmoothPath& end1() const { return end1_; }  // H(1, .)

  AElement value(double s, double t) const { return jet(s, t).v; }
  Jet jet(double s, double t) const;

  // Union of t-knots of the two ends; the s-direction is analytic.
  std::vector<double> t_knots() const;

  static Homotopy conjugation(const SmoothPath& conjugator,
                              const SmoothPath& inner);
  static Homotopy reparametrization(const SmoothPath& sigma);
  static Homotopy segment_perturbation(const SmoothPath& sigma,
                                       const JElement& gen);

private:
  Homotopy(Kind kind, TracialPair pair, int level, SmoothPath end0,
           SmoothPath end1);

  Kind kind_;
  TracialPair pair_;
  int level_;
  SmoothPath end0_;
  SmoothPath end1_;
  // conjugation: paths_[0] = conjugator, paths_[1] = inner;
  // reparametrization / segment perturbation: paths_[0] = sigma.
  std::vector<SmoothPath> paths_;
  std::shared_ptr<const AElement> gen_;  // segment perturbation only
};

inline Homotopy conjugation_homotopy(const SmoothPath& conjugator,
                                     const SmoothPath& inner) {
  return Homotopy::conjugation(conjugator, inner);
}

}  // namespace fkdet
