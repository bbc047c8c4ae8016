#include "fkdet/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fkdet {

namespace {

double beta(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
double beta_slope(double t) { return t > 0.0 ? beta(t) / (t * t) : 0.0; }

constexpr double kSeamTol = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kSweepGate = 1e-8;

void check_t(double t) {
  if (t < -kExactTol || t > 1.0 + kExactTol)
    fail(errc::out_of_range, "path parameter outside [0, 1]");
}

double clamp01(double t) { return std::min(1.0, std::max(0.0, t)); }

}  // namespace

double smooth_ramp(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double b = beta(t);
  return b / (b + beta(1.0 - t));
}

double smooth_ramp_slope(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double b0 = beta(t), b1 = beta(1.0 - t);
  const double d = b0 + b1;
  return (beta_slope(t) * b1 + b0 * beta_slope(1.0 - t)) / (d * d);
}

double smooth_ramp_inverse(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (smooth_ramp(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

double bump(double t) { return 4.0 * smooth_ramp(t) * smooth_ramp(1.0 - t); }

double bump_slope(double t) {
  return 4.0 * (smooth_ramp_slope(t) * smooth_ramp(1.0 - t) -
                smooth_ramp(t) * smooth_ramp_slope(1.0 - t));
}

}  // namespace

double ramp_value(Ramp r, double s) {
  switch (r) {
    case Ramp::smooth: return smooth_ramp(s);
    case Ramp::linear: return s;
    case Ramp::bump: return bump(s);
  }
  return 0.0;
}

double ramp_slope(Ramp r, double s) {
  switch (r) {
    case Ramp::smooth: return smooth_ramp_slope(s);
    case Ramp::linear: return 1.0;
    case Ramp::bump: return bump_slope(s);
  }
  return 0.0;
}

class PathNode {
public:
  virtual ~PathNode() = default;
  virtual PathJet jet(double t) const = 0;
  virtual void collect_knots(std::vector<double>& out) const = 0;
};

namespace {

using NodePtr = std::shared_ptr<const PathNode>;

class SegmentsNode final : public PathNode {
public:
  explicit SegmentsNode(std::vector<Segment> segments)
      : segments_(std::move(segments)) {}

  PathJet jet(double t) const override {
    t = clamp01(t);
    size_t i = 0;
    while (i + 1 < segments_.size() && t > segments_[i].t1) ++i;
    const Segment& seg = segments_[i];
    const double len = seg.t1 - seg.t0;
    const double s = clamp01((t - seg.t0) / len);
    const AElement v = seg.base * exp_a(ramp_value(seg.ramp, s) * seg.gen);
    const Complex factor(ramp_slope(seg.ramp, s) / len, 0.0);
    return {v, factor * (v * seg.gen)};
  }

  void collect_knots(std::vector<double>& out) const override {
    for (const Segment& seg : segments_) out.push_back(seg.t0);
    out.push_back(segments_.back().t1);
  }

private:
  std::vector<Segment> segments_;
};

class ConstantNode final : public PathNode {
public:
  explicit ConstantNode(const TracialPair& pair)
      : id_(AElement::identity(pair)), zero_(AElement::zeros(pair)) {}

  PathJet jet(double) const override { return {id_, zero_}; }
  void collect_knots(std::vector<double>&) const override {}

private:
  AElement id_;
  AElement zero_;
};

class IdemLoopNode final : public PathNode {
public:
  explicit IdemLoopNode(AElement e)
      : e_(std::move(e)), id_(AElement::identity(e_.pair())) {}

  PathJet jet(double t) const override {
    const Complex z = std::exp(2.0 * M_PI * kImag * t);
    AElement v = id_;
    v += (z - 1.0) * e_;
    return {v, (2.0 * M_PI * kImag * z) * e_};
  }

  void collect_knots(std::vector<double>&) const override {}

private:
  AElement e_;
  AElement id_;
};

class ProductNode final : public PathNode {
public:
  ProductNode(NodePtr lhs, NodePtr rhs)
      : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  PathJet jet(double t) const override {
    const PathJet l = lhs_->jet(t);
    const PathJet r = rhs_->jet(t);
    return {l.v * r.v, l.d * r.v + l.v * r.d};
  }

  void collect_knots(std::vector<double>& out) const override {
    lhs_->collect_knots(out);
    rhs_->collect_knots(out);
  }

private:
  NodePtr lhs_, rhs_;
};

class InverseNode final : public PathNode {
public:
  explicit InverseNode(NodePtr child) : child_(std::move(child)) {}

  PathJet jet(double t) const override {
    const PathJet c = child_->jet(t);
    const AElement vi = c.v.inverse();
    return {vi, Complex(-1.0) * (vi * c.d * vi)};
  }

  void collect_knots(std::vector<double>& out) const override {
    child_->collect_knots(out);
  }

private:
  NodePtr child_;
};

class ConstConjNode final : public PathNode {
public:
  ConstConjNode(AElement c, NodePtr child)
      : c_(std::move(c)), cinv_(c_.inverse()), child_(std::move(child)) {}

  PathJet jet(double t) const override {
    const PathJet x = child_->jet(t);
    return {c_ * x.v * cinv_, c_ * x.d * cinv_};
  }

  void collect_knots(std::vector<double>& out) const override {
    child_->collect_knots(out);
  }

private:
  AElement c_, cinv_;
  NodePtr child_;
};

// t -> child(smooth_ramp(clamp(a t + b, 0, 1))); flat wherever the affine
// part leaves [0, 1].
class ReparamNode final : public PathNode {
public:
  ReparamNode(NodePtr child, double a, double b)
      : child_(std::move(child)), a_(a), b_(b) {}

  PathJet jet(double t) const override {
    const double u = a_ * t + b_;
    const double uc = clamp01(u);
    const PathJet c = child_->jet(smooth_ramp(uc));
    const double slope =
        (u <= 0.0 || u >= 1.0) ? 0.0 : a_ * smooth_ramp_slope(uc);
    return {c.v, Complex(slope) * c.d};
  }

  void collect_knots(std::vector<double>& out) const override {
    for (double corner : {-b_ / a_, (1.0 - b_) / a_})
      if (corner > kExactTol && corner < 1.0 - kExactTol) out.push_back(corner);
    std::vector<double> inner;
    child_->collect_knots(inner);
    for (double kappa : inner) {
      if (kappa <= kExactTol || kappa >= 1.0 - kExactTol) continue;
      const double t = (smooth_ramp_inverse(kappa) - b_) / a_;
      if (t > kExactTol && t < 1.0 - kExactTol) out.push_back(t);
    }
  }

private:
  NodePtr child_;
  double a_, b_;
};

class EmbedNode final : public PathNode {
public:
  EmbedNode(Amplification amp, int slot, NodePtr child)
      : amp_(std::move(amp)), slot_(slot), child_(std::move(child)) {}

  PathJet jet(double t) const override {
    const PathJet c = child_->jet(t);
    return {amp_.embed_at(c.v, slot_, true), amp_.embed_at(c.d, slot_, false)};
  }

  void collect_knots(std::vector<double>& out) const override {
    child_->collect_knots(out);
  }

private:
  Amplification amp_;
  int slot_;
  NodePtr child_;
};

void snap_off_mask(AElement& x, bool to_identity, double tol,
                   const char* what) {
  for (int k = 0; k < x.block_count(); ++k) {
    if (x.pair().finite(k)) continue;
    const CMatrix target =
        to_identity ? CMatrix(CMatrix::Identity(x.pair().dim(k), x.pair().dim(k)))
                    : CMatrix(CMatrix::Zero(x.pair().dim(k), x.pair().dim(k)));
    if ((x.part(k) - target).norm() > tol)
      fail(errc::support_violation, what);
    x.part(k) = target;
  }
}

}  // namespace

SmoothPath::SmoothPath(std::shared_ptr<const PathNode> node, TracialPair pair,
                       Support support, int level)
    : node_(std::move(node)),
      pair_(std::move(pair)),
      support_(support),
      level_(level) {}

AElement SmoothPath::value(double t) const {
  check_t(t);
  return node_->jet(t).v;
}

AElement SmoothPath::derivative(double t) const {
  check_t(t);
  return node_->jet(t).d;
}

PathJet SmoothPath::jet(double t) const {
  check_t(t);
  return node_->jet(t);
}

std::vector<double> SmoothPath::knots() const {
  std::vector<double> out{0.0, 1.0};
  node_->collect_knots(out);
  for (double& t : out) t = clamp01(t);
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double t : out)
    if (uniq.empty() || t - uniq.back() > kExactTol) uniq.push_back(t);
  return uniq;
}

SmoothPath SmoothPath::constant(const TracialPair& pair, Support support,
                                int level) {
  return SmoothPath(std::make_shared<ConstantNode>(pair), pair, support,
                    level);
}

SmoothPath SmoothPath::from_segments(std::vector<Segment> segments,
                                     Support support, int level) {
  if (segments.empty())
    fail(errc::invalid_argument, "a path needs at least one segment");
  const TracialPair pair = segments.front().base.pair();
  if (std::abs(segments.front().t0) > kExactTol ||
      std::abs(segments.back().t1 - 1.0) > kExactTol)
    fail(errc::invalid_argument, "segments must tile [0, 1]");
  segments.front().t0 = 0.0;
  segments.back().t1 = 1.0;
  for (size_t i = 0; i < segments.size(); ++i) {
    Segment& seg = segments[i];
    require_same_pair(seg.base.pair(), pair, "segment base");
    require_same_pair(seg.gen.pair(), pair, "segment generator");
    if (!(seg.t1 - seg.t0 > kExactTol))
      fail(errc::invalid_argument, "segments must have positive length");
    if (i > 0) {
      if (std::abs(seg.t0 - segments[i - 1].t1) > kExactTol)
        fail(errc::invalid_argument, "segments must tile [0, 1] contiguously");
      seg.t0 = segments[i - 1].t1;
    }
    if (support == Support::j_restricted) {
      snap_off_mask(seg.base, true, kSeamTol,
                    "J-restricted segment base is not 1 + ideal");
      snap_off_mask(seg.gen, false, kSeamTol,
                    "J-restricted segment generator is not in the ideal");
    }
  }
  const AElement id = AElement::identity(pair);
  AElement first = segments.front().base;
  double start_dev = 0.0;
  for (int k = 0; k < first.block_count(); ++k)
    start_dev = std::max(start_dev, (first.part(k) - id.part(k)).norm());
  if (start_dev > kExactTol)
    fail(errc::invalid_argument, "paths must start at the identity");
  segments.front().base = id;

  for (size_t i = 0; i + 1 < segments.size(); ++i) {
    const Segment& seg = segments[i];
    const AElement end =
        seg.base * exp_a(ramp_value(seg.ramp, 1.0) * seg.gen);
    const AElement& next = segments[i + 1].base;
    for (int k = 0; k < end.block_count(); ++k) {
      const double dev = (end.part(k) - next.part(k)).norm();
      if (dev > kSeamTol * (1.0 + end.part(k).norm()))
        fail(errc::invalid_argument, "segment seam is discontinuous");
    }
  }

  SmoothPath path(std::make_shared<SegmentsNode>(std::move(segments)), pair,
                  support, level);
  if (min_singular_on_sweep(path) <= kSweepGate)
    fail(errc::singular, "path value fails the invertibility sweep");
  return path;
}

SmoothPath SmoothPath::exp_segment(const AElement& gen, Support support,
                                   Ramp ramp, int level) {
  return from_segments(
      {Segment{0.0, 1.0, AElement::identity(gen.pair()), gen, ramp}}, support,
      level);
}

namespace {

void require_composable(const SmoothPath& a, const SmoothPath& b,
                        const char* what) {
  require_same_pair(a.pair(), b.pair(), what);
  if (a.level() != b.level())
    fail(errc::pair_mismatch,
         std::string(what) + " at different amplification levels");
}

}  // namespace

SmoothPath pw_product(const SmoothPath& a, const SmoothPath& b) {
  require_composable(a, b, "pointwise product");
  const Support s = (a.support() == Support::j_restricted &&
                     b.support() == Support::j_restricted)
                        ? Support::j_restricted
                        : Support::a_unrestricted;
  return SmoothPath(std::make_shared<ProductNode>(a.node_, b.node_), a.pair_,
                    s, a.level_);
}

SmoothPath pw_inverse(const SmoothPath& a) {
  return SmoothPath(std::make_shared<InverseNode>(a.node_), a.pair_,
                    a.support_, a.level_);
}

SmoothPath conjugate_by(const AElement& c, const SmoothPath& inner) {
  require_same_pair(c.pair(), inner.pair(), "constant conjugation");
  for (int k = 0; k < c.block_count(); ++k)
    require_invertible(c.part(k), kInvertGate, "conjugator block");
  return SmoothPath(std::make_shared<ConstConjNode>(c, inner.node_),
                    inner.pair_, inner.support_, inner.level_);
}

SmoothPath pw_conjugate(const SmoothPath& conjugator,
                        const SmoothPath& inner) {
  require_composable(conjugator, inner, "pointwise conjugation");
  auto node = std::make_shared<ProductNode>(
      std::make_shared<ProductNode>(conjugator.node_, inner.node_),
      std::make_shared<InverseNode>(conjugator.node_));
  return SmoothPath(std::move(node), inner.pair_, inner.support_,
                    inner.level_);
}

SmoothPath pw_commutator(const SmoothPath& alpha, const SmoothPath& beta) {
  require_composable(alpha, beta, "pointwise commutator");
  auto node = std::make_shared<ProductNode>(
      std::make_shared<ProductNode>(alpha.node_, beta.node_),
      std::make_shared<ProductNode>(std::make_shared<InverseNode>(alpha.node_),
                                    std::make_shared<InverseNode>(beta.node_)));
  const Support s = (alpha.support() == Support::j_restricted ||
                     beta.support() == Support::j_restricted)
                        ? Support::j_restricted
                        : Support::a_unrestricted;
  return SmoothPath(std::move(node), alpha.pair_, s, alpha.level_);
}

SmoothPath concat_smooth(const SmoothPath& sigma0, const SmoothPath& sigma1) {
  require_composable(sigma0, sigma1, "concatenation");
  if (sigma0.support() != sigma1.support())
    fail(errc::pair_mismatch, "concatenation of paths with different support");
  auto node = std::make_shared<ProductNode>(
      std::make_shared<ReparamNode>(sigma0.node_, 2.0, -1.0),
      std::make_shared<ReparamNode>(sigma1.node_, 2.0, 0.0));
  return SmoothPath(std::move(node), sigma0.pair_, sigma0.support_,
                    sigma0.level_);
}

SmoothPath idempotent_loop(const AElement& e, int level) {
  double dev = 0.0;
  for (int k = 0; k < e.block_count(); ++k)
    dev = std::max(dev, (e.part(k) * e.part(k) - e.part(k)).norm());
  if (dev > 1e-10)
    fail(errc::not_idempotent, "idempotent loop needs e^2 = e");
  const Support s = e.is_j_supported(1e-10) ? Support::j_restricted
                                            : Support::a_unrestricted;
  return SmoothPath(std::make_shared<IdemLoopNode>(e), e.pair(), s, level);
}

SmoothPath embed_path(const Amplification& amp, const SmoothPath& s,
                      int slot) {
  require_same_pair(amp.base(), s.pair(), "embedded path");
  return SmoothPath(std::make_shared<EmbedNode>(amp, slot, s.node_),
                    amp.total(), s.support_, s.level_ * amp.n());
}

SmoothPath as_j_restricted(const SmoothPath& s, double tol) {
  if (s.support() == Support::j_restricted) return s;
  for (int i = 0; i <= 16; ++i) {
    const PathJet jet = s.jet(i / 16.0);
    for (int k = 0; k < jet.v.block_count(); ++k) {
      if (s.pair().finite(k)) continue;
      const int d = s.pair().dim(k);
      if ((jet.v.part(k) - CMatrix::Identity(d, d)).norm() > tol ||
          jet.d.part(k).norm() > tol)
        fail(errc::support_violation,
             "path is not the identity off the finite mask");
    }
  }
  return SmoothPath(s.node_, s.pair_, Support::j_restricted, s.level_);
}

double min_singular_on_sweep(const SmoothPath& s, int points) {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const AElement v = s.value(i / (points - 1.0));
    for (int k = 0; k < v.block_count(); ++k)
      lo = std::min(lo, singular_bounds(v.part(k)).smallest);
  }
  return lo;
}

Homotopy::Homotopy(Kind kind, TracialPair pair, int level, SmoothPath end0,
                   SmoothPath end1)
    : kind_(kind),
      pair_(std::move(pair)),
      level_(level),
      end0_(std::move(end0)),
      end1_(std::move(end1)) {}

Homotopy Homotopy::conjugation(const SmoothPath& conjugator,
                               const SmoothPath& inner) {
  require_composable(conjugator, inner, "conjugation homotopy");
  if (inner.support() != Support::j_restricted)
    fail(errc::support_violation,
         "conjugation homotopy needs a J-restricted inner path");
  Homotopy h(Kind::conjugation, inner.pair(), inner.level(),
             conjugate_by(conjugator.value(1.0), inner),
             pw_conjugate(conjugator, inner));
  h.paths_ = {conjugator, inner};
  return h;
}

Homotopy Homotopy::reparametrization(const SmoothPath& sigma) {
  if (sigma.support() != Support::j_restricted)
    fail(errc::support_violation,
         "reparametrization homotopy needs a J-restricted path");
  SmoothPath end1(std::make_shared<ReparamNode>(sigma.node_, 1.0, 0.0),
                  sigma.pair_, sigma.support_, sigma.level_);
  Homotopy h(Kind::reparametrization, sigma.pair(), sigma.level(), sigma,
             std::move(end1));
  h.paths_ = {sigma};
  return h;
}

Homotopy Homotopy::segment_perturbation(const SmoothPath& sigma,
                                        const JElement& gen) {
  require_same_pair(sigma.pair(), gen.pair(), "segment perturbation");
  if (sigma.support() != Support::j_restricted)
    fail(errc::support_violation,
         "segment perturbation needs a J-restricted path");
  SmoothPath bump_path = SmoothPath::from_segments(
      {Segment{0.0, 1.0, AElement::identity(gen.pair()), gen.as_a(),
               Ramp::bump}},
      Support::j_restricted, sigma.level());
  Homotopy h(Kind::segment_perturbation, sigma.pair(), sigma.level(), sigma,
             pw_product(sigma, bump_path));
  h.paths_ = {sigma};
  h.gen_ = std::make_shared<AElement>(gen.as_a());
  return h;
}

Homotopy::Jet Homotopy::jet(double s, double t) const {
  check_t(s);
  check_t(t);
  switch (kind_) {
    case Kind::conjugation: {
      const double f = t * s + 1.0 - s;
      const PathJet cj = paths_[0].jet(f);
      const PathJet ij = paths_[1].jet(t);
      const AElement ci = cj.v.inverse();
      const AElement v = cj.v * ij.v * ci;
      // d/df of c x c^{-1} contributes through both factors.
      const AElement w = (cj.d * ij.v - v * cj.d) * ci;
      return {v, Complex(s) * w + cj.v * ij.d * ci, Complex(t - 1.0) * w};
    }
    case Kind::reparametrization: {
      const double w = t + s * (smooth_ramp(t) - t);
      const PathJet j = paths_[0].jet(w);
      return {j.v, Complex(1.0 + s * (smooth_ramp_slope(t) - 1.0)) * j.d,
              Complex(smooth_ramp(t) - t) * j.d};
    }
    case Kind::segment_perturbation: {
      const PathJet j = paths_[0].jet(t);
      const AElement e = exp_a(Complex(s * bump(t)) * (*gen_));
      const AElement ve = j.v * e;
      const AElement vey = ve * (*gen_);
      return {ve, j.d * e + Complex(s * bump_slope(t)) * vey,
              Complex(bump(t)) * vey};
    }
  }
  fail(errc::invalid_argument, "unknown homotopy kind");
}

std::vector<double> Homotopy::t_knots() const {
  std::vector<double> out = end0_.knots();
  for (double t : end1_.knots()) out.push_back(t);
  std::sort(out.begin(), out.end());
  std::vector<double> uniq;
  for (double t : out)
    if (uniq.empty() || t - uniq.back() > kExactTol) uniq.push_back(t);
  return uniq;
}

}  // namespace fkdet
