#include "confmap/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace confmap {
namespace {

constexpr int kMaxRetries = 8;
constexpr double kWidening = 1.25;
constexpr int kSlopeSamples = 256;

double horner(const MonotoneSpline::Piece& c, double s) {
  return c[0] + s * (c[1] + s * (c[2] + s * c[3]));
}

double horner_slope(const MonotoneSpline::Piece& c, double s) {
  return c[1] + s * (2.0 * c[2] + s * 3.0 * c[3]);
}

double piece_min_slope(const MonotoneSpline::Piece& c, double from, double to, bool skip_zero) {
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSlopeSamples; ++i) {
    const double s = from + (to - from) * i / kSlopeSamples;
    if (skip_zero && s == 0.0) continue;
    worst = std::min(worst, horner_slope(c, s));
  }
  if (c[3] != 0.0) {
    const double crit = -c[2] / (3.0 * c[3]);
    if (crit > from && crit < to && !(skip_zero && crit == 0.0)) {
      worst = std::min(worst, horner_slope(c, crit));
    }
  }
  return worst;
}

}  // namespace

AngleFunction angle_function(const RawCorrespondence& c) {
  return {[&c](double t) { return c.value(t); }, [&c](double t) { return c.slope(t); }};
}

SplineKind parse_spline_kind(const std::string& name) {
  if (name == "linear") return SplineKind::Linear;
  if (name == "cubic") return SplineKind::Cubic;
  throw Error(ErrorKind::Config, "corrector",
              "unknown spline kind '" + name + "' (expected linear or cubic)");
}

std::string to_string(SplineKind kind) { return kind == SplineKind::Linear ? "linear" : "cubic"; }

std::optional<FoldInterval> detect_fold(const AngleFunction& theta, double t0,
                                        const FoldOptions& options) {
  if (!(options.slope_floor > 0.0)) {
    throw Error(ErrorKind::Config, "corrector", "slope floor must be positive");
  }
  const double h = kTwoPi / options.grid;
  const int probe = static_cast<int>(std::ceil(options.probe_radius / h));
  const double floor = options.slope_floor;
  auto slow = [&](int i) { return theta.slope(t0 + i * h) < floor; };

  int lo = 1, hi = -1;
  for (int i = -probe; i <= probe; ++i) {
    if (!slow(i)) continue;
    lo = std::min(lo, i);
    hi = std::max(hi, i);
  }
  if (hi < lo) return std::nullopt;
  lo = std::min(lo, -1);
  hi = std::max(hi, 1);

  const int limit = options.grid / 2;
  auto check_width = [&] {
    if (hi - lo > limit) {
      std::ostringstream msg;
      msg << "fold at t0=" << t0 << " is not localizable: interval exceeds half a period";
      throw Error(ErrorKind::Numerical, "corrector", msg.str());
    }
  };
  for (;;) {
    while (slow(lo)) {
      --lo;
      check_width();
    }
    while (slow(hi)) {
      ++hi;
      check_width();
    }
    if (theta.value(t0 + hi * h) > theta.value(t0 + lo * h)) break;
    --lo;
    ++hi;
    check_width();
  }
  return FoldInterval{-lo * h, hi * h};
}

MonotoneSpline MonotoneSpline::from_endpoints(double t0, double eps1, double eps2, double ya,
                                              double sa, double yb, double sb, SplineKind kind) {
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw Error(ErrorKind::Config, "corrector", "spline interval half-widths must be positive");
  }
  if (!(yb > ya)) {
    throw NeedsWidening("no strictly increasing spline: theta(t0+eps2) <= theta(t0-eps1)");
  }
  MonotoneSpline sp;
  sp.t0_ = t0;
  sp.eps1_ = eps1;
  sp.eps2_ = eps2;
  sp.ya_ = ya;
  sp.yb_ = yb;
  sp.kind_ = kind;
  double ts = 0.5 * (ya + yb);

  if (kind == SplineKind::Linear) {
    sp.left_ = {ts, (ts - ya) / eps1, 0.0, 0.0};
    sp.right_ = {ts, (yb - ts) / eps2, 0.0, 0.0};
    return sp;
  }

  if (!(sa > 0.0) || !(sb > 0.0)) {
    std::ostringstream msg;
    msg << "endpoint slope not positive (left " << sa << ", right " << sb << ")";
    throw NeedsWidening(msg.str());
  }
  // Slopes within 3x the secant of each piece: theta* in [lo, hi].
  const double lo = ya + sa * eps1 / 3.0;
  const double hi = yb - sb * eps2 / 3.0;
  if (ts < lo || ts > hi) {
    if (!(lo < hi)) {
      std::ostringstream msg;
      msg << "endpoint slopes (" << sa << ", " << sb
          << ") too steep for a monotone cubic: no theta* satisfies the 3x secant bound";
      throw NeedsWidening(msg.str());
    }
    ts = 0.5 * (lo + hi);
  }
  const double D = ya - ts;
  const double E = yb - ts;
  sp.left_ = {ts, 0.0, (3.0 * D + sa * eps1) / (eps1 * eps1), (sa + 2.0 * D / eps1) / (eps1 * eps1)};
  sp.right_ = {ts, 0.0, (3.0 * E - sb * eps2) / (eps2 * eps2), (sb - 2.0 * E / eps2) / (eps2 * eps2)};
  if (!(sp.min_slope() > 0.0)) {
    throw NeedsWidening("cubic spline derivative not positive away from t0");
  }
  return sp;
}

double MonotoneSpline::value(double t) const {
  const double s = t - t0_;
  return horner(s < 0.0 ? left_ : right_, s);
}

double MonotoneSpline::slope(double t) const {
  const double s = t - t0_;
  return horner_slope(s < 0.0 ? left_ : right_, s);
}

double MonotoneSpline::min_slope() const {
  const bool skip = kind_ == SplineKind::Cubic;
  return std::min(piece_min_slope(left_, -eps1_, 0.0, skip),
                  piece_min_slope(right_, 0.0, eps2_, skip));
}

double MonotoneSpline::invert(double phi) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(yb_));
  if (!(phi >= ya_ - slack && phi <= yb_ + slack)) {
    std::ostringstream msg;
    msg << "phi=" << phi << " outside spline range [" << ya_ << ", " << yb_ << "]";
    throw Error(ErrorKind::Config, "corrector", msg.str());
  }
  if (phi <= ya_) return lower();
  if (phi >= yb_) return upper();
  if (phi == theta_star()) return t0_;

  double lo = lower();
  double hi = upper();
  double t = lo + (hi - lo) * (phi - ya_) / (yb_ - ya_);
  for (int it = 0; it < 200; ++it) {
    const double f = value(t) - phi;
    if (std::abs(f) <= 1e-13) return t;
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double d = slope(t);
    double next = d > 0.0 ? t - f / d : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(t)) {
      return next;
    }
    t = next;
  }
  return t;
}

MonotoneSpline build_spline(const AngleFunction& theta, double t0, double eps1, double eps2,
                            SplineKind kind) {
  const double a = t0 - eps1;
  const double b = t0 + eps2;
  return MonotoneSpline::from_endpoints(t0, eps1, eps2, theta.value(a), theta.slope(a),
                                        theta.value(b), theta.slope(b), kind);
}

double invert_spline(const MonotoneSpline& s, double phi) { return s.invert(phi); }

std::optional<CornerCorrection> correct_corner(const AngleFunction& theta, double t0,
                                               SplineKind kind, const FoldOptions& options) {
  const std::optional<FoldInterval> fold = detect_fold(theta, t0, options);
  if (!fold) return std::nullopt;
  double e1 = fold->eps1;
  double e2 = fold->eps2;
  for (int retries = 0;; ++retries) {
    try {
      return CornerCorrection{build_spline(theta, t0, e1, e2, kind), retries};
    } catch (const NeedsWidening& e) {
      if (retries == kMaxRetries || (e1 + e2) * kWidening >= kPi) {
        std::ostringstream msg;
        msg << "no monotone " << to_string(kind) << " spline at t0=" << t0 << " after "
            << retries << " widenings: " << e.what();
        throw Error(ErrorKind::Numerical, "corrector", msg.str());
      }
    }
    e1 *= kWidening;
    e2 *= kWidening;
  }
}

BoundaryCorrespondence::BoundaryCorrespondence(std::shared_ptr<const RawCorrespondence> raw)
    : raw_(std::move(raw)) {}

BoundaryCorrespondence::BoundaryCorrespondence(std::shared_ptr<const RawCorrespondence> raw,
                                               std::vector<MonotoneSpline> segments)
    : raw_(std::move(raw)), segments_(std::move(segments)) {
  std::sort(segments_.begin(), segments_.end(), [](const auto& l, const auto& r) {
    return wrap_parameter(l.t0()) < wrap_parameter(r.t0());
  });
  const std::size_t n = segments_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const MonotoneSpline& cur = segments_[i];
    const MonotoneSpline& next = segments_[(i + 1) % n];
    double gap = wrap_parameter(next.t0()) - wrap_parameter(cur.t0());
    if (i + 1 == n) gap += kTwoPi;
    if (cur.eps2() + next.eps1() >= gap) {
      std::ostringstream msg;
      msg << "correction intervals around t0=" << cur.t0() << " and t0=" << next.t0()
          << " overlap; the boundary is under-resolved near its corners";
      throw Error(ErrorKind::Numerical, "corrector", msg.str());
    }
  }
}

const MonotoneSpline* BoundaryCorrespondence::segment_for(double t, double& shift) const {
  for (const MonotoneSpline& seg : segments_) {
    const double s = parameter_offset(t, seg.t0());
    if (s >= -seg.eps1() && s <= seg.eps2()) {
      shift = t - seg.t0() - s;
      return &seg;
    }
  }
  return nullptr;
}

double BoundaryCorrespondence::value(double t) const {
  double shift = 0.0;
  if (const MonotoneSpline* seg = segment_for(t, shift)) {
    return seg->value(t - shift) + shift;
  }
  return raw_->value(t);
}

double BoundaryCorrespondence::slope(double t) const {
  double shift = 0.0;
  if (const MonotoneSpline* seg = segment_for(t, shift)) return seg->slope(t - shift);
  return raw_->slope(t);
}

AngleFunction BoundaryCorrespondence::as_function() const {
  return {[this](double t) { return value(t); }, [this](double t) { return slope(t); }};
}

double theta_corrected(const BoundaryCorrespondence& c, double t) { return c.value(t); }

MonotonicityReport check_monotone(const AngleFunction& theta, int grid) {
  MonotonicityReport r;
  r.min_step = std::numeric_limits<double>::infinity();
  double prev = theta.value(0.0);
  const double first = prev;
  for (int j = 1; j <= grid; ++j) {
    const double t = kTwoPi * j / grid;
    const double cur = theta.value(t);
    if (cur - prev < r.min_step) {
      r.min_step = cur - prev;
      r.worst_t = t;
    }
    prev = cur;
  }
  r.increment = prev - first;
  return r;
}

}  // namespace confmap
