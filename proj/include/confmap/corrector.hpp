#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confmap/boundary.hpp"
#include "confmap/error.hpp"
#include "confmap/fredholm.hpp"

namespace confmap {

/// A boundary correspondence seen as a function of t: theta(t) and theta'(t).
/// theta(t + 2*pi) = theta(t) + 2*pi is assumed.
struct AngleFunction {
  std::function<double(double)> value;
  std::function<double(double)> slope;
};

AngleFunction angle_function(const RawCorrespondence& c);

/// Correction interval [t0 - eps1, t0 + eps2].
struct FoldInterval {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

struct FoldOptions {
  double slope_floor = 0.05;
  double probe_radius = 0.1;  ///< search radius for slow points around t0
  int grid = 16384;           ///< scan resolution per period
};

/// Interval around t0 that covers every point within probe_radius where
/// theta' < slope_floor, widened until theta' >= slope_floor at both ends and
/// theta(t0 + eps2) > theta(t0 - eps1). Returns nullopt when theta' stays
/// above the floor near t0. Throws Numerical when the interval grows past pi.
std::optional<FoldInterval> detect_fold(const AngleFunction& theta, double t0,
                                        const FoldOptions& options = {});

enum class SplineKind { Linear, Cubic };

SplineKind parse_spline_kind(const std::string& name);
std::string to_string(SplineKind kind);

/// Thrown when the endpoint data admit no monotone spline on the current
/// interval. A wider interval may succeed.
class NeedsWidening : public Error {
 public:
  explicit NeedsWidening(const std::string& message)
      : Error(ErrorKind::Numerical, "corrector", message) {}
};

/// phi on [t0 - eps1, t0 + eps2] with knots at both ends and at t0.
/// Each piece is stored as c0 + c1 s + c2 s^2 + c3 s^3 in s = t - t0.
/// Evaluation takes t in the literal interval (no reduction mod 2*pi).
class MonotoneSpline {
 public:
  using Piece = std::array<double, 4>;

  /// Endpoint values ya, yb and slopes sa, sb of theta; theta* is the midpoint.
  /// Throws NeedsWidening when the data fail the monotonicity criterion.
  static MonotoneSpline from_endpoints(double t0, double eps1, double eps2, double ya, double sa,
                                       double yb, double sb, SplineKind kind);

  double t0() const noexcept { return t0_; }
  double eps1() const noexcept { return eps1_; }
  double eps2() const noexcept { return eps2_; }
  double lower() const noexcept { return t0_ - eps1_; }
  double upper() const noexcept { return t0_ + eps2_; }
  SplineKind kind() const noexcept { return kind_; }
  double theta_star() const noexcept { return left_[0]; }
  double value_lower() const noexcept { return ya_; }
  double value_upper() const noexcept { return yb_; }
  const Piece& left() const noexcept { return left_; }
  const Piece& right() const noexcept { return right_; }

  double value(double t) const;
  double slope(double t) const;

  /// t with |phi(t) - phi| <= 1e-12. Throws Config when phi is out of range.
  double invert(double phi) const;

  /// Smallest phi' over 256 samples per piece and the critical points of phi'.
  /// Excludes t0 for the cubic kind.
  double min_slope() const;

 private:
  double t0_ = 0.0, eps1_ = 0.0, eps2_ = 0.0;
  double ya_ = 0.0, yb_ = 0.0;
  SplineKind kind_ = SplineKind::Cubic;
  Piece left_{}, right_{};
};

MonotoneSpline build_spline(const AngleFunction& theta, double t0, double eps1, double eps2,
                            SplineKind kind);

double invert_spline(const MonotoneSpline& s, double phi);

struct CornerCorrection {
  MonotoneSpline spline;
  int retries = 0;
};

/// detect_fold followed by build_spline, widening the interval by 25% per
/// retry (at most 8). Returns nullopt when no fold is present.
std::optional<CornerCorrection> correct_corner(const AngleFunction& theta, double t0,
                                               SplineKind kind, const FoldOptions& options = {});

/// theta(t) with spline segments substituted on their intervals.
class BoundaryCorrespondence {
 public:
  enum class Kind { Raw, Corrected };

  /// Raw correspondence.
  explicit BoundaryCorrespondence(std::shared_ptr<const RawCorrespondence> raw);
  /// Corrected correspondence. Throws Numerical when intervals overlap.
  BoundaryCorrespondence(std::shared_ptr<const RawCorrespondence> raw,
                         std::vector<MonotoneSpline> segments);

  Kind kind() const noexcept { return segments_.empty() ? Kind::Raw : Kind::Corrected; }
  const RawCorrespondence& raw() const noexcept { return *raw_; }
  const TrigBoundary& boundary() const noexcept { return raw_->boundary(); }
  /// Sorted by t0 in [0, 2*pi).
  const std::vector<MonotoneSpline>& segments() const noexcept { return segments_; }

  double value(double t) const;
  double slope(double t) const;
  AngleFunction as_function() const;

 private:
  const MonotoneSpline* segment_for(double t, double& shift) const;

  std::shared_ptr<const RawCorrespondence> raw_;
  std::vector<MonotoneSpline> segments_;
};

double theta_corrected(const BoundaryCorrespondence& c, double t);

struct MonotonicityReport {
  double min_step = 0.0;   ///< min forward difference on the grid
  double increment = 0.0;  ///< theta(2*pi) - theta(0)
  double worst_t = 0.0;    ///< where min_step occurs

  bool monotone() const { return min_step > 0.0; }
};

MonotonicityReport check_monotone(const AngleFunction& theta, int grid = 16384);

}  // namespace confmap
