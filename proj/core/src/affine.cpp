#include "threshsim/affine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace threshsim {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kFdStep = 1e-6;
constexpr double kFdAgreement = 1e-5;
}  // namespace

System AffineParams::to_system() const {
  return System{
      ScalarMap{MapFamily::Affine, alpha1, beta1},
      ScalarMap{MapFamily::Affine, alpha2, beta2},
      AffineThreshold{gamma, delta, epsilon},
  };
}

std::optional<AffineParams> AffineParams::from_system(const System& sys) {
  if (sys.f.family != MapFamily::Affine || sys.g.family != MapFamily::Affine) {
    return std::nullopt;
  }
  AffineParams p;
  p.alpha1 = sys.f.slope;
  p.beta1 = sys.f.intercept;
  p.alpha2 = sys.g.slope;
  p.beta2 = sys.g.intercept;
  if (const auto* t = std::get_if<AffineThreshold>(&sys.h)) {
    p.gamma = t->gamma;
    p.delta = t->delta;
    p.epsilon = t->epsilon;
    return p;
  }
  if (const auto* t = std::get_if<AveragingThreshold>(&sys.h)) {
    p.gamma = t->weight;
    p.delta = 1.0 - t->weight;
    p.epsilon = 0.0;
    return p;
  }
  return std::nullopt;
}

std::vector<ClassifiedFixedPoint> affine_fixed_points(const AffineParams& p) {
  auto interior = [&p](FixedPointType type, double alpha, double beta) {
    ClassifiedFixedPoint fp;
    fp.type = type;
    fp.eigenvalues = {alpha, p.delta};
    if (alpha == 1.0 || p.delta == 1.0) {
      fp.degenerate = true;
      fp.a_star = kNan;
      fp.c_star = kNan;
      return fp;
    }
    fp.a_star = beta / (1.0 - alpha);
    fp.c_star = (p.gamma * fp.a_star + p.epsilon) / (1.0 - p.delta);
    // A candidate within round-off of the switching boundary cannot be
    // certified interior (border-collision knife edge); the boundary solver
    // owns that case.
    const double scale = std::max({1.0, std::abs(fp.a_star), std::abs(fp.c_star)});
    const bool coincident = std::abs(fp.a_star - fp.c_star) <= 1e-12 * scale;
    fp.exists = !coincident && (type == FixedPointType::TypeI
                                    ? fp.a_star < fp.c_star
                                    : fp.a_star > fp.c_star);
    fp.stable = std::abs(alpha) < 1.0 && std::abs(p.delta) < 1.0;
    return fp;
  };
  return {
      interior(FixedPointType::TypeI, p.alpha1, p.beta1),
      interior(FixedPointType::TypeII, p.alpha2, p.beta2),
  };
}

std::optional<ClassifiedFixedPoint> boundary_fixed_point(const AffineParams& p,
                                                         double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("boundary_fixed_point: tol must be > 0");
  if (p.alpha1 == 1.0) {
    throw std::domain_error("boundary_fixed_point: alpha1 == 1 is degenerate");
  }

  // f pins the candidate; h must fix it as well (the pair is over-determined).
  const double c = p.beta1 / (1.0 - p.alpha1);
  const double h_at = p.gamma * c + p.delta * c + p.epsilon;
  if (!(std::abs(h_at - c) <= tol)) return std::nullopt;

  ClassifiedFixedPoint fp;
  fp.type = FixedPointType::TypeIII;
  fp.a_star = c;
  fp.c_star = c;
  fp.exists = true;
  fp.boundary = BoundaryDerivatives{p.alpha1, p.alpha2, p.delta};
  fp.eigenvalues = {p.alpha1, p.delta};
  // Attracting from every approach side when all one-sided rates contract.
  const double worst =
      std::max({std::abs(p.alpha1), std::abs(p.alpha2), std::abs(p.delta)});
  fp.stable = worst < 1.0;

  const double den = 1.0 - p.alpha1 - p.gamma;
  if (den != 0.0) {
    fp.closed_form_candidate = (p.beta1 + p.epsilon) / den;
    fp.closed_form_agrees = std::abs(*fp.closed_form_candidate - c) <= tol;
  }
  return fp;
}

Mat2 jacobian_check(const AffineParams& p, State point, Regime side) {
  if (std::abs(point.a - point.c) <= 10.0 * kFdStep) {
    throw std::domain_error(
        "jacobian_check: point is on or too close to the switching boundary");
  }
  if (regime_of(point) != side) {
    throw std::domain_error("jacobian_check: side does not match the point's regime");
  }

  const Mat2 analytic{side == Regime::One ? p.alpha1 : p.alpha2, 0.0, p.gamma, p.delta};

  const System sys = p.to_system();
  auto map_at = [&sys](double a, double c) { return step(sys, State{a, c}).next; };
  const double h = kFdStep;
  const State ap = map_at(point.a + h, point.c);
  const State am = map_at(point.a - h, point.c);
  const State cp = map_at(point.a, point.c + h);
  const State cm = map_at(point.a, point.c - h);
  const Mat2 fd{
      (ap.a - am.a) / (2.0 * h), (cp.a - cm.a) / (2.0 * h),
      (ap.c - am.c) / (2.0 * h), (cp.c - cm.c) / (2.0 * h),
  };

  const double worst = std::max({std::abs(fd.m00 - analytic.m00),
                                 std::abs(fd.m01 - analytic.m01),
                                 std::abs(fd.m10 - analytic.m10),
                                 std::abs(fd.m11 - analytic.m11)});
  if (!(worst <= kFdAgreement)) {
    throw std::logic_error("jacobian_check: finite differences disagree with the "
                           "analytic Jacobian");
  }
  return analytic;
}

const char* to_string(FixedPointType t) {
  switch (t) {
    case FixedPointType::TypeI: return "TypeI";
    case FixedPointType::TypeII: return "TypeII";
    case FixedPointType::TypeIII: return "TypeIII";
  }
  return "?";
}

}  // namespace threshsim
