#pragma once
// Closed-form equilibrium analysis for the fully affine system
//
//   a' = alpha1*a + beta1 (a <= c)  |  alpha2*a + beta2 (a > c)
//   c' = gamma*a + delta*c + epsilon
//
// Interior fixed points come in two kinds: TypeI sits strictly below the
// threshold (regime 1 side), TypeII strictly above. TypeIII sits on the
// boundary a == c and must solve both f(c) = c and h(c, c) = c.

#include <array>
#include <optional>
#include <vector>

#include "threshsim/system.hpp"

namespace threshsim {

struct AffineParams {
  double alpha1 = 0.0, beta1 = 0.0;  ///< regime-1 map
  double alpha2 = 0.0, beta2 = 0.0;  ///< regime-2 map
  double gamma = 0.0, delta = 0.0, epsilon = 0.0;

  System to_system() const;
  /// Present when both maps are Affine and the threshold is affine
  /// (an averaging threshold converts losslessly).
  static std::optional<AffineParams> from_system(const System& sys);
};

enum class FixedPointType { TypeI, TypeII, TypeIII };

/// One-sided data for a boundary fixed point: the regime derivatives on each
/// side of the switching line plus the threshold's own contraction factor.
struct BoundaryDerivatives {
  double alpha_left = 0.0;   ///< f'(c*), the a <= c side
  double alpha_right = 0.0;  ///< g'(c*), the a > c side
  double dh_dc = 0.0;
};

struct ClassifiedFixedPoint {
  FixedPointType type = FixedPointType::TypeI;
  double a_star = 0.0;
  double c_star = 0.0;
  /// Whether the candidate satisfies its side condition (TypeI: a* < c*,
  /// TypeII: a* > c*). Candidates within round-off (1e-12 relative) of the
  /// boundary report false: they cannot be certified interior.
  /// TypeIII candidates are only returned when they exist.
  bool exists = false;
  /// Set when a defining denominator vanished (alpha_i == 1 or delta == 1);
  /// the candidate is reported rather than silently dropped, with NaN
  /// coordinates.
  bool degenerate = false;
  std::array<double, 2> eigenvalues{0.0, 0.0};
  bool stable = false;
  std::optional<BoundaryDerivatives> boundary;  ///< TypeIII only
  /// TypeIII only: value of the one-shot candidate formula
  /// (beta1+epsilon)/(1-alpha1-gamma) when its denominator is nonzero, and
  /// whether it agrees with the solution of the defining equations. The two
  /// can disagree; the defining equations win.
  std::optional<double> closed_form_candidate;
  std::optional<bool> closed_form_agrees;
};

/// TypeI and TypeII candidates with existence flags, eigenvalues
/// (alpha_i, delta) and stability verdicts. Degenerate denominators are
/// flagged per entry, never thrown.
std::vector<ClassifiedFixedPoint> affine_fixed_points(const AffineParams& p);

/// Solves f(c) = c and accepts the point only if |h(c, c) - c| <= tol.
/// Throws std::domain_error when alpha1 == 1 (no isolated solution) or
/// tol <= 0.
std::optional<ClassifiedFixedPoint> boundary_fixed_point(const AffineParams& p,
                                                         double tol);

struct Mat2 {
  double m00 = 0.0, m01 = 0.0;
  double m10 = 0.0, m11 = 0.0;
};

/// Analytic one-step Jacobian [[alpha_side, 0], [gamma, delta]] at an
/// interior point, cross-checked entrywise against a central finite
/// difference (step 1e-6, agreement 1e-5). Throws std::domain_error when the
/// point is within 1e-5 of the switching boundary or `side` does not match
/// the point's actual regime.
Mat2 jacobian_check(const AffineParams& p, State point, Regime side);

const char* to_string(FixedPointType t);

}  // namespace threshsim
