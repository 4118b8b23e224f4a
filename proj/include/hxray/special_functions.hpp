#pragma once

#include <vector>

namespace hxray {

/// Generalized Laguerre polynomial L_j^(alpha)(x), three-term recurrence.
double laguerre_eval(int j, double alpha, double x);

/// Diagonal Laguerre function l_j(x) = L_j^(x)(x).
double diagonal_laguerre(int j, double x);

/// Bessel function of order zero. Power series for |x| <= 12, periodic
/// trapezoid quadrature of the cosine integral representation beyond.
/// Absolute accuracy better than 1e-12 for |x| <= 100.
double bessel_j0(double x);

enum class ZeroKind { diagonal_laguerre, bessel_j0 };

/// A certified bracket [lo, hi] around a simple zero: the function takes
/// strictly opposite signs at the endpoints and hi - lo <= the bracket
/// tolerance used by the scan.
struct ZeroBracket {
  double lo = 0.0;
  double hi = 0.0;
  double witness = 0.0;  // midpoint of the final bisection bracket
  int order_j = -1;      // Laguerre order; -1 for J0
  ZeroKind kind = ZeroKind::bessel_j0;
};

struct ZeroScan {
  std::vector<ZeroBracket> zeros;          // ascending
  std::vector<double> tangency_suspects;   // |f| dips to ~0 with no sign change
};

// Scans [lo, hi] on a uniform grid of the given step and refines every sign
// change by bisection to width <= bracket_tol. Grid nodes where |f| collapses
// without a sign change (an even-order root, or a pair of roots inside one
// cell) are reported as tangency suspects instead of being bisected.
ZeroScan scan_zeros(ZeroKind kind, int order_j, double lo, double hi,
                    double step, double bracket_tol = 1e-10);

}  // namespace hxray
