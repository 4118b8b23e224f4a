#include "hxray/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hxray {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

// J0 power series in long double; mild cancellation up to |x| ~ 12 costs a
// few guard digits, which extended precision covers.
double j0_series(double x) {
  const long double q = static_cast<long double>(x) * static_cast<long double>(x) / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k <= 200; ++k) {
    term *= -q / (static_cast<long double>(k) * static_cast<long double>(k));
    sum += term;
    if (std::abs(term) < 1e-22L * std::max(1.0L, std::abs(sum)) && k > 4) break;
  }
  return static_cast<double>(sum);
}

// Trapezoid rule on the periodic representation; converges faster than any
// power of the node count, so nodes ~ 1.6|x| + 64 reach machine accuracy.
double j0_quadrature(double x, int nodes) {
  const long double two_pi = 6.283185307179586476925286766559L;
  long double sum = 0.0L;
  for (int i = 0; i < nodes; ++i) {
    const long double theta = two_pi * static_cast<long double>(i) / nodes;
    sum += std::cos(static_cast<long double>(x) * std::cos(theta));
  }
  return static_cast<double>(sum / nodes);
}

}  // namespace

double laguerre_eval(int j, double alpha, double x) {
  if (j < 0) throw std::invalid_argument("laguerre_eval: order must be >= 0");
  require_finite(alpha, "laguerre_eval: alpha");
  require_finite(x, "laguerre_eval: x");

  double p0 = 1.0;
  if (j == 0) return p0;
  double p1 = 1.0 + alpha - x;
  for (int c = 1; c < j; ++c) {
    const double next = ((2 * c + 1 + alpha - x) * p1 - (c + alpha) * p0) / (c + 1);
    p0 = p1;
    p1 = next;
  }
  return p1;
}

double diagonal_laguerre(int j, double x) { return laguerre_eval(j, x, x); }

double bessel_j0(double x) {
  require_finite(x, "bessel_j0: x");
  const double ax = std::abs(x);
  if (ax <= 12.0) return j0_series(ax);
  const int nodes = std::max(64, static_cast<int>(1.6 * ax) + 64);
  return j0_quadrature(ax, nodes);
}

ZeroScan scan_zeros(ZeroKind kind, int order_j, double lo, double hi, double step,
                    double bracket_tol) {
  if (!(lo < hi)) throw std::invalid_argument("scan_zeros: need lo < hi");
  if (!(step > 0.0)) throw std::invalid_argument("scan_zeros: need step > 0");
  if (!(bracket_tol > 0.0)) throw std::invalid_argument("scan_zeros: need bracket_tol > 0");
  if (kind == ZeroKind::diagonal_laguerre && order_j < 0) {
    throw std::invalid_argument("scan_zeros: Laguerre order must be >= 0");
  }

  auto f = [&](double x) -> double {
    return kind == ZeroKind::diagonal_laguerre ? diagonal_laguerre(order_j, x)
                                               : bessel_j0(x);
  };

  // Bisect a strict sign change down to width <= bracket_tol. Returns false
  // only when an exact midpoint zero leaves no refinable sign change.
  auto bisect = [&](double a, double b, ZeroBracket& out) -> bool {
    double fa = f(a);
    double fb = f(b);
    while (b - a > bracket_tol) {
      const double mid = 0.5 * (a + b);
      double fm = f(mid);
      if (fm == 0.0) {
        // Exact hit: re-anchor a tolerance-wide bracket around it.
        double na = mid - 0.5 * bracket_tol;
        double nb = mid + 0.5 * bracket_tol;
        double fna = f(na);
        double fnb = f(nb);
        for (int grow = 0; grow < 8 && fna * fnb >= 0.0; ++grow) {
          na -= 0.25 * bracket_tol;
          nb += 0.25 * bracket_tol;
          fna = f(na);
          fnb = f(nb);
        }
        if (fna * fnb >= 0.0) return false;
        a = na;
        b = nb;
        fa = fna;
        fb = fnb;
        break;
      }
      if (fa * fm < 0.0) {
        b = mid;
        fb = fm;
      } else {
        a = mid;
        fa = fm;
      }
    }
    out.lo = a;
    out.hi = b;
    out.witness = 0.5 * (a + b);
    out.order_j = kind == ZeroKind::diagonal_laguerre ? order_j : -1;
    out.kind = kind;
    return true;
  };

  const long cells = std::lround(std::ceil((hi - lo) / step));
  std::vector<double> xs;
  std::vector<double> vs;
  xs.reserve(static_cast<std::size_t>(cells) + 1);
  for (long i = 0; i <= cells; ++i) {
    const double x = std::min(lo + static_cast<double>(i) * step, hi);
    xs.push_back(x);
    vs.push_back(f(x));
    if (x >= hi) break;
  }

  ZeroScan scan;
  // Exact zeros at grid nodes first; the function is entire, so the bracket
  // may poke marginally past the window ends.
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (vs[i] != 0.0) continue;
    const double c = xs[i];
    const double na = c - 0.5 * step;
    const double nb = c + 0.5 * step;
    ZeroBracket z;
    if (f(na) * f(nb) < 0.0 && bisect(na, nb, z)) {
      scan.zeros.push_back(z);
    } else {
      scan.tangency_suspects.push_back(c);
    }
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (vs[i] == 0.0 || vs[i + 1] == 0.0) continue;
    if (vs[i] * vs[i + 1] < 0.0) {
      ZeroBracket z;
      if (bisect(xs[i], xs[i + 1], z)) {
        scan.zeros.push_back(z);
      } else {
        scan.tangency_suspects.push_back(0.5 * (xs[i] + xs[i + 1]));
      }
    }
  }

  // Tangency sweep: a sharp dip of |f| at an interior node with no adjacent
  // sign change means an even number of roots inside one step.
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double fm = std::abs(vs[i]);
    const double fl = std::abs(vs[i - 1]);
    const double fr = std::abs(vs[i + 1]);
    if (vs[i] == 0.0) continue;  // handled above
    if (vs[i - 1] * vs[i] < 0.0 || vs[i] * vs[i + 1] < 0.0) continue;
    if (fm < fl && fm < fr && fm < 1e-6 * std::min(fl, fr)) {
      scan.tangency_suspects.push_back(xs[i]);
    }
  }

  std::sort(scan.zeros.begin(), scan.zeros.end(),
            [](const ZeroBracket& u, const ZeroBracket& v) { return u.lo < v.lo; });
  return scan;
}

}  // namespace hxray
