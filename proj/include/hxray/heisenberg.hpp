#pragma once

#include <compare>
#include <complex>
#include <functional>
#include <string>

namespace hxray {

using Complex = std::complex<double>;

/// Reduces t into the fundamental domain [0, pi) of the compact center.
double reduce_mod_pi(double t);

/// A point (z, t) of the reduced group C x (R / pi Z). The central
/// coordinate is stored reduced into [0, pi); every group operation
/// re-reduces it.
struct HeisenbergPoint {
  Complex z{0.0, 0.0};
  double t = 0.0;

  HeisenbergPoint() = default;
  HeisenbergPoint(Complex z_, double t_) : z(z_), t(reduce_mod_pi(t_)) {}
};

/// (x+iy, t)(u+iv, s) = (x+u + i(y+v), t + s + (xv - yu)/2), center mod pi.
HeisenbergPoint group_mul(const HeisenbergPoint& p, const HeisenbergPoint& q);

/// (z, t)^{-1} = (-z, -t).
HeisenbergPoint group_inv(const HeisenbergPoint& p);

/// Momentum r = a/b > 0 in lowest terms. Over one period 2*pi*sqrt(ab) the
/// geodesic winds a times around the central circle and b times around its
/// own axis.
class RationalMomentum {
 public:
  RationalMomentum(long num, long den);

  long a() const { return a_; }
  long b() const { return b_; }
  double value() const { return static_cast<double>(a_) / static_cast<double>(b_); }
  double period() const;

  /// delta_Z(r*n): true iff r*n is an integer, i.e. b | n.
  bool commensurate(long n) const;

  /// r*|n| as an exact integer; valid only when commensurate(n).
  long shift(long n) const;

  std::string str() const;  // "a" or "a/b"

  /// Accepts "A" or "A/B" with positive integers; reduces automatically.
  static RationalMomentum parse(const std::string& text);

  friend bool operator==(const RationalMomentum&, const RationalMomentum&) = default;

 private:
  long a_;
  long b_;
};

/// The closed geodesic gamma_r(s) = (sqrt(r) e^{i s/sqrt(r)}, sqrt(r) s / 2).
HeisenbergPoint geodesic(const RationalMomentum& r, double s);

/// Basis label: central frequency n != 0, Laguerre indices j, k >= 0.
struct ModeIndex {
  int n = 1;
  int j = 0;
  int k = 0;
  auto operator<=>(const ModeIndex&) const = default;
};

/// True iff n != 0 and j, k >= 0.
bool valid_mode(const ModeIndex& m);

/// Entry function M_jk^h(z, t). For h < 0 uses M_jk^h(z,t) = M_jk^{|h|}(conj z, -t).
/// Factorial ratios go through log-gamma, so indices up to a few hundred are safe.
Complex entry_function(double h, int j, int k, const HeisenbergPoint& p);

/// psi_jk^n = (sqrt|n| / pi) M_jk^n; an orthonormal family on the reduced group.
Complex basis_function(const ModeIndex& m, const HeisenbergPoint& p);

/// Node counts for the cylinder quadrature C x [0, pi): trapezoid in the
/// central coordinate and the angle, Gauss-Legendre in the radius on
/// [0, radial_cutoff].
struct QuadratureSpec {
  int s_nodes = 256;       // geodesic-parameter nodes, for callers that integrate along geodesics
  int t_nodes = 256;       // central circle
  int radial_nodes = 120;
  int angular_nodes = 256;
  double radial_cutoff = 8.0;

  /// Cutoff 8/sqrt(min|n|) keeps the Gaussian tail of every mode below 1e-13.
  static QuadratureSpec for_min_frequency(int min_abs_n);
};

using PointFunction = std::function<Complex(const HeisenbergPoint&)>;

struct InnerProductEstimate {
  Complex value{0.0, 0.0};
  /// Fraction of the absolute integrand mass carried by the outermost radial
  /// ring; above 1e-12 the cutoff is suspect.
  double outer_shell_share = 0.0;
  bool truncated() const { return outer_shell_share > 1e-12; }
};

/// L2 pairing <f, g> = int_0^pi int_C f conj(g) dz dt by the rule in `q`.
/// Deterministic for a fixed spec.
InnerProductEstimate inner_product_estimate(const PointFunction& f,
                                            const PointFunction& g,
                                            const QuadratureSpec& q);

Complex inner_product(const PointFunction& f, const PointFunction& g,
                      const QuadratureSpec& q);

}  // namespace hxray
