#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "hxray/heisenberg.hpp"

namespace hxray {

/// Plane wave amp * e^{i z.xi} in the planar component L2(C).
struct PlanarAtom {
  std::array<double, 2> xi{0.0, 0.0};
  Complex amp{0.0, 0.0};
};

/// A signal split along the invariant decomposition: plane-wave atoms for
/// the t-independent part, basis-mode amplitudes for the mean-zero part.
struct SignalDecomposition {
  std::vector<PlanarAtom> planar;        // atoms with equal xi are merged
  std::map<ModeIndex, Complex> modes;

  /// Accumulates into an existing atom when xi matches exactly.
  void add_atom(const std::array<double, 2>& xi, Complex amp);
  /// Accumulates; throws on an invalid index.
  void add_mode(const ModeIndex& m, Complex amp);

  bool empty() const { return planar.empty() && modes.empty(); }
};

/// Pointwise value: sum of atoms amp*e^{i z.xi} plus mode amplitudes times
/// basis functions.
Complex evaluate(const SignalDecomposition& x, const HeisenbergPoint& p);

/// l2 norm of the mode-amplitude vector (the basis is orthonormal).
double mode_norm(const SignalDecomposition& x);

/// Forward transform by quadrature: trapezoid sum of f((z,t) gamma_r(s)) over
/// one period. This is the ground truth every spectral formula is checked
/// against. Requires s_nodes >= 16.
Complex xray_quadrature(const PointFunction& f, const RationalMomentum& r,
                        const HeisenbergPoint& p, int s_nodes);

/// Adjoint transform by quadrature: integrates f((z,t) gamma_r(s)^{-1}).
Complex adjoint_quadrature(const PointFunction& f, const RationalMomentum& r,
                           const HeisenbergPoint& p, int s_nodes);

/// Coefficient of the forward transform on mode (n, j): the transform maps a
/// unit (n, j, k) amplitude to this value at (n, j + r|n|, k). Zero when r*n
/// is not an integer. |values| below 1e-14 relative to 2*pi*sqrt(ab) are
/// snapped to exact zero so kernel membership is observable.
Complex singular_coefficient(int n, int j, const RationalMomentum& r);

/// Multiplier of a planar atom: 2*pi*sqrt(ab) * J0(sqrt(r) |xi|).
double planar_multiplier(const std::array<double, 2>& xi, const RationalMomentum& r);

SignalDecomposition forward_spectral(const SignalDecomposition& x, const RationalMomentum& r);

/// True adjoint of forward_spectral under the L2 pairing: mode (n, j, k)
/// moves down to (n, j - r|n|, k) with the conjugate coefficient; modes with
/// j - r|n| < 0 or r*n not an integer are annihilated.
SignalDecomposition adjoint_spectral(const SignalDecomposition& y, const RationalMomentum& r);

/// adjoint_spectral(forward_spectral(x)): diagonal, scales mode (n, j, k) by
/// |singular_coefficient(n, j, r)|^2.
SignalDecomposition normal_spectral(const SignalDecomposition& x, const RationalMomentum& r);

/// One mode of the singular system: I_r = U_r D_r with D_r scaling by s and
/// U_r applying the unimodular phase and the index shift j -> j + r|n|.
struct SingularSystem {
  int n = 1;
  int j = 0;
  RationalMomentum r{1, 1};
  double s = 0.0;          // singular value
  Complex phase{1.0, 0.0}; // |phase| = 1; convention 1 when s = 0
  long target_j = 0;       // j + r|n|; meaningful only when has_target
  bool has_target = false; // false when r*n is not an integer
};

SingularSystem svd_factors(int n, int j, const RationalMomentum& r);

/// One row of the constant audit at momentum r = 1, frequency n = m: the
/// modulus of the forward coefficient as computed here (entry-function route,
/// quadrature-validated) against the closed form carrying e^{-pi m / 2}.
struct AuditRow {
  int m = 1;
  int j = 0;
  double oracle_modulus = 0.0;
  double printed_modulus = 0.0;
  double ratio = 0.0;  // oracle / printed
};

std::vector<AuditRow> constant_audit(int m_max, int j_max);

/// Self-check options: every mode in bounds, every momentum listed, compared
/// pointwise against the quadrature ground truth at `points` random points.
struct VerifyOptions {
  int n_max = 4;
  int j_max = 6;
  int k_max = 3;
  int points = 10;
  int quad_nodes = 4096;
  double rel_tol = 1e-6;
  double abs_tol = 1e-8;
  std::vector<RationalMomentum> momenta{
      {1, 1}, {2, 1}, {3, 1}, {1, 2}, {1, 3}, {2, 3}};
  std::uint64_t seed = 0x5eed5eedULL;
};

struct VerifyResult {
  long checked = 0;
  long failures = 0;
  double worst_abs_err = 0.0;
  bool passed() const { return failures == 0; }
};

/// Runs the oracle-equivalence sweep; logs one line per failure when `log`
/// is non-null.
VerifyResult verify_oracle_equivalence(const VerifyOptions& opt, std::ostream* log);

}  // namespace hxray
