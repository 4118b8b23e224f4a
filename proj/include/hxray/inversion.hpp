#pragma once

#include <map>
#include <vector>

#include "hxray/xray.hpp"

namespace hxray {

/// Two zeros of the same diagonal Laguerre function with zero1/zero2 = r1/r2.
struct LaguerreRatioHit {
  int j = 0;
  double zero1 = 0.0;
  double zero2 = 0.0;
};

/// Two J0 zeros with zero1/zero2 = sqrt(r1/r2).
struct BesselRatioHit {
  double zero1 = 0.0;
  double zero2 = 0.0;
};

enum class TwoRadiusVerdict { injective_on_scan, obstructed };

/// Result of the joint-injectivity scan for the pair (I_r1, I_r2). The
/// verdict only covers the scanned windows; it never asserts injectivity
/// beyond them.
struct TwoRadiusReport {
  RationalMomentum r1{1, 1};
  RationalMomentum r2{1, 2};
  int j_max = 0;
  int n_max = 0;
  double zero_window = 0.0;
  double tol = 0.0;

  std::vector<LaguerreRatioHit> laguerre_ratio_hits;
  std::vector<BesselRatioHit> bessel_ratio_hits;
  /// Residue classes mod lcm(b1, b2) of central frequencies annihilated by
  /// both transforms (r1 n and r2 n both non-integer).
  std::vector<long> delta_z_gap;
  long gap_modulus = 1;  // lcm(b1, b2)

  TwoRadiusVerdict verdict = TwoRadiusVerdict::obstructed;
};

/// Scans diagonal Laguerre zeros (j <= j_max) and J0 zeros on
/// [0, zero_window], flags ratio coincidences within relative `tol`, and
/// lists the residue classes |n| <= n_max invisible to both momenta.
/// Throws when r1 == r2 or the bounds are non-positive.
TwoRadiusReport two_radius_check(const RationalMomentum& r1, const RationalMomentum& r2,
                                 int j_max, int n_max, double zero_window, double tol);

/// One transform output together with the momentum it was taken at.
struct Measurement {
  SignalDecomposition data;
  RationalMomentum r{1, 1};
};

struct ReconstructionBounds {
  int n_max = 3;
  int j_max = 4;
  int k_max = 2;
};

struct ReconstructionResult {
  SignalDecomposition signal;
  /// 1 / max_i s_i over the channels actually used for each solved mode.
  std::map<ModeIndex, double> per_mode_condition;
  /// Candidate modes inside the bounds whose coefficient is below 1e-14 in
  /// every channel; their amplitude cannot be determined from the data.
  std::vector<ModeIndex> unresolved;
};

/// Per-mode least squares across all channels,
///   x = sum_i conj(c_i) y_i / (sum_i |c_i|^2 + ridge),
/// where c_i is the channel coefficient and y_i the measured amplitude at
/// the shifted target index. Planar atoms are divided through the
/// larger-magnitude Bessel multiplier, ridge-regularized the same way.
ReconstructionResult reconstruct(const std::vector<Measurement>& channels,
                                 const ReconstructionBounds& bounds, double ridge);

/// Two-momentum convenience wrapper.
ReconstructionResult reconstruct(const SignalDecomposition& g1, const SignalDecomposition& g2,
                                 const RationalMomentum& r1, const RationalMomentum& r2,
                                 const ReconstructionBounds& bounds, double ridge);

}  // namespace hxray
