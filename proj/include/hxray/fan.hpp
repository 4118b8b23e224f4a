#pragma once

#include <vector>

#include "hxray/heisenberg.hpp"
#include "hxray/xray.hpp"

namespace hxray {

/// One point of the joint-eigenvalue lattice: eig_t = 2n for the central
/// derivative, eig_l = 2|n|(1+2j) for the sublaplacian. The ray label is
/// j + 1, matching rays counted from 1.
struct FanPoint {
  int n = 1;
  int j = 0;
  long eig_t = 0;
  long eig_l = 0;
  int ray = 1;
};

/// The shift of one fan point under the transform: target.j = source.j + r|n|.
/// Exists only for commensurate momenta and a nonzero singular value.
struct FanArrow {
  FanPoint source;
  FanPoint target;
  RationalMomentum r{1, 1};
};

/// All points with 1 <= |n| <= n_max, 0 <= j <= j_max; n ascending, then j.
std::vector<FanPoint> fan_points(int n_max, int j_max);

/// One arrow per point whose shifted target is also in `points` and whose
/// singular value is nonzero. Kernel modes (a diagonal Laguerre zero) get no
/// arrow even when the shift lands inside the lattice.
std::vector<FanArrow> fan_action(const std::vector<FanPoint>& points,
                                 const RationalMomentum& r);

}  // namespace hxray
