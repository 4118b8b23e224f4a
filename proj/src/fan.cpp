#include "hxray/fan.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>

namespace hxray {

std::vector<FanPoint> fan_points(int n_max, int j_max) {
  if (n_max < 1 || j_max < 0) throw std::invalid_argument("fan_points: bad bounds");
  std::vector<FanPoint> points;
  points.reserve(static_cast<std::size_t>(2 * n_max) * (j_max + 1));
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;
    for (int j = 0; j <= j_max; ++j) {
      FanPoint pt;
      pt.n = n;
      pt.j = j;
      pt.eig_t = 2L * n;
      pt.eig_l = 2L * std::abs(n) * (1 + 2L * j);
      pt.ray = j + 1;  // rays are labeled from 1, j from 0
      points.push_back(pt);
    }
  }
  return points;
}

std::vector<FanArrow> fan_action(const std::vector<FanPoint>& points,
                                 const RationalMomentum& r) {
  std::map<std::pair<int, int>, const FanPoint*> lattice;
  for (const auto& pt : points) lattice[{pt.n, pt.j}] = &pt;

  std::vector<FanArrow> arrows;
  for (const auto& pt : points) {
    if (!r.commensurate(pt.n)) continue;
    const SingularSystem sys = svd_factors(pt.n, pt.j, r);
    if (!(sys.s > 0.0)) continue;  // kernel modes are fixed, not shifted
    const auto target = lattice.find({pt.n, static_cast<int>(sys.target_j)});
    if (target == lattice.end()) continue;
    arrows.push_back({pt, *target->second, r});
  }
  return arrows;
}

}  // namespace hxray
