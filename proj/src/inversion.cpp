#include "hxray/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "hxray/special_functions.hpp"

namespace hxray {

namespace {

// Coefficients below this in every channel put a mode in the joint kernel.
constexpr double kUnresolvedTol = 1e-14;

std::vector<double> zero_witnesses(ZeroKind kind, int order_j, double window, double step) {
  const ZeroScan scan = scan_zeros(kind, order_j, 0.0, window, step);
  std::vector<double> out;
  out.reserve(scan.zeros.size());
  for (const auto& z : scan.zeros) out.push_back(z.witness);
  return out;
}

}  // namespace

TwoRadiusReport two_radius_check(const RationalMomentum& r1, const RationalMomentum& r2,
                                 int j_max, int n_max, double zero_window, double tol) {
  if (r1 == r2) throw std::invalid_argument("two_radius_check: momenta must differ");
  if (j_max < 0 || n_max < 1 || !(zero_window > 0.0) || !(tol > 0.0)) {
    throw std::invalid_argument("two_radius_check: bad scan bounds");
  }

  TwoRadiusReport report;
  report.r1 = r1;
  report.r2 = r2;
  report.j_max = j_max;
  report.n_max = n_max;
  report.zero_window = zero_window;
  report.tol = tol;

  // Joint kernel of modes with r1 n and r2 n both zero requires two zeros of
  // the same l_j in ratio r1/r2. The first zero of l_j sits near 1.55/j and
  // consecutive zeros are several times that apart, so a step of 1/(2j)
  // resolves every crossing.
  const double ratio = r1.value() / r2.value();
  for (int j = 0; j <= j_max; ++j) {
    const double step = std::min(0.01, 1.0 / (2.0 * std::max(j, 1)));
    const std::vector<double> zs =
        zero_witnesses(ZeroKind::diagonal_laguerre, j, zero_window, step);
    for (const double z1 : zs) {
      for (const double z2 : zs) {
        if (std::abs(z1 / z2 - ratio) <= tol * ratio) {
          report.laguerre_ratio_hits.push_back({j, z1, z2});
        }
      }
    }
  }

  const double bessel_ratio = std::sqrt(ratio);
  const std::vector<double> j0_zeros =
      zero_witnesses(ZeroKind::bessel_j0, -1, zero_window, 0.01);
  for (const double z1 : j0_zeros) {
    for (const double z2 : j0_zeros) {
      if (std::abs(z1 / z2 - bessel_ratio) <= tol * bessel_ratio) {
        report.bessel_ratio_hits.push_back({z1, z2});
      }
    }
  }

  // Residue classes of n killed by both delta_Z selectors.
  report.gap_modulus = std::lcm(r1.b(), r2.b());
  for (long c = 0; c < report.gap_modulus; ++c) {
    if (c % r1.b() != 0 && c % r2.b() != 0) {
      // Only report classes realized by some frequency in the scan bounds.
      bool realized = false;
      for (long n = 1; n <= n_max && !realized; ++n) {
        if (n % report.gap_modulus == c || (report.gap_modulus - n % report.gap_modulus) % report.gap_modulus == c) {
          realized = true;
        }
      }
      if (realized) report.delta_z_gap.push_back(c);
    }
  }

  const bool clean = report.laguerre_ratio_hits.empty() && report.bessel_ratio_hits.empty() &&
                     report.delta_z_gap.empty();
  report.verdict = clean ? TwoRadiusVerdict::injective_on_scan : TwoRadiusVerdict::obstructed;
  return report;
}

ReconstructionResult reconstruct(const std::vector<Measurement>& channels,
                                 const ReconstructionBounds& bounds, double ridge) {
  if (channels.empty()) throw std::invalid_argument("reconstruct: no measurements");
  if (bounds.n_max < 1 || bounds.j_max < 0 || bounds.k_max < 0) {
    throw std::invalid_argument("reconstruct: bad bounds");
  }
  if (!(ridge >= 0.0)) throw std::invalid_argument("reconstruct: ridge must be >= 0");
  for (std::size_t i = 0; i < channels.size(); ++i) {
    for (std::size_t l = i + 1; l < channels.size(); ++l) {
      if (channels[i].r == channels[l].r) {
        throw std::invalid_argument("reconstruct: duplicate momentum " + channels[i].r.str());
      }
    }
  }

  ReconstructionResult result;

  // Per-mode least squares: x = sum conj(c_i) y_i / (sum |c_i|^2 + ridge).
  // A missing measurement amplitude at a visible target is data saying zero.
  for (int n = -bounds.n_max; n <= bounds.n_max; ++n) {
    if (n == 0) continue;
    for (int j = 0; j <= bounds.j_max; ++j) {
      for (int k = 0; k <= bounds.k_max; ++k) {
        const ModeIndex source{n, j, k};
        Complex accum{0.0, 0.0};
        double gram = 0.0;
        double s_max = 0.0;
        for (const auto& channel : channels) {
          const Complex coef = singular_coefficient(n, j, channel.r);
          const double s = std::abs(coef);
          if (s < kUnresolvedTol) continue;
          s_max = std::max(s_max, s);
          const ModeIndex target{n, j + static_cast<int>(channel.r.shift(n)), k};
          const auto it = channel.data.modes.find(target);
          const Complex y = it == channel.data.modes.end() ? Complex{0.0, 0.0} : it->second;
          accum += std::conj(coef) * y;
          gram += s * s;
        }
        if (s_max == 0.0) {
          result.unresolved.push_back(source);
          continue;
        }
        result.per_mode_condition[source] = 1.0 / s_max;
        const Complex x = accum / (gram + ridge);
        if (x != Complex{0.0, 0.0}) result.signal.add_mode(source, x);
      }
    }
  }

  // Planar atoms keep their frequency; divide through the channel with the
  // larger-magnitude Bessel multiplier.
  std::vector<std::array<double, 2>> freqs;
  for (const auto& channel : channels) {
    for (const auto& atom : channel.data.planar) {
      if (std::find(freqs.begin(), freqs.end(), atom.xi) == freqs.end()) {
        freqs.push_back(atom.xi);
      }
    }
  }
  for (const auto& xi : freqs) {
    double best = 0.0;
    Complex y{0.0, 0.0};
    for (const auto& channel : channels) {
      const double mult = planar_multiplier(xi, channel.r);
      if (std::abs(mult) <= std::abs(best)) continue;
      best = mult;
      y = {0.0, 0.0};
      for (const auto& atom : channel.data.planar) {
        if (atom.xi == xi) y = atom.amp;
      }
    }
    if (best == 0.0) continue;  // invisible to every channel
    const Complex x = best * y / (best * best + ridge);
    if (x != Complex{0.0, 0.0}) result.signal.add_atom(xi, x);
  }

  return result;
}

ReconstructionResult reconstruct(const SignalDecomposition& g1, const SignalDecomposition& g2,
                                 const RationalMomentum& r1, const RationalMomentum& r2,
                                 const ReconstructionBounds& bounds, double ridge) {
  return reconstruct(std::vector<Measurement>{{g1, r1}, {g2, r2}}, bounds, ridge);
}

}  // namespace hxray
