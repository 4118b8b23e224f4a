#include "hxray/xray.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "hxray/special_functions.hpp"

namespace hxray {

namespace {

constexpr double kPi = std::numbers::pi;

// |M| below this is an exact kernel zero for our purposes: true coefficient
// moduli at desk scale stay above ~1e-2 times their prefactor, while genuine
// zeros only pick up rounding noise ~1e-16.
constexpr double kKernelTol = 1e-14;

double prefactor_2pi_sqrt_ab(const RationalMomentum& r) {
  return 2.0 * kPi * std::sqrt(static_cast<double>(r.a()) * static_cast<double>(r.b()));
}

}  // namespace

void SignalDecomposition::add_atom(const std::array<double, 2>& xi, Complex amp) {
  if (!std::isfinite(xi[0]) || !std::isfinite(xi[1]) || !std::isfinite(amp.real()) ||
      !std::isfinite(amp.imag())) {
    throw std::invalid_argument("add_atom: non-finite entries");
  }
  for (auto& atom : planar) {
    if (atom.xi == xi) {
      atom.amp += amp;
      return;
    }
  }
  planar.push_back({xi, amp});
}

void SignalDecomposition::add_mode(const ModeIndex& m, Complex amp) {
  if (!valid_mode(m)) throw std::invalid_argument("add_mode: invalid mode index");
  if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
    throw std::invalid_argument("add_mode: non-finite amplitude");
  }
  modes[m] += amp;
}

Complex evaluate(const SignalDecomposition& x, const HeisenbergPoint& p) {
  Complex v{0.0, 0.0};
  for (const auto& atom : x.planar) {
    const double phase = p.z.real() * atom.xi[0] + p.z.imag() * atom.xi[1];
    v += atom.amp * std::exp(Complex(0.0, phase));
  }
  for (const auto& [m, amp] : x.modes) v += amp * basis_function(m, p);
  return v;
}

double mode_norm(const SignalDecomposition& x) {
  double s = 0.0;
  for (const auto& [m, amp] : x.modes) s += std::norm(amp);
  return std::sqrt(s);
}

Complex xray_quadrature(const PointFunction& f, const RationalMomentum& r,
                        const HeisenbergPoint& p, int s_nodes) {
  if (s_nodes < 16) throw std::invalid_argument("xray_quadrature: need s_nodes >= 16");
  const double period = r.period();
  const double h = period / s_nodes;
  Complex sum{0.0, 0.0};
  for (int i = 0; i < s_nodes; ++i) {
    sum += f(group_mul(p, geodesic(r, h * i)));
  }
  return h * sum;
}

Complex adjoint_quadrature(const PointFunction& f, const RationalMomentum& r,
                           const HeisenbergPoint& p, int s_nodes) {
  if (s_nodes < 16) throw std::invalid_argument("adjoint_quadrature: need s_nodes >= 16");
  const double period = r.period();
  const double h = period / s_nodes;
  Complex sum{0.0, 0.0};
  for (int i = 0; i < s_nodes; ++i) {
    sum += f(group_mul(p, group_inv(geodesic(r, h * i))));
  }
  return h * sum;
}

Complex singular_coefficient(int n, int j, const RationalMomentum& r) {
  if (n == 0) throw std::invalid_argument("singular_coefficient: n must be nonzero");
  if (j < 0) throw std::invalid_argument("singular_coefficient: j must be >= 0");
  if (!r.commensurate(n)) return {0.0, 0.0};

  // 2 pi sqrt(ab) M^n_{j, j+m}(sqrt r, 0) with m = r|n|; the entry-function
  // branch collapses to sqrt(j!/(j+m)!) (-1)^m m^{m/2} e^{-m/2} L_j^{(m)}(m),
  // evaluated with m held exactly integer so kernel zeros stay exact.
  const long m = r.shift(n);
  const double md = static_cast<double>(m);
  const double log_pref = 0.5 * (std::lgamma(j + 1.0) - std::lgamma(j + md + 1.0)) +
                          0.5 * md * std::log(md) - 0.5 * md;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double entry = sign * std::exp(log_pref) * laguerre_eval(j, md, md);
  if (std::abs(entry) < kKernelTol) return {0.0, 0.0};
  return {prefactor_2pi_sqrt_ab(r) * entry, 0.0};
}

double planar_multiplier(const std::array<double, 2>& xi, const RationalMomentum& r) {
  const double freq = std::sqrt(r.value()) * std::hypot(xi[0], xi[1]);
  return prefactor_2pi_sqrt_ab(r) * bessel_j0(freq);
}

SignalDecomposition forward_spectral(const SignalDecomposition& x, const RationalMomentum& r) {
  SignalDecomposition out;
  for (const auto& atom : x.planar) {
    out.add_atom(atom.xi, planar_multiplier(atom.xi, r) * atom.amp);
  }
  for (const auto& [m, amp] : x.modes) {
    const Complex coef = singular_coefficient(m.n, m.j, r);
    if (coef == Complex{0.0, 0.0}) continue;
    const ModeIndex target{m.n, m.j + static_cast<int>(r.shift(m.n)), m.k};
    out.add_mode(target, coef * amp);
  }
  return out;
}

SignalDecomposition adjoint_spectral(const SignalDecomposition& y, const RationalMomentum& r) {
  SignalDecomposition out;
  for (const auto& atom : y.planar) {
    out.add_atom(atom.xi, planar_multiplier(atom.xi, r) * atom.amp);
  }
  for (const auto& [m, amp] : y.modes) {
    if (!r.commensurate(m.n)) continue;
    const int source_j = m.j - static_cast<int>(r.shift(m.n));
    if (source_j < 0) continue;
    const Complex coef = singular_coefficient(m.n, source_j, r);
    if (coef == Complex{0.0, 0.0}) continue;
    out.add_mode({m.n, source_j, m.k}, std::conj(coef) * amp);
  }
  return out;
}

SignalDecomposition normal_spectral(const SignalDecomposition& x, const RationalMomentum& r) {
  return adjoint_spectral(forward_spectral(x, r), r);
}

SingularSystem svd_factors(int n, int j, const RationalMomentum& r) {
  SingularSystem sys;
  sys.n = n;
  sys.j = j;
  sys.r = r;
  sys.has_target = r.commensurate(n);
  sys.target_j = sys.has_target ? j + r.shift(n) : 0;
  const Complex coef = singular_coefficient(n, j, r);
  sys.s = std::abs(coef);
  sys.phase = sys.s > 0.0 ? coef / sys.s : Complex{1.0, 0.0};
  return sys;
}

std::vector<AuditRow> constant_audit(int m_max, int j_max) {
  if (m_max < 1 || j_max < 0) throw std::invalid_argument("constant_audit: bad bounds");
  std::vector<AuditRow> rows;
  const RationalMomentum unit{1, 1};
  for (int m = 1; m <= m_max; ++m) {
    for (int j = 0; j <= j_max; ++j) {
      AuditRow row;
      row.m = m;
      row.j = j;
      // n = m at r = 1 makes sqrt(ab) = 1, so the coefficient is |c(m, j)|.
      row.oracle_modulus = std::abs(singular_coefficient(m, j, unit));
      const double md = static_cast<double>(m);
      row.printed_modulus =
          2.0 * kPi *
          std::exp(0.5 * (std::lgamma(j + 1.0) - std::lgamma(j + md + 1.0)) +
                   0.5 * md * std::log(md) - 0.5 * kPi * md) *
          std::abs(laguerre_eval(j, md, md));
      row.ratio = row.printed_modulus > 0.0 ? row.oracle_modulus / row.printed_modulus : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

VerifyResult verify_oracle_equivalence(const VerifyOptions& opt, std::ostream* log) {
  if (opt.n_max < 1 || opt.j_max < 0 || opt.k_max < 0 || opt.points < 1 ||
      opt.quad_nodes < 16 || opt.momenta.empty()) {
    throw std::invalid_argument("verify: bad bounds");
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto random_point = [&]() -> HeisenbergPoint {
    const double rho = 1.3 * std::sqrt(unit(rng));
    const double theta = 2.0 * kPi * unit(rng);
    return {rho * std::exp(Complex(0.0, theta)), kPi * unit(rng)};
  };

  VerifyResult result;
  for (const auto& r : opt.momenta) {
    for (int n = -opt.n_max; n <= opt.n_max; ++n) {
      if (n == 0) continue;
      for (int j = 0; j <= opt.j_max; ++j) {
        const Complex coef = singular_coefficient(n, j, r);
        const long target_j = r.commensurate(n) ? j + r.shift(n) : -1;
        for (int k = 0; k <= opt.k_max; ++k) {
          const ModeIndex source{n, j, k};
          const PointFunction source_fn = [&](const HeisenbergPoint& p) {
            return basis_function(source, p);
          };
          for (int pt = 0; pt < opt.points; ++pt) {
            const HeisenbergPoint p = random_point();
            Complex expected{0.0, 0.0};
            if (coef != Complex{0.0, 0.0}) {
              const ModeIndex target{n, static_cast<int>(target_j), k};
              expected = coef * basis_function(target, p);
            }
            const Complex got = xray_quadrature(source_fn, r, p, opt.quad_nodes);
            const double err = std::abs(got - expected);
            const double tol =
                std::max(opt.rel_tol * std::max(std::abs(got), std::abs(expected)), opt.abs_tol);
            ++result.checked;
            result.worst_abs_err = std::max(result.worst_abs_err, err);
            if (err > tol) {
              ++result.failures;
              if (log) {
                *log << "verify: mode (n=" << n << ", j=" << j << ", k=" << k << ") r=" << r.str()
                     << " |quadrature - spectral| = " << err << " exceeds " << tol << "\n";
              }
            }
          }
        }
      }
    }
  }
  return result;
}

}  // namespace hxray
