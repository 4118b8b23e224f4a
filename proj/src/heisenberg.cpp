#include "hxray/heisenberg.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hxray {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

// Gauss-Legendre nodes and weights on [0, 1], by Newton iteration on the
// Legendre recurrence. n is small (<= a few hundred), so no caching.
void gauss_legendre_unit(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1], reversing to ascending order
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace

double reduce_mod_pi(double t) {
  require_finite(t, "central coordinate");
  double r = t - kPi * std::floor(t / kPi);
  if (r >= kPi) r -= kPi;  // floor rounding can leave r == pi
  if (r < 0.0) r += kPi;
  return r;
}

HeisenbergPoint group_mul(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  const double twist = 0.5 * (p.z.real() * q.z.imag() - p.z.imag() * q.z.real());
  return {p.z + q.z, p.t + q.t + twist};
}

HeisenbergPoint group_inv(const HeisenbergPoint& p) { return {-p.z, -p.t}; }

RationalMomentum::RationalMomentum(long num, long den) : a_(num), b_(den) {
  if (a_ <= 0 || b_ <= 0) {
    throw std::invalid_argument("momentum must be a positive rational");
  }
  const long g = std::gcd(a_, b_);
  a_ /= g;
  b_ /= g;
}

double RationalMomentum::period() const {
  return 2.0 * kPi * std::sqrt(static_cast<double>(a_) * static_cast<double>(b_));
}

bool RationalMomentum::commensurate(long n) const { return (a_ * n) % b_ == 0; }

long RationalMomentum::shift(long n) const {
  const long m = a_ * std::labs(n);
  if (m % b_ != 0) {
    throw std::invalid_argument("shift undefined: r*n is not an integer");
  }
  return m / b_;
}

std::string RationalMomentum::str() const {
  return b_ == 1 ? std::to_string(a_) : std::to_string(a_) + "/" + std::to_string(b_);
}

RationalMomentum RationalMomentum::parse(const std::string& text) {
  const auto parse_positive = [&](const std::string& part) -> long {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("momentum must be A or A/B with positive integers, got '" +
                                  text + "'");
    }
    long v = 0;
    try {
      v = std::stol(part);
    } catch (const std::exception&) {
      throw std::invalid_argument("momentum out of range: '" + text + "'");
    }
    if (v <= 0) throw std::invalid_argument("momentum parts must be positive: '" + text + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return {parse_positive(text), 1};
  return {parse_positive(text.substr(0, slash)), parse_positive(text.substr(slash + 1))};
}

HeisenbergPoint geodesic(const RationalMomentum& r, double s) {
  require_finite(s, "geodesic parameter");
  const double sq = std::sqrt(r.value());
  return {sq * std::exp(Complex(0.0, s / sq)), 0.5 * sq * s};
}

bool valid_mode(const ModeIndex& m) { return m.n != 0 && m.j >= 0 && m.k >= 0; }

Complex entry_function(double h, int j, int k, const HeisenbergPoint& p) {
  if (h == 0.0) throw std::invalid_argument("entry_function: h must be nonzero");
  require_finite(h, "entry_function: h");
  if (j < 0 || k < 0) throw std::invalid_argument("entry_function: indices must be >= 0");

  Complex z = p.z;
  double t = p.t;
  if (h < 0.0) {  // M_jk^h(z, t) = M_jk^{|h|}(conj z, -t)
    h = -h;
    z = std::conj(z);
    t = -t;
  }

  const double hz2 = h * std::norm(z);
  const Complex central = std::exp(Complex(-0.5 * hz2, 2.0 * h * t));

  const int d = std::abs(j - k);
  if (d == 0) return laguerre_eval(j, 0.0, hz2) * central;

  const double az = std::abs(z);
  if (az == 0.0) return {0.0, 0.0};

  // sqrt(min!/max!) * (sqrt(h)|z|)^d through logs; separate sign and rotation.
  const double log_mag = 0.5 * (std::lgamma(std::min(j, k) + 1.0) -
                                std::lgamma(std::max(j, k) + 1.0)) +
                         d * std::log(std::sqrt(h) * az);
  const double lag = laguerre_eval(std::min(j, k), static_cast<double>(d), hz2);
  const double theta = std::arg(z);

  if (j > k) {
    // (+sqrt(h) z)^{j-k}
    return std::exp(log_mag) * std::exp(Complex(0.0, d * theta)) * lag * central;
  }
  // (-sqrt(h) conj(z))^{k-j}
  const double sign = (d % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_mag) * std::exp(Complex(0.0, -d * theta)) * lag * central;
}

Complex basis_function(const ModeIndex& m, const HeisenbergPoint& p) {
  if (!valid_mode(m)) throw std::invalid_argument("basis_function: invalid mode index");
  return (std::sqrt(static_cast<double>(std::abs(m.n))) / kPi) *
         entry_function(static_cast<double>(m.n), m.j, m.k, p);
}

QuadratureSpec QuadratureSpec::for_min_frequency(int min_abs_n) {
  if (min_abs_n < 1) throw std::invalid_argument("for_min_frequency: need min |n| >= 1");
  QuadratureSpec q;
  q.radial_cutoff = 8.0 / std::sqrt(static_cast<double>(min_abs_n));
  return q;
}

InnerProductEstimate inner_product_estimate(const PointFunction& f, const PointFunction& g,
                                            const QuadratureSpec& q) {
  if (q.t_nodes < 4 || q.radial_nodes < 4 || q.angular_nodes < 4 || q.s_nodes < 4) {
    throw std::invalid_argument("inner_product: all node counts must be >= 4");
  }
  if (!(q.radial_cutoff > 0.0)) {
    throw std::invalid_argument("inner_product: radial cutoff must be positive");
  }

  std::vector<double> rho_nodes;
  std::vector<double> rho_weights;
  gauss_legendre_unit(q.radial_nodes, rho_nodes, rho_weights);

  const double dt = kPi / q.t_nodes;
  const double dth = 2.0 * kPi / q.angular_nodes;

  Complex total{0.0, 0.0};
  double mass = 0.0;
  double outer_mass = 0.0;

  for (int ir = 0; ir < q.radial_nodes; ++ir) {
    const double rho = q.radial_cutoff * rho_nodes[ir];
    const double wr = q.radial_cutoff * rho_weights[ir] * rho * dth * dt;
    Complex ring{0.0, 0.0};
    double ring_mass = 0.0;
    for (int ith = 0; ith < q.angular_nodes; ++ith) {
      const double theta = dth * ith;
      const Complex z = rho * std::exp(Complex(0.0, theta));
      for (int it = 0; it < q.t_nodes; ++it) {
        HeisenbergPoint p;
        p.z = z;
        p.t = dt * it;  // already in [0, pi)
        const Complex v = f(p) * std::conj(g(p));
        ring += v;
        ring_mass += std::abs(v);
      }
    }
    total += wr * ring;
    mass += wr * ring_mass;
    if (ir == q.radial_nodes - 1) outer_mass = wr * ring_mass;
  }

  InnerProductEstimate est;
  est.value = total;
  est.outer_shell_share = mass > 0.0 ? outer_mass / mass : 0.0;
  return est;
}

Complex inner_product(const PointFunction& f, const PointFunction& g, const QuadratureSpec& q) {
  return inner_product_estimate(f, g, q).value;
}

}  // namespace hxray
