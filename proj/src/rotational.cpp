#include "cmc/rotational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "cmc/error.hpp"

namespace cmc {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

void require_h(double h) {
  if (!(h > 0.0 && h < 0.5)) throw DomainError("mean curvature h must lie in (0, 1/2)");
}

// Quantities shared by the integrands. With l = cosh rho:
//   sinh^2 rho - (2h l - alpha)^2 = q (l - phi)(l - b),  q = 1 - 4h^2.
struct Coeffs {
  double h, alpha, q, sq, phi, pm1, b, phi_b, n0;

  explicit Coeffs(const RotationalProfile& p)
      : h(p.h), alpha(p.alpha), q(1.0 - 4.0 * p.h * p.h), sq(std::sqrt(q)), phi(p.phi),
        pm1(p.phi_minus_one), b(p.b), phi_b(p.phi - p.b),
        n0(2.0 * p.h * p.phi_minus_one + (2.0 * p.h - p.alpha)) {}

  // dH = f(w) dw with cosh rho = w^2 + phi.
  double f(double w) const {
    const double w2 = w * w;
    const double l1 = w2 + pm1;
    if (l1 == 0.0) return 0.0;
    const double num = 2.0 * h * w2 + n0;
    return 2.0 * num / (sq * std::sqrt(w2 + phi_b) * std::sqrt(l1 * (w2 + phi + 1.0)));
  }

  // cosh rho - phi without cancellation.
  double lmphi(double rho, double rho0) const {
    return 2.0 * std::sinh(0.5 * (rho + rho0)) * std::sinh(0.5 * (rho - rho0));
  }
};

// Adaptive bisection driven by an absolute tolerance. Boost's own recursion
// scales the tolerance by the running estimate, which stalls on panels whose
// integral nearly cancels; scaling by the L1 norm instead does not.
// One Gauss-Kronrod pass. Boost reports the error of the integral mapped to
// [-1, 1]; rescale it to [a, b].
template <class F>
double gk_pass(F& f, double a, double b, double& err, double* l1 = nullptr) {
  const double est = GK::integrate(f, a, b, 0, 0.0, &err, l1);
  err *= 0.5 * (b - a);
  return est;
}

template <class F>
double adaptive(F& f, double a, double b, double abs_tol, unsigned depth, double& err_out) {
  double err = 0.0;
  const double est = gk_pass(f, a, b, err);
  if (err <= abs_tol || depth == 0) {
    err_out += err;
    return est;
  }
  const double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, 0.5 * abs_tol, depth - 1, err_out) +
         adaptive(f, mid, b, 0.5 * abs_tol, depth - 1, err_out);
}

template <class F>
double integrate_panel(F& f, double a, double b, const QuadratureOptions& opt, double& err_out,
                       double& l1_out) {
  double err = 0.0, l1 = 0.0;
  gk_pass(f, a, b, err, &l1);
  l1_out += l1;
  return adaptive(f, a, b, std::max(opt.rel_tol * l1, 1e-300), opt.max_depth, err_out);
}

// Integral of f over [w0, w1] split at sqrt(phi - 1) and at doubling points,
// so each panel sees at most one scale of variation.
template <class F>
double integrate_w(F&& f, double w0, double w1, double pm1, const QuadratureOptions& opt) {
  if (!(w1 > w0)) return 0.0;
  std::vector<double> cuts{w0};
  double c = pm1 > 0.0 ? std::min(std::sqrt(pm1), 0.5) : 0.5;
  while (c <= w0) c *= 2.0;
  for (; c < w1; c *= 2.0) cuts.push_back(c);
  cuts.push_back(w1);
  double sum = 0.0, err_sum = 0.0, l1_sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    sum += integrate_panel(f, cuts[i], cuts[i + 1], opt, err_sum, l1_sum);
  }
  if (!(err_sum <= 1e-8 * l1_sum)) {
    throw ConvergenceError("quadrature did not converge (error estimate " + std::to_string(err_sum) + ")");
  }
  return sum;
}

struct AlphaKey {
  double h, alpha;
  bool operator<(const AlphaKey& o) const { return std::pair(h, alpha) < std::pair(o.h, o.alpha); }
};

std::mutex g_asym_mutex;
std::map<AlphaKey, AsymptoticData> g_asym_cache;

}  // namespace

double slope_ch(double h) {
  require_h(h);
  return 2.0 * h / std::sqrt(1.0 - 4.0 * h * h);
}

RotationalProfile make_profile(double h, double alpha) {
  require_h(h);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("make_profile: alpha must be positive");
  RotationalProfile p;
  p.h = h;
  p.alpha = alpha;
  const double q = 1.0 - 4.0 * h * h;
  const double s = std::sqrt(q + alpha * alpha);
  p.phi = (-2.0 * alpha * h + s) / q;
  // phi - 1 = (alpha - 2h)^2 / (s + q + 2 alpha h), free of cancellation near alpha = 2h.
  p.phi_minus_one = (alpha - 2.0 * h) * (alpha - 2.0 * h) / (s + q + 2.0 * alpha * h);
  p.b = -(2.0 * h * alpha + s) / q;
  const double x = p.phi_minus_one;
  p.rho0 = std::log1p(x + std::sqrt(x * (x + 2.0)));
  return p;
}

AsymptoticData RotationalProfile::asymptotics() const {
  const AlphaKey key{h, alpha};
  {
    std::lock_guard lock(g_asym_mutex);
    if (auto it = g_asym_cache.find(key); it != g_asym_cache.end()) return it->second;
  }
  AsymptoticData data = asymptotic_constant(*this);
  std::lock_guard lock(g_asym_mutex);
  g_asym_cache.emplace(key, data);
  return data;
}

double u_alpha(const RotationalProfile& p, double rho) {
  if (rho < p.rho0) throw DomainError("u_alpha: rho below the base circle");
  if (rho == p.rho0) throw DomainError("u_alpha: singular at the base circle");
  const Coeffs c(p);
  const double lp = c.lmphi(rho, p.rho0);
  const double num = 2.0 * p.h * lp + c.n0;
  return num / (c.sq * std::sqrt(lp * (lp + c.phi_b)));
}

double height(const RotationalProfile& p, double rho, const QuadratureOptions& opt) {
  if (!(rho >= p.rho0)) throw DomainError("height: rho below the base circle");
  if (rho == p.rho0) return 0.0;
  const Coeffs c(p);
  const double wmax = std::sqrt(c.lmphi(rho, p.rho0));
  return integrate_w([&c](double w) { return c.f(w); }, 0.0, wmax, c.pm1, opt);
}

double height_inverse(const RotationalProfile& p, double t, const QuadratureOptions& opt) {
  const double lo = p.alpha <= 2.0 * p.h ? p.rho0 : min_circle_radius(p);
  const double h_lo = height(p, lo, opt);
  if (t < h_lo) throw DomainError("height_inverse: value below the monotone branch");
  if (t == h_lo) return lo;
  const double ch = slope_ch(p.h);
  double hi = std::max(lo + 1.0, (t - p.asymptotics().k_asym) / ch + 1.0);
  while (height(p, hi, opt) < t) {
    hi = lo + 2.0 * (hi - lo);
    if (hi > 700.0) throw DomainError("height_inverse: value out of range");
  }
  auto f = [&](double r) { return height(p, r, opt) - t; };
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(46), iters);
  return 0.5 * (a + b);
}

AsymptoticData asymptotic_constant(const RotationalProfile& p, const AsymptoticOptions& opt) {
  if (opt.window_points < 3) throw DomainError("asymptotic_constant: need at least 3 window points");
  const double ch = slope_ch(p.h);
  const double r0 = std::max(opt.window_start, p.rho0 + 1.0);
  const auto m = static_cast<std::size_t>(opt.window_points);
  std::vector<double> rho(m), D(m), d(m - 1);
  for (std::size_t i = 0; i < m; ++i) rho[i] = r0 + static_cast<double>(i);
  D[0] = height(p, rho[0]) - ch * rho[0];
  // Increments of H - c_h rho integrate u - c_h in a cancellation-free form:
  // with N = 2h L + n0, R^2 = L (L + phi - b), L = cosh rho - phi,
  //   u - c_h = (N^2 - 4h^2 R^2) / (sqrt(q) R (N + 2h R)),
  //   N^2 - 4h^2 R^2 = L (4h n0 - 4h^2 (phi - b)) + n0^2.
  const Coeffs cf(p);
  auto g = [&](double r) {
    const double L = cf.lmphi(r, p.rho0);
    const double R = std::sqrt(L * (L + cf.phi_b));
    const double N = 2.0 * p.h * L + cf.n0;
    const double top = L * (4.0 * p.h * cf.n0 - 4.0 * p.h * p.h * cf.phi_b) + cf.n0 * cf.n0;
    return top / (cf.sq * R * (N + 2.0 * p.h * R));
  };
  const QuadratureOptions qopt;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double err = 0.0, l1 = 0.0;
    d[i] = integrate_panel(g, rho[i], rho[i + 1], qopt, err, l1);
    D[i + 1] = D[i] + d[i];
  }
  const double e1 = std::exp(-1.0);
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const double r = d[i + 1] / d[i];
    if (!(std::abs(r - e1) <= opt.ratio_tolerance * e1)) {
      throw ConvergenceError("asymptotic_constant: increments do not decay like e^{-rho} (ratio " +
                             std::to_string(r) + ")");
    }
    ratio_sum += r;
  }
  AsymptoticData out;
  out.slope = ch;
  out.k_asym = D[m - 1] + d[m - 2] * e1 / (1.0 - e1);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = std::exp(-rho[i]);
    num += (D[i] - out.k_asym) * e;
    den += e * e;
  }
  out.decay_bound = std::abs(num / den);
  out.fitted_ratio = ratio_sum / static_cast<double>(d.size() - 1);
  return out;
}

double dheight_dalpha(double h, double alpha, double rho, const QuadratureOptions& opt) {
  const RotationalProfile p = make_profile(h, alpha);
  if (alpha == 2.0 * h) return -std::numeric_limits<double>::infinity();
  if (!(rho > p.rho0)) throw DomainError("dheight_dalpha: rho must exceed the base radius");
  const Coeffs c(p);
  const double s = std::sqrt(c.q + alpha * alpha);
  const double dphi = (-2.0 * h + alpha / s) / c.q;
  const double db = (-2.0 * h - alpha / s) / c.q;

  // d/dalpha of the w-integrand at fixed w; the three terms differentiate the
  // numerator, sqrt(l - b) and sqrt(l^2 - 1) in turn.
  auto g = [&](double w) {
    const double w2 = w * w;
    const double l = w2 + c.phi;
    const double d1 = w2 + c.phi_b;
    const double d2 = (w2 + c.pm1) * (l + 1.0);
    const double num = 2.0 * h * w2 + c.n0;
    const double sd1 = std::sqrt(d1), sd2 = std::sqrt(d2);
    const double psi1 = (-1.0 + 2.0 * h * dphi) / (sd1 * sd2);
    const double psi2 = -num * (dphi - db) / (2.0 * d1 * sd1 * sd2);
    const double psi3 = -num * l * dphi / (sd1 * d2 * sd2);
    return 2.0 * (psi1 + psi2 + psi3) / c.sq;
  };
  const double wmax = std::sqrt(c.lmphi(rho, p.rho0));
  const double interior = integrate_w(g, 0.0, wmax, c.pm1, opt);
  const double boundary = c.f(wmax) * (-dphi) / (2.0 * wmax);
  return interior + boundary;
}

BetaBarResult beta_bar(double h, const BetaBarOptions& opt) {
  require_h(h);
  static std::mutex mu;
  static std::map<std::tuple<double, double, int, double>, BetaBarResult> memo;
  const auto key = std::tuple(h, opt.cap_factor, opt.grid_per_2h, opt.fd_step);
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const double two_h = 2.0 * h;
  const double step = two_h / opt.grid_per_2h;
  auto k = [&](double a) { return make_profile(h, a).asymptotics().k_asym; };
  auto certified = [&](double a) { return k(a + opt.fd_step * a) < k(a); };

  BetaBarResult res;
  for (int j = 1; j <= opt.grid_per_2h; ++j) {
    ++res.grid_points;
    if (!certified(step * j)) {
      throw ConvergenceError("beta_bar: k_alpha not decreasing below 2h (alpha = " +
                             std::to_string(step * j) + ")");
    }
  }
  const double cap = opt.cap_factor * two_h;
  double last = two_h;
  res.capped = true;
  for (int j = 1; two_h + step * j <= cap * (1.0 + 1e-12); ++j) {
    const double a = two_h + step * j;
    ++res.grid_points;
    if (!certified(a)) {
      double good = last, bad = a;
      for (int it = 0; it < 40 && bad - good > 1e-10 * bad; ++it) {
        const double mid = 0.5 * (good + bad);
        (certified(mid) ? good : bad) = mid;
      }
      last = std::max(good, two_h * (1.0 + 1e-6));
      res.capped = false;
      break;
    }
    last = a;
  }
  res.value = last;
  std::lock_guard lock(mu);
  memo.emplace(key, res);
  return res;
}

double rho_of_alpha(double h, double alpha) { return make_profile(h, alpha).rho0; }

double rho_h_lower_limit(double h) {
  require_h(h);
  return std::acosh(1.0 / std::sqrt(1.0 - 4.0 * h * h));
}

double alpha_for_radius(double h, double r, Branch branch) {
  require_h(h);
  if (!(r >= 0.0)) throw DomainError("alpha_for_radius: radius must be non-negative");
  const double two_h = 2.0 * h;
  if (r == 0.0) return two_h;
  double lo, hi;
  if (branch == Branch::lower) {
    if (!(r < rho_h_lower_limit(h))) throw DomainError("alpha_for_radius: radius beyond the lower branch");
    lo = 0.0;
    hi = two_h;
  } else {
    lo = two_h;
    hi = 2.0 * two_h;
    while (rho_of_alpha(h, hi) < r) {
      lo = hi;
      hi *= 2.0;
    }
  }
  // rho^h decreases on the lower branch and increases on the upper one.
  const bool increasing = branch == Branch::upper;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double rm = mid > 0.0 ? rho_of_alpha(h, mid) : rho_h_lower_limit(h);
    if ((rm < r) == increasing) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double d_infinity(double h, double alpha, double beta) {
  if (alpha == beta) return 0.0;
  const double ka = make_profile(h, alpha).asymptotics().k_asym;
  const double kb = make_profile(h, beta).asymptotics().k_asym;
  return std::abs(kb - ka) / slope_ch(h);
}

double vertical_asymptotic_distance(double h, double alpha1, double alpha2) {
  if (alpha1 == alpha2) return 0.0;
  return make_profile(h, alpha1).asymptotics().k_asym - make_profile(h, alpha2).asymptotics().k_asym;
}

double min_circle_radius(const RotationalProfile& p) {
  if (!(p.alpha > 2.0 * p.h)) throw DomainError("min_circle_radius: requires alpha > 2h");
  return std::acosh(p.alpha / (2.0 * p.h));
}

double d_beta(const RotationalProfile& p) { return min_circle_radius(p) - p.rho0; }

RotationalTable::RotationalTable(const RotationalProfile& p, double rho_max, std::size_t intervals)
    : p_(p), rho_max_(rho_max) {
  if (!(rho_max > p.rho0) || intervals < 8) throw DomainError("RotationalTable: empty range");
  const Coeffs c(p);
  const double X = std::sqrt(rho_max - p.rho0);
  dx_ = X / static_cast<double>(intervals);
  y_.assign(intervals + 1, 0.0);
  dy_.assign(intervals + 1, 0.0);
  QuadratureOptions opt;
  double w_prev = 0.0;
  for (std::size_t i = 1; i <= intervals; ++i) {
    const double x = dx_ * static_cast<double>(i);
    const double rho = p.rho0 + x * x;
    const double w = std::sqrt(c.lmphi(rho, p.rho0));
    y_[i] = y_[i - 1] + integrate_w([&c](double t) { return c.f(t); }, w_prev, w, c.pm1, opt);
    dy_[i] = 2.0 * x * u_alpha(p, rho);
    w_prev = w;
  }
  // dH/dx at x = 0: u ~ n0 / (sqrt(q) sqrt(sinh(rho0) (phi - b)) x).
  dy_[0] = p.rho0 > 0.0 ? 2.0 * c.n0 / (c.sq * std::sqrt(std::sinh(p.rho0) * c.phi_b)) : 0.0;
}

double RotationalTable::operator()(double rho) const {
  if (rho < p_.rho0) {
    if (rho < p_.rho0 - 1e-13) throw DomainError("RotationalTable: rho below the base circle");
    rho = p_.rho0;
  }
  const double x = std::sqrt(rho - p_.rho0);
  const double t_all = x / dx_;
  const auto n = y_.size() - 1;
  if (t_all >= static_cast<double>(n)) {
    return rho <= rho_max_ ? y_[n] : height(p_, rho);
  }
  const auto i = static_cast<std::size_t>(t_all);
  const double t = t_all - static_cast<double>(i);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0, h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h10 * dx_ * dy_[i] + h01 * y_[i + 1] + h11 * dx_ * dy_[i + 1];
}

double RotationalTable::derivative(double rho) const {
  if (rho > p_.rho0) return u_alpha(p_, rho);
  if (rho < p_.rho0 - 1e-13) throw DomainError("RotationalTable: rho below the base circle");
  if (p_.alpha == 2.0 * p_.h) return 0.0;
  return p_.alpha < 2.0 * p_.h ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
}

}  // namespace cmc
