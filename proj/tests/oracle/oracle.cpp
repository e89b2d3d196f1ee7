#include "oracle.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oracle {
namespace {

namespace mp = boost::multiprecision;
using R50 = mp::cpp_bin_float_50;
using R100 = mp::cpp_bin_float_100;
using R300 = mp::number<mp::cpp_bin_float<300>>;

template <class R>
R pi() {
  return boost::math::constants::pi<R>();
}

// Orthonormal Hermite p_0..p_n at x; returns p_n, p_{n-1} and the number
// of sign changes.
struct Rec {
  R50 pn, pm1, sum_sq;
  std::size_t changes;
};

// p_{k+1} = c_k x p_k - d_k p_{k-1} with c_k = sqrt(2/(k+1)), d_k = sqrt(k/(k+1)).
struct HermiteTable {
  std::vector<R50> c, d;
  R50 p0;

  explicit HermiteTable(std::size_t n) : c(n), d(n), p0(1 / mp::sqrt(mp::sqrt(pi<R50>()))) {
    for (std::size_t k = 0; k < n; ++k) {
      c[k] = mp::sqrt(R50(2) / (k + 1));
      d[k] = mp::sqrt(R50(k) / (k + 1));
    }
  }
};

Rec hermite_rec(const HermiteTable& t, const R50& x) {
  const std::size_t n = t.c.size();
  R50 p0 = t.p0;
  R50 p1 = 0;
  R50 sum = 0;
  std::size_t changes = 0;
  int sign_prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    sum += p0 * p0;
    R50 next = t.c[k] * x * p0;
    next -= t.d[k] * p1;
    p1 = std::move(p0);
    p0 = std::move(next);
    const int s = p0 > 0 ? 1 : (p0 < 0 ? -1 : -sign_prev);
    if (s != sign_prev) ++changes;
    sign_prev = s;
  }
  return {p0, p1, sum, changes};
}

}  // namespace

Rule hermite_rule(std::size_t n, const std::vector<double>& seeds) {
  if (seeds.size() != n) throw std::invalid_argument("oracle::hermite_rule: need n seeds");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const R50 tol("1e-40");
  std::vector<R50> xs(n);
  const HermiteTable tab(n);
  const R50 dscale = mp::sqrt(R50(2 * n));
  for (std::size_t k = 0; k < n; ++k) {
    R50 x = seeds[k];
    for (int it = 0; it < 60; ++it) {
      const Rec e = hermite_rec(tab, x);
      // p_n' = sqrt(2n) p_{n-1}
      const R50 step = e.pn / (dscale * e.pm1);
      x -= step;
      if (mp::abs(step) < tol * (1 + mp::abs(x))) break;
      if (it == 59) throw std::runtime_error("oracle::hermite_rule: Newton stalled");
    }
    xs[k] = x;
    const Rec e = hermite_rec(tab, x);
    r.nodes[k] = static_cast<double>(x);
    r.weights[k] = static_cast<double>(1 / e.sum_sq);
  }
  // zeros below a point = n - sign changes
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const R50 mid = (xs[k] + xs[k + 1]) / 2;
    if (n - hermite_rec(tab, mid).changes != k + 1) {
      throw std::runtime_error("oracle::hermite_rule: root " + std::to_string(k + 1) +
                               " not isolated");
    }
  }
  return r;
}

Pair hermite_function(std::size_t n, double xd) {
  const R50 x = xd;
  const Rec e = hermite_rec(HermiteTable(n), x);
  const R50 f = mp::exp(-x * x / 2);
  const R50 dp = n == 0 ? R50(0) : mp::sqrt(R50(2 * n)) * e.pm1;
  return {static_cast<double>(e.pn * f), static_cast<double>((dp - x * e.pn) * f)};
}

Pair scaled_U(std::size_t n, double xd) {
  const R100 x = xd;
  R100 h0 = 1, h1 = 2 * x;  // physicists' H_n
  R100 hn = n == 0 ? h0 : h1;
  R100 hnm1 = h0;
  for (std::size_t k = 1; k < n; ++k) {
    const R100 next = 2 * x * h1 - 2 * R100(k) * h0;
    h0 = h1;
    h1 = next;
    hn = h1;
    hnm1 = h0;
  }
  const R100 mu2 = 2 * R100(n) + 1;
  const R100 mu = mp::sqrt(mu2);
  const R100 z = mu2 / 2;
  const R100 h = mp::pow(R100(2), -mu2 / 4 - R100(1) / 4) * mp::exp(-mu2 / 4) *
                 mp::pow(mu, mu2 / 2 - R100(1) / 2);
  const R100 ratio = boost::math::tgamma(R100(1) / 2 + z) /
                     (mp::sqrt(2 * pi<R100>()) * mp::exp(-z) * mp::pow(z, z));
  const R100 g = h * (1 + ratio) / 2;
  const R100 sc = mp::pow(R100(2), R100(1) / 4) /
                  (mp::sqrt(pi<R100>()) * mp::pow(R100(n), R100(1) / 4) * g);
  const R100 pre = mp::pow(R100(2), -R100(n) / 2) * mp::exp(-x * x / 2) * sc;
  const R100 dh = 2 * R100(n) * hnm1;
  return {static_cast<double>(pre * hn), static_cast<double>(pre * (dh - x * hn) / mp::sqrt(R100(2)))};
}

Pair airy(double xd) {
  const R100 x = xd;
  const R100 third = R100(1) / 3;
  const R100 c1 = 1 / (mp::pow(R100(3), 2 * third) * boost::math::tgamma(2 * third));
  const R100 c2 = 1 / (mp::pow(R100(3), third) * boost::math::tgamma(third));
  // f = sum a_k, g = sum b_k with a_{k+1} = a_k x^3 / ((3k+2)(3k+3)),
  // b_{k+1} = b_k x^3 / ((3k+3)(3k+4)).
  R100 a = 1, b = x, f = 0, g = 0, fp = 0, gp = 1;
  const R100 x3 = x * x * x;
  for (int k = 0; k < 400; ++k) {
    f += a;
    g += b;
    if (k > 0) fp += a * 3 * k / x;
    if (k > 0) gp += b * (3 * k + 1) / x;
    a *= x3 / ((3 * k + 2) * (3 * k + 3));
    b *= x3 / ((3 * k + 3) * (3 * k + 4));
    if (k > 10 && mp::abs(a) + mp::abs(b) < R100("1e-90")) break;
  }
  if (xd == 0.0) {
    fp = 0;
    gp = 1;
  }
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

double airy_zero(int m) {
  // Zeros interlace a grid of step 0.05 closely enough for m <= 40; scan
  // down from 0 and bisect the m-th sign change.
  double hi = 0.0;
  double fhi = airy(hi).value;
  int found = 0;
  for (double x = -0.05;; x -= 0.05) {
    const double fx = airy(x).value;
    if ((fx > 0) != (fhi > 0)) {
      if (++found == m) {
        double lo = x;
        double up = hi;
        const bool lo_pos = fx > 0;
        for (int it = 0; it < 200 && up - lo > 1e-16 * std::abs(lo); ++it) {
          const double mid = 0.5 * (lo + up);
          if ((airy(mid).value > 0) == lo_pos) lo = mid; else up = mid;
        }
        return 0.5 * (lo + up);
      }
    }
    hi = x;
    fhi = fx;
    if (x < -40.0) throw std::runtime_error("oracle::airy_zero: m too large");
  }
}

double kepler_root(double rhs) {
  R50 lo = 0, hi = pi<R50>();
  const R50 r = rhs;
  for (int it = 0; it < 200; ++it) {
    const R50 mid = (lo + hi) / 2;
    if (mid - mp::sin(mid) < r) lo = mid; else hi = mid;
  }
  return static_cast<double>((lo + hi) / 2);
}

double freud_moment(int m, int k) {
  if (k % 2) return 0.0;
  return std::exp(std::lgamma((k + 1.0) / (2.0 * m))) / m;
}

double poly_weight_moment(const std::vector<double>& P, int k) {
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [&](long double x) {
    long double p = 0.0L;
    for (std::size_t i = P.size(); i-- > 0;) p = p * x + P[i];
    return std::pow(x, k) * std::exp(-p);
  };
  const double inf = std::numeric_limits<double>::infinity();
  return static_cast<double>(gauss_kronrod<long double, 61>::integrate(f, -inf, inf, 15, 1e-17L));
}

namespace {

std::vector<R300> freud_b_mp(int m, std::size_t count) {
  const std::size_t nmom = 2 * count;
  std::vector<R300> mom(nmom);
  for (std::size_t k = 0; k < nmom; ++k) {
    mom[k] = k % 2 ? R300(0)
                   : R300(boost::math::tgamma(R300(k + 1) / (2 * m)) / m);
  }
  // Chebyshev algorithm; a_k vanish by symmetry but are carried anyway.
  std::vector<R300> a(count), b(count);
  std::vector<R300> sig_prev(nmom, R300(0)), sig(mom);
  a[0] = mom[1] / mom[0];
  b[0] = mom[0];
  for (std::size_t k = 1; k < count; ++k) {
    std::vector<R300> next(nmom, R300(0));
    for (std::size_t l = k; l + k < nmom; ++l) {
      next[l] = sig[l + 1] - a[k - 1] * sig[l] - b[k - 1] * sig_prev[l];
    }
    a[k] = next[k + 1] / next[k] - sig[k] / sig[k - 1];
    b[k] = next[k] / sig[k - 1];
    sig_prev = std::move(sig);
    sig = std::move(next);
  }
  return b;
}

}  // namespace

std::vector<double> freud_b(int m, std::size_t count) {
  const auto b = freud_b_mp(m, count);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = static_cast<double>(b[k]);
  return out;
}

Rule freud_rule(int m, std::size_t n) {
  const auto b = freud_b_mp(m, n + 1);
  std::vector<R300> e(n);  // off-diagonal sqrt(b_k)
  for (std::size_t k = 1; k < n; ++k) e[k] = mp::sqrt(b[k]);
  // Sturm count of Jacobi-matrix eigenvalues below x (diagonal zero).
  const auto below = [&](const R300& x) {
    std::size_t cnt = 0;
    R300 d = -x;
    if (d < 0) ++cnt;
    for (std::size_t k = 1; k < n; ++k) {
      if (d == 0) d = R300("1e-280");
      d = -x - b[k] / d;
      if (d < 0) ++cnt;
    }
    return cnt;
  };
  R300 bound = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const R300 t = 2 * e[k];
    if (t > bound) bound = t;
  }
  bound += 1;
  Rule r;
  for (std::size_t k = 1; k <= n; ++k) {
    R300 lo = -bound, hi = bound;
    for (int it = 0; it < 72; ++it) {
      const R300 mid = (lo + hi) / 2;
      if (below(mid) >= k) hi = mid; else lo = mid;
    }
    const R300 x = (lo + hi) / 2;
    // Christoffel weight: 1 / sum p_j(x)^2 with orthonormal p_j.
    R300 p0 = 1 / mp::sqrt(b[0]), p1 = 0, s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      s += p0 * p0;
      const R300 next = (x * p0 - (j ? e[j] : R300(0)) * p1) / mp::sqrt(b[j + 1]);
      p1 = p0;
      p0 = next;
    }
    r.nodes.push_back(static_cast<double>(x));
    r.weights.push_back(static_cast<double>(1 / s));
  }
  return r;
}

}  // namespace oracle
