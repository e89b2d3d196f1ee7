#include "fastgh/specfun.hpp"

#include <cmath>
#include <numbers>

#include "fastgh/error.hpp"

namespace fastgh::specfun {
namespace {

// Ai and Ai' at x = -10, -9.5, ..., 10. Values are correctly rounded.
struct Anchor {
  double x, ai, aip;
};

constexpr Anchor kAnchors[] = {
    {-10.0, 4.0241238486443191e-2, 9.9626504413279006e-1},
    {-9.5, 3.1910324771912820e-1, -1.0809531881187124e-1},
    {-9.0, -2.2133721547341404e-2, -9.7566398092633159e-1},
    {-8.5, -3.3029023763020888e-1, -3.2313348284639136e-2},
    {-8.0, -5.2705050356386203e-2, 9.3556093819830655e-1},
    {-7.5, 3.2177571638064788e-1, 3.1880950669855460e-1},
    {-7.0, 1.8428083525050564e-1, -7.7100816841012655e-1},
    {-6.5, -2.3802030199711580e-1, -6.7495249251320217e-1},
    {-6.0, -3.2914517362982311e-1, 3.4593548728134289e-1},
    {-5.5, 1.7781541276574976e-2, 8.6419721777139839e-1},
    {-5.0, 3.5076100902411432e-1, 3.2719281855444314e-1},
    {-4.5, 2.9215278105595947e-1, -5.2336253231574770e-1},
    {-4.0, -7.0265532949289515e-2, -7.9062857536858138e-1},
    {-3.5, -3.7553382314043191e-1, -3.4344343345404815e-1},
    {-3.0, -3.7881429367765807e-1, 3.1458376921659881e-1},
    {-2.5, -1.1232506769296609e-1, 6.7885273426479436e-1},
    {-2.0, 2.2740742820168558e-1, 6.1825902074169104e-1},
    {-1.5, 4.6425657774886941e-1, 3.0918696720241042e-1},
    {-1.0, 5.3556088329235212e-1, -1.0160567116645209e-2},
    {-0.5, 4.7572809161053959e-1, -2.0408167033954739e-1},
    {0.0, 3.5502805388781724e-1, -2.5881940379280680e-1},
    {0.5, 2.3169360648083349e-1, -2.2491053266468389e-1},
    {1.0, 1.3529241631288142e-1, -1.5914744129679321e-1},
    {1.5, 7.1749497008105410e-2, -9.7382012842301319e-2},
    {2.0, 3.4924130423274379e-2, -5.3090384433653632e-2},
    {2.5, 1.5725923380470490e-2, -2.6250881035903230e-2},
    {3.0, 6.5911393574607191e-3, -1.1912976705951318e-2},
    {3.5, 2.5840987869896350e-3, -5.0044139679525828e-3},
    {4.0, 9.5156385120480187e-4, -1.9586409502041789e-3},
    {4.5, 3.3025032351430898e-4, -7.1786656755750889e-4},
    {5.0, 1.0834442813607442e-4, -2.4741389086846248e-4},
    {5.5, 3.3685311908599814e-5, -8.0463391305565143e-5},
    {6.0, 9.9476943602528896e-6, -2.4765200397034955e-5},
    {6.5, 2.7958823432049136e-6, -7.2319314666017926e-6},
    {7.0, 7.4921288639971671e-7, -2.0081508947387920e-6},
    {7.5, 1.9172560675134308e-7, -5.3127139597205447e-7},
    {8.0, 4.6922076160992316e-8, -1.3414392979067866e-7},
    {8.5, 1.0997009755195507e-8, -3.2377254404476023e-8},
    {9.0, 2.4711684308724898e-9, -7.4806413896589464e-9},
    {9.5, 5.3302637046174916e-10, -1.6566394593740666e-9},
    {10.0, 1.1047532552898686e-10, -3.5206336767389236e-10},
};

constexpr double kAnchorStart = -10.0;
constexpr double kAnchorStep = 0.5;
constexpr int kAnchorCount = static_cast<int>(std::size(kAnchors));

// Taylor re-expansion about the nearest anchor. The Airy equation y'' = x y
// gives the coefficient recurrence (k+2)(k+1) c_{k+2} = x0 c_k + c_{k-1}.
AiryPair taylor_from_anchor(double x) {
  const int idx = static_cast<int>(std::lround((x - kAnchorStart) / kAnchorStep));
  const Anchor& a = kAnchors[idx];
  const double h = x - a.x;

  double cm1 = 0.0;  // c_{k-1}
  double c0 = a.ai;  // c_k
  double c1 = a.aip; // c_{k+1}
  double value = c0 + c1 * h;
  double deriv = c1;
  double hk = h;  // h^{k+1}
  for (int k = 0; k < 40; ++k) {
    const double c2 = (a.x * c0 + cm1) / ((k + 2.0) * (k + 1.0));
    const double term = c2 * hk * h;
    const double dterm = (k + 2.0) * c2 * hk;
    value += term;
    deriv += dterm;
    cm1 = c0;
    c0 = c1;
    c1 = c2;
    hk *= h;
    if (k > 4 && std::abs(term) <= 1e-18 * std::abs(value) &&
        std::abs(dterm) <= 1e-18 * std::abs(deriv)) {
      break;
    }
  }
  return {value, deriv};
}

// u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!), v_k = -(6k+1)/(6k-1) u_k.
struct AsymptoticCoeffs {
  static constexpr int kTerms = 40;
  std::array<double, kTerms> u{};
  std::array<double, kTerms> v{};
  constexpr AsymptoticCoeffs() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kTerms; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }
  }
};

constexpr AsymptoticCoeffs kAsy{};

// Large positive x: exponentially decaying expansion.
AiryPair asymptotic_positive(double x) {
  const double sx = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * sx;
  const double q = std::sqrt(sx);  // x^{1/4}
  double su = 0.0, sv = 0.0;
  double p = 1.0;
  double sign = 1.0;
  for (int k = 0; k < AsymptoticCoeffs::kTerms; ++k) {
    const double tu = sign * kAsy.u[k] * p;
    const double tv = sign * kAsy.v[k] * p;
    su += tu;
    sv += tv;
    if (std::abs(tu) < 1e-18 * std::abs(su) && std::abs(tv) < 1e-18 * std::abs(sv)) {
      break;
    }
    p /= zeta;
    sign = -sign;
  }
  const double e = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  return {e / q * su, -e * q * sv};
}

}  // namespace

// Large negative argument x = -y: oscillatory expansion with phase zeta - pi/4.
AiryPair airy_ai_pair_oscillatory(double y, double zeta) {
  const double q = std::sqrt(std::sqrt(y));  // y^{1/4}
  double pu = 0.0, qu = 0.0, pv = 0.0, qv = 0.0;
  double p = 1.0;
  for (int k = 0; k + 1 < AsymptoticCoeffs::kTerms; k += 2) {
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    const double tpu = sign * kAsy.u[k] * p;
    const double tpv = sign * kAsy.v[k] * p;
    p /= zeta;
    const double tqu = sign * kAsy.u[k + 1] * p;
    const double tqv = sign * kAsy.v[k + 1] * p;
    p /= zeta;
    pu += tpu;
    pv += tpv;
    qu += tqu;
    qv += tqv;
    if (std::abs(tqu) < 1e-18 && std::abs(tqv) < 1e-18 && std::abs(tpu) < 1e-18 &&
        std::abs(tpv) < 1e-18) {
      break;
    }
  }
  // cos(zeta - pi/4) and sin(zeta - pi/4) without forming the shifted phase.
  const double c = std::cos(zeta);
  const double s = std::sin(zeta);
  const double r = std::numbers::sqrt2 / 2.0;
  const double cphase = r * (c + s);
  const double sphase = r * (s - c);
  const double rp = 1.0 / std::sqrt(std::numbers::pi);
  return {rp / q * (cphase * pu + sphase * qu), rp * q * (sphase * pv - cphase * qv)};
}

AiryPair airy_ai_pair(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("airy: argument must be finite");
  }
  if (x > 10.0) return asymptotic_positive(x);
  if (x < -10.0) {
    const double y = -x;
    return airy_ai_pair_oscillatory(y, 2.0 / 3.0 * y * std::sqrt(y));
  }
  return taylor_from_anchor(x);
}

double airy_ai(double x) { return airy_ai_pair(x).ai; }

double airy_ai_prime(double x) { return airy_ai_pair(x).aip; }

const std::array<double, 10>& airy_zero_table() {
  static constexpr std::array<double, 10> kZeros = {
      -2.3381074104597670, -4.0879494441309706, -5.5205598280955511,
      -6.7867080900717590, -7.9441335871208531, -9.0226508533409804,
      -10.040174341558086, -11.008524303733263, -11.936015563236263,
      -12.828776752865757};
  return kZeros;
}

double airy_zero_asymptotic(int m) {
  if (m <= 0) {
    throw DomainError("airy_zero: index must be positive");
  }
  const double s = 3.0 * std::numbers::pi * (4.0 * m - 1.0) / 8.0;
  const double r = 1.0 / (s * s);
  // Horner form of 1 + 5/48 s^-2 - 5/36 s^-4 + ... in r = s^-2.
  const double series =
      1.0 + r * (5.0 / 48.0 +
                 r * (-5.0 / 36.0 +
                      r * (77125.0 / 82944.0 +
                           r * (-108056875.0 / 6967296.0 + r * (162375596875.0 / 334430208.0)))));
  return -std::cbrt(s * s) * series;
}

double airy_zero(int m) {
  if (m <= 0) {
    throw DomainError("airy_zero: index must be positive");
  }
  if (m <= 10) return airy_zero_table()[static_cast<std::size_t>(m - 1)];
  return airy_zero_asymptotic(m);
}

}  // namespace fastgh::specfun
