#include "arcwave/bessel.hpp"

#include <cmath>
#include <vector>

namespace arcwave::bessel {

namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kMillerLimit = 25.0;
constexpr int kMaxTerms = 200;

bool converged(cd term, cd sum) { return std::abs(term) <= 1e-17 * std::abs(sum) || std::abs(term) < 1e-300; }

struct Asym {
  cd h1_0, h1_1, h2_0, h2_1;
};

// Hankel expansions of both kinds for orders 0 and 1.
Asym asymptotic(cd x) {
  Asym out;
  const cd pref = std::sqrt(2.0 / (kPi * x));
  for (int nu = 0; nu <= 1; ++nu) {
    cd s1 = 1.0, s2 = 1.0;
    double a = 1.0;
    cd ipow = 1.0, mipow = 1.0, xp = 1.0;
    double last = 1e300;
    for (int k = 1; k < 4 * kMaxTerms; ++k) {
      a *= (4.0 * nu * nu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k);
      ipow *= kI;
      mipow *= -kI;
      xp *= x;
      cd t1 = ipow * a / xp, t2 = mipow * a / xp;
      double mag = std::abs(t1);
      if (mag > last) break;
      s1 += t1;
      s2 += t2;
      last = mag;
      if (mag < 1e-17) break;
    }
    cd phase = x - nu * kPi / 2.0 - kPi / 4.0;
    cd h1 = pref * std::exp(kI * phase) * s1;
    cd h2 = pref * std::exp(-kI * phase) * s2;
    if (nu == 0) {
      out.h1_0 = h1;
      out.h2_0 = h2;
    } else {
      out.h1_1 = h1;
      out.h2_1 = h2;
    }
  }
  return out;
}

}  // namespace

cd j0(cd w) {
  if (std::abs(w) > kSeriesLimit * kSeriesLimit) return J0(std::sqrt(w));
  cd term = 1.0, sum = 1.0;
  for (int m = 1; m < kMaxTerms; ++m) {
    term *= (-w / 4.0) / double(m * m);
    sum += term;
    if (converged(term, sum)) break;
  }
  return sum;
}

cd j1(cd w) {
  if (std::abs(w) > kSeriesLimit * kSeriesLimit) {
    cd x = std::sqrt(w);
    return 2.0 * J1(x) / x;
  }
  cd term = 1.0, sum = 1.0;
  for (int m = 1; m < kMaxTerms; ++m) {
    term *= (-w / 4.0) / double(m * (m + 1));
    sum += term;
    if (converged(term, sum)) break;
  }
  return sum;
}

cd j0m(cd w) {
  if (std::abs(w) > kSeriesLimit * kSeriesLimit) return (j0(w) - 1.0) / w;
  cd term = -0.25, sum = -0.25;
  for (int m = 2; m < kMaxTerms; ++m) {
    term *= (-w / 4.0) / double(m * m);
    sum += term;
    if (converged(term, sum)) break;
  }
  return sum;
}

cd j1m(cd w) {
  if (std::abs(w) > kSeriesLimit * kSeriesLimit) return (j1(w) - 1.0) / w;
  cd term = -0.125, sum = -0.125;
  for (int m = 2; m < kMaxTerms; ++m) {
    term *= (-w / 4.0) / double(m * (m + 1));
    sum += term;
    if (converged(term, sum)) break;
  }
  return sum;
}

cd y0s(cd w) {
  if (std::abs(w) > kSeriesLimit * kSeriesLimit) {
    cd x = std::sqrt(w);
    return 0.5 * kPi * Y0(x) - (std::log(x / 2.0) + kEulerGamma) * J0(x);
  }
  cd p = 1.0, sum = 0.0;
  double h = 0.0;
  for (int m = 1; m < kMaxTerms; ++m) {
    p *= (-w / 4.0) / double(m * m);
    h += 1.0 / m;
    cd term = -h * p;
    sum += term;
    if (m > 2 && converged(term, sum)) break;
  }
  return sum;
}

cd y1s(cd w) {
  if (std::abs(w) > kSeriesLimit * kSeriesLimit) {
    cd x = std::sqrt(w);
    return (2.0 * kPi / x) * (-Y1(x) - 2.0 / (kPi * x) + (2.0 / kPi) * std::log(x / 2.0) * J1(x));
  }
  cd p = 1.0;
  double h = 0.0;  // harmonic number H_m
  cd sum = (2.0 * (-kEulerGamma) + 1.0) * p;
  for (int m = 1; m < kMaxTerms; ++m) {
    p *= (-w / 4.0) / double(m * (m + 1));
    h += 1.0 / m;
    double psi_sum = (h - kEulerGamma) + (h + 1.0 / (m + 1) - kEulerGamma);
    cd term = psi_sum * p;
    sum += term;
    if (converged(term, sum)) break;
  }
  return sum;
}

cd J0_series(cd x) { return j0(x * x); }
cd J1_series(cd x) { return 0.5 * x * j1(x * x); }
cd Y0_series(cd x) {
  return (2.0 / kPi) * (std::log(x / 2.0) + kEulerGamma) * J0_series(x) + (2.0 / kPi) * y0s(x * x);
}
cd Y1_series(cd x) {
  return -2.0 / (kPi * x) + (2.0 / kPi) * std::log(x / 2.0) * J1_series(x) - (x / (2.0 * kPi)) * y1s(x * x);
}

void miller(cd x, cd& J0v, cd& J1v, cd& Y0v, cd& Y1v) {
  int m = static_cast<int>(std::ceil(std::abs(x))) + 44;
  if (m % 2) ++m;
  std::vector<cd> f(m + 2, cd(0));
  f[m] = 1e-30;
  for (int k = m; k >= 1; --k) f[k - 1] = (2.0 * k / x) * f[k] - f[k + 1];
  cd norm = f[0];
  for (int k = 2; k <= m; k += 2) norm += 2.0 * f[k];
  for (auto& v : f) v /= norm;
  J0v = f[0];
  J1v = f[1];
  const cd lg = std::log(x / 2.0) + kEulerGamma;
  cd s0 = 0.0, s1 = 0.0;
  for (int k = 1; 2 * k + 1 <= m; ++k) {
    double sg = (k % 2) ? -1.0 : 1.0;
    s0 += sg * f[2 * k] / double(k);
    s1 += sg * (f[2 * k - 1] - f[2 * k + 1]) / (2.0 * k);
  }
  Y0v = (2.0 / kPi) * lg * J0v - (4.0 / kPi) * s0;
  Y1v = (2.0 / kPi) * (lg * J1v - J0v / x) + (4.0 / kPi) * s1;
}

void hankel_asymptotic(cd x, cd& h0, cd& h1) {
  Asym a = asymptotic(x);
  h0 = a.h1_0;
  h1 = a.h1_1;
}

namespace {

struct All {
  cd j0, j1, y0, y1;
};

All evaluate(cd x) {
  const double r = std::abs(x);
  All o;
  if (r <= kSeriesLimit) {
    o.j0 = J0_series(x);
    o.j1 = J1_series(x);
    o.y0 = Y0_series(x);
    o.y1 = Y1_series(x);
  } else if (r <= kMillerLimit) {
    miller(x, o.j0, o.j1, o.y0, o.y1);
  } else {
    Asym a = asymptotic(x);
    o.j0 = 0.5 * (a.h1_0 + a.h2_0);
    o.j1 = 0.5 * (a.h1_1 + a.h2_1);
    o.y0 = (a.h1_0 - a.h2_0) / (2.0 * kI);
    o.y1 = (a.h1_1 - a.h2_1) / (2.0 * kI);
  }
  return o;
}

}  // namespace

cd J0(cd x) { return std::abs(x) <= kSeriesLimit ? J0_series(x) : evaluate(x).j0; }
cd J1(cd x) { return std::abs(x) <= kSeriesLimit ? J1_series(x) : evaluate(x).j1; }
cd Y0(cd x) { return evaluate(x).y0; }
cd Y1(cd x) { return evaluate(x).y1; }

// J + iY cancels in the upper half plane, where the expansion is used earlier.
bool prefer_asymptotic(cd x) { return std::abs(x) > kMillerLimit || (std::abs(x) > 15.0 && x.imag() > 2.0); }

cd H0(cd x) {
  if (prefer_asymptotic(x)) return asymptotic(x).h1_0;
  All o = evaluate(x);
  return o.j0 + kI * o.y0;
}

cd H1(cd x) {
  if (prefer_asymptotic(x)) return asymptotic(x).h1_1;
  All o = evaluate(x);
  return o.j1 + kI * o.y1;
}

}  // namespace arcwave::bessel
