#pragma once

#include "arcwave/types.hpp"

// Bessel functions of orders 0 and 1 for complex arguments with Re x >= 0.
// |x| <= 8: ascending series; 8 < |x| <= 25: Miller backward recurrence with Neumann
// series for Y; beyond: Hankel asymptotic expansions.
namespace arcwave::bessel {

cd J0(cd x);
cd J1(cd x);
cd Y0(cd x);
cd Y1(cd x);
cd H0(cd x);  // first kind
cd H1(cd x);

// Entire functions of w = x^2 carrying the series bookkeeping:
//   J0(x) = j0(w),  J1(x) = (x/2) j1(w),
//   Y0(x) = (2/pi)(log(x/2) + gamma) J0(x) + (2/pi) y0s(w),
//   Y1(x) = -2/(pi x) + (2/pi) log(x/2) J1(x) - (x/(2 pi)) y1s(w).
cd j0(cd w);
cd j1(cd w);
cd y0s(cd w);
cd y1s(cd w);
// (j0(w) - 1)/w and (j1(w) - 1)/w.
cd j0m(cd w);
cd j1m(cd w);

// Individual algorithms, exposed for cross-checks.
cd J0_series(cd x);
cd J1_series(cd x);
cd Y0_series(cd x);
cd Y1_series(cd x);
void miller(cd x, cd& j0, cd& j1, cd& y0, cd& y1);
void hankel_asymptotic(cd x, cd& h0, cd& h1);

}  // namespace arcwave::bessel
