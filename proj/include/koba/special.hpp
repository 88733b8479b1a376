#pragma once

#include <complex>

namespace koba::special {

using cplx = std::complex<double>;

/// Gamma function on C minus the non-positive integers.
///
/// Real arguments go through std::tgamma; complex ones use a g=7, n=9 Lanczos
/// sum with the reflection formula for Re(z) < 1/2 (about 1e-15 relative).
cplx gamma(cplx z);

/// log Gamma on the principal branch, Re(z) >= 1/2 (Lanczos).
cplx lgamma_lanczos(cplx z);

/// Euler Beta B(x,y) = Gamma(x)Gamma(y)/Gamma(x+y).
cplx beta(cplx x, cplx y);

/// Integral over R of |x|^a |1-x|^b dx, valid for Re a > -1, Re b > -1,
/// Re(a+b) < -1:  B(a+1,b+1) + B(a+1,c+1) + B(b+1,c+1) with c = -a-b-2.
cplx veneziano_sum(cplx a, cplx b);

/// Integral over C (planar Lebesgue measure) of |z|^{2a} |1-z|^{2b}:
/// pi G(1+a)G(1+b)G(-1-a-b) / (G(-a)G(-b)G(2+a+b)).
cplx virasoro_shapiro(cplx a, cplx b);

}  // namespace koba::special
