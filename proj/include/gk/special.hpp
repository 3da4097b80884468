#pragma once

#include "gk/lattice.hpp"

#include <complex>

namespace gk {

using cplx = std::complex<double>;

// Principal branch of log Gamma (analytic in C minus (-inf, 0], real on the
// positive axis). Throws PreconditionError("pole") at non-positive integers.
cplx log_gamma(cplx w);
cplx digamma(cplx w);
cplx trigamma(cplx w);

// x (x+1) ... (x+k-1)
cplx pochhammer(cplx x, int k);
// prod over boxes (i, j) of lambda of (x + j - i)
cplx pochhammer_lambda(cplx x, const Partition& lambda);

}  // namespace gk
