#pragma once

// Quadrature nodes for the one-dimensional factors of the double contour
// integrals. Each node carries the logs of the three power bases so that an
// integrand (A)^alpha (B)^beta (W)^gamma is exp(alpha la + beta lb + gamma lw),
// plus the variable that enters the Cauchy denominator.

#include "gk/special.hpp"

#include <vector>

namespace gk::contour {

struct Nodes {
    std::vector<cplx> la, lb, lw;
    std::vector<cplx> weight;  // d(omega) or d(u), including quadrature weights
    std::vector<cplx> var;     // omega (circles), omega - 1/sqrt(xi) (keyholes), u (limit)
    std::size_t size() const { return weight.size(); }
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// |omega| = radius, n trapezoid nodes. A = 1 - sqrt(xi) omega,
// B = 1 - sqrt(xi)/omega, W = omega.
Nodes circle(double xi, double radius, int n);

// Keyhole around the cut [1/sqrt(xi), inf): rays omega = (1 + (1-xi) u)/sqrt(xi)
// with u = +-i rho + t e^{+-i phi}, a semicircle |u| = rho through u = -rho, and
// an arc |omega| = R closing the contour counterclockwise. Same A, B, W as circle().
Nodes keyhole(double xi, double rho, double phi, double h, int ngl, double R);

// Limit contour [+inf - i rho, 0-, +inf + i rho] in u; rays tilted by phi.
// A = -u, B = 1 + u, W = 1. Rays use t = exp(pi/2 sinh s), |s| <= s_max.
Nodes hairpin(double rho, double phi, double h, double s_max, int ngl);

}  // namespace gk::contour
