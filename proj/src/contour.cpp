#include "gk/contour.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace gk::contour {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

void push(Nodes& out, cplx la, cplx lb, cplx lw, cplx weight, cplx var) {
    out.la.push_back(la);
    out.lb.push_back(lb);
    out.lw.push_back(lw);
    out.weight.push_back(weight);
    out.var.push_back(var);
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    // Golub-Welsch
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(n - 1);
    for (int k = 1; k < n; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    x.resize(n);
    w.resize(n);
    for (int k = 0; k < n; ++k) {
        x[k] = es.eigenvalues()[k];
        w[k] = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
    }
}

Nodes circle(double xi, double radius, int n) {
    const double sx = std::sqrt(xi);
    Nodes out;
    for (int k = 0; k < n; ++k) {
        const cplx om = std::polar(radius, 2.0 * pi * k / n);
        push(out, std::log(1.0 - sx * om), std::log(1.0 - sx / om), std::log(om), I * om * (2.0 * pi / n), om);
    }
    return out;
}

Nodes keyhole(double xi, double rho, double phi, double h, int ngl, double R) {
    const double sx = std::sqrt(xi), eps = 1.0 - xi;
    const double leps = std::log(eps), lsx = std::log(sx);
    const cplx e = std::polar(1.0, phi);
    Nodes out;
    // omega = (1 + eps u)/sx; A = -eps u; omega - sx = eps (1+u)/sx
    auto add_u = [&](cplx u, cplx du) {
        const cplx om = (1.0 + eps * u) / sx;
        const cplx lw = std::log(om);
        push(out, leps + std::log(-u), leps + std::log(1.0 + u) - lsx - lw, lw, eps / sx * du, eps * u / sx);
    };
    // ray end: |1 + eps (c + t e)| = R sx, solved for t
    auto t_end = [&](cplx c, cplx ee) {
        const double A = eps * eps;
        const double B = 2.0 * eps * std::real((1.0 + eps * c) * std::conj(ee));
        const double C = std::norm(1.0 + eps * c) - R * R * xi;
        return (-B + std::sqrt(B * B - 4.0 * A * C)) / (2.0 * A);
    };
    const double T = t_end(I * rho, e);
    const int ns = static_cast<int>(std::lround(12.0 / h));
    std::vector<double> ts(ns + 1), dts(ns + 1);
    for (int k = 0; k <= ns; ++k) {
        const double s = -6.0 + k * h, q = pi * std::sinh(s), eq = std::exp(-q);
        ts[k] = T / (1.0 + eq);
        dts[k] = T * pi * std::cosh(s) * eq / ((1.0 + eq) * (1.0 + eq)) * h;
    }
    for (int k = ns; k >= 0; --k) add_u(-I * rho + ts[k] * std::conj(e), -dts[k] * std::conj(e));
    std::vector<double> gx, gw;
    gauss_legendre(ngl, gx, gw);
    for (int k = 0; k < ngl; ++k) {
        const double th = -pi / 2 - (gx[k] + 1.0) / 2.0 * pi;
        const cplx u = std::polar(rho, th);
        add_u(u, I * u * (-gw[k] * pi / 2.0));
    }
    for (int k = 0; k <= ns; ++k) add_u(I * rho + ts[k] * e, dts[k] * e);
    // closing arc from the end of the upper ray to the start of the lower ray
    const cplx w_end = (1.0 + eps * (I * rho + T * e)) / sx;
    const double th0 = std::arg(w_end), Rr = std::abs(w_end);
    gauss_legendre(4 * ngl, gx, gw);
    for (int k = 0; k < 4 * ngl; ++k) {
        const double th = th0 + (gx[k] + 1.0) / 2.0 * (2.0 * pi - 2.0 * th0);
        const cplx om = std::polar(Rr, th);
        const cplx lw = std::log(om);
        push(out, std::log(1.0 - sx * om), std::log(om - sx) - lw, lw, I * om * (gw[k] * (pi - th0)),
             om - 1.0 / sx);
    }
    return out;
}

Nodes hairpin(double rho, double phi, double h, double s_max, int ngl) {
    const cplx e = std::polar(1.0, phi);
    Nodes out;
    auto add_u = [&](cplx u, cplx du) { push(out, std::log(-u), std::log(1.0 + u), 0.0, du, u); };
    const int ns = static_cast<int>(std::lround(2.0 * s_max / h));
    std::vector<double> ts(ns + 1), dts(ns + 1);
    for (int k = 0; k <= ns; ++k) {
        const double s = -s_max + k * h;
        ts[k] = std::exp(pi / 2 * std::sinh(s));
        dts[k] = ts[k] * pi / 2 * std::cosh(s) * h;
    }
    for (int k = ns; k >= 0; --k) add_u(-I * rho + ts[k] * std::conj(e), -dts[k] * std::conj(e));
    std::vector<double> gx, gw;
    gauss_legendre(ngl, gx, gw);
    for (int k = 0; k < ngl; ++k) {
        const double th = -pi / 2 - (gx[k] + 1.0) / 2.0 * pi;
        const cplx u = std::polar(rho, th);
        add_u(u, I * u * (-gw[k] * pi / 2.0));
    }
    for (int k = 0; k <= ns; ++k) add_u(I * rho + ts[k] * e, dts[k] * e);
    return out;
}

}  // namespace gk::contour
