#pragma once

#include "gk/lattice.hpp"
#include "gk/zmeasure.hpp"

#include <Eigen/Dense>

#include <numbers>
#include <string>
#include <vector>

namespace gk {

enum class KernelKind { UnderlinePreLimit, UnderlineLimit, KPreLimit, KLimit };

const char* kind_name(KernelKind kind);

// Kernel values on the symmetric window Z' ∩ [-N, N] (2N points, ascending).
class WindowKernel {
public:
    WindowKernel(int N, KernelKind kind, double xi, Eigen::MatrixXd values);

    int radius() const { return N_; }
    int size() const { return 2 * N_; }
    KernelKind kind() const { return kind_; }
    double xi() const { return xi_; }  // 1 for limit kinds
    bool underline() const { return kind_ == KernelKind::UnderlinePreLimit || kind_ == KernelKind::UnderlineLimit; }
    bool limit() const { return kind_ == KernelKind::UnderlineLimit || kind_ == KernelKind::KLimit; }

    const Eigen::MatrixXd& values() const { return values_; }
    bool contains(HalfInt x) const { return x.twice() > -2 * N_ && x.twice() < 2 * N_; }
    int index(HalfInt x) const { return static_cast<int>((x.twice() + 2 * N_ - 1) / 2); }
    HalfInt point(int i) const { return HalfInt::from_twice(2 * i - 2 * N_ + 1); }
    double operator()(HalfInt x, HalfInt y) const { return values_(index(x), index(y)); }

    // Restriction to the central window of radius M <= N.
    WindowKernel central(int M) const;

private:
    int N_;
    KernelKind kind_;
    double xi_;
    Eigen::MatrixXd values_;
};

enum class ContourShape { Auto, Circle, Keyhole };

// Which form of the double contour integral to use. Product: denominator
// omega1 omega2 - 1 (u1 + u2 + 1 in the limit). Difference: after
// omega2 -> 1/omega2, denominator omega1 - omega2 (u1 - u2). Auto picks the
// well-conditioned form per sign block and reduces the other blocks by symmetry.
enum class Route { Auto, Product, Difference };

struct QuadratureConfig {
    int nodes = 64;          // starting trapezoid nodes per circle
    int max_nodes = 1 << 14; // node doubling cap; at most 2^18
    double radius = 0.0;     // circle radius, 0 = xi^{-1/6}
    double rho = 0.3;        // hairpin/keyhole offset for the product form
    double rho1 = 0.2;       // difference form, first contour
    double rho2 = 0.4;       // difference form, second contour
    double ray_angle = std::numbers::pi / 3;  // tilt of the second contour's rays
    double u_max = 1e30;     // truncation of the limit contour rays
    double step = 0.1;       // starting step of double-exponential rays
    int gl_nodes = 64;       // starting Gauss-Legendre nodes on semicircles
    int max_levels = 5;      // step halvings before giving up
    double tol = 1e-10;
    ContourShape shape = ContourShape::Auto;
    double keyhole_above = 0.85;  // Auto uses keyholes for xi >= this

    // Throws PreconditionError naming the offending field. xi <= 0 means limit.
    void validate(double xi) const;
    ContourShape shape_for(double xi) const;
};

struct ContourResult {
    double value = 0.0;
    double imag = 0.0;        // discarded imaginary part
    double error = 0.0;       // last refinement difference
    int nodes = 0;            // nodes per contour at the accepted level
    int levels = 0;
    double tail_bound = 0.0;  // limit contours: ray truncation bound
};

// C(z, z').
double density_constant(const Params& p);

double epsilon(HalfInt x);  // 1 on Z'_+, (-1)^{|x|-1/2} on Z'_-

double underline_limit_integrable(HalfInt x, HalfInt y, const Params& p);
// Same values on xs × ys, with the Gamma and psi factors computed once per point.
Eigen::MatrixXd underline_limit_integrable(const std::vector<HalfInt>& xs, const std::vector<HalfInt>& ys,
                                          const Params& p);
ContourResult underline_limit_contour(HalfInt x, HalfInt y, const Params& p, const QuadratureConfig& q = {},
                                      Route route = Route::Auto);
ContourResult underline_prelimit_contour(HalfInt x, HalfInt y, const XiParams& p, const QuadratureConfig& q = {},
                                         Route route = Route::Auto);

struct BlockReport {
    int nodes = 0;
    int levels = 0;
    double error = 0.0;
    double max_imag = 0.0;
};

// Underline pre-limit kernel on xs × ys by contour quadrature of the chosen
// form, refined until the whole block changes by less than q.tol.
Eigen::MatrixXd underline_prelimit_block(const std::vector<HalfInt>& xs, const std::vector<HalfInt>& ys,
                                         const XiParams& p, const QuadratureConfig& q, Route route,
                                         BlockReport* report = nullptr);
// Same for the limit kernel with hairpin contours.
Eigen::MatrixXd underline_limit_block(const std::vector<HalfInt>& xs, const std::vector<HalfInt>& ys,
                                      const Params& p, const QuadratureConfig& q, Route route,
                                      BlockReport* report = nullptr);

WindowKernel underline_limit_window(int N, const Params& p);
WindowKernel underline_prelimit_window(int N, const XiParams& p, const QuadratureConfig& q = {},
                                       BlockReport* report = nullptr);

// Projection onto the positive spectrum of the difference operator restricted
// to the window. Accurate only at distance spectral_margin(xi) from the edges.
WindowKernel underline_prelimit_spectral(int N, const XiParams& p);
Eigen::VectorXd difference_operator_spectrum(int N, const XiParams& p);
int spectral_margin(double xi, double tol = 1e-10);

double k_from_underline(HalfInt x, HalfInt y, double underline_value);
WindowKernel j_transform(const WindowKernel& underline);

Eigen::MatrixXd gauge_transform(const Eigen::MatrixXd& k, const Eigen::VectorXd& phi);
WindowKernel gauge_transform(const WindowKernel& k, const Eigen::VectorXd& phi);

struct WeightedBlocks {
    Eigen::MatrixXd pp, pm, mp, mm;  // blocks of A_h K A_h, h = |x|^{-1/2}
    double trace_pp = 0.0, trace_mm = 0.0;
    double trace_norm_pp = 0.0, trace_norm_mm = 0.0;
    double hs_pm = 0.0, hs_mp = 0.0;
};

WeightedBlocks weighted_blocks(const WindowKernel& k);

}  // namespace gk
