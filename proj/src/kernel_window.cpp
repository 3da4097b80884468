#include "gk/errors.hpp"
#include "gk/kernel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace gk {

const char* kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::UnderlinePreLimit: return "underline_prelimit";
        case KernelKind::UnderlineLimit: return "underline_limit";
        case KernelKind::KPreLimit: return "k_prelimit";
        case KernelKind::KLimit: return "k_limit";
    }
    return "?";
}

WindowKernel::WindowKernel(int N, KernelKind kind, double xi, Eigen::MatrixXd values)
    : N_(N), kind_(kind), xi_(xi), values_(std::move(values)) {
    require(N >= 1, "window", "window radius must be >= 1");
    require(values_.rows() == 2 * N && values_.cols() == 2 * N, "window", "kernel matrix must be 2N x 2N");
}

WindowKernel WindowKernel::central(int M) const {
    require(M >= 1 && M <= N_, "window", "central window must lie inside the kernel window");
    return WindowKernel(M, kind_, xi_, values_.block(N_ - M, N_ - M, 2 * M, 2 * M));
}

namespace {

std::vector<HalfInt> window_points(int N, int sign) {
    std::vector<HalfInt> v;
    if (sign > 0)
        for (int k = 0; k < N; ++k) v.push_back(HalfInt::above(k));
    else
        for (int k = N - 1; k >= 0; --k) v.push_back(-HalfInt::above(k));
    return v;
}

}  // namespace

WindowKernel underline_limit_window(int N, const Params& p) {
    require(N >= 1, "window", "window radius must be >= 1");
    std::vector<HalfInt> pts;
    for (int i = 0; i < 2 * N; ++i) pts.push_back(HalfInt::from_twice(2 * i - 2 * N + 1));
    return WindowKernel(N, KernelKind::UnderlineLimit, 1.0, underline_limit_integrable(pts, pts, p));
}

WindowKernel underline_prelimit_window(int N, const XiParams& p, const QuadratureConfig& q, BlockReport* report) {
    require(N >= 1, "window", "window radius must be >= 1");
    const std::vector<HalfInt> pos = window_points(N, 1), neg = window_points(N, -1);
    BlockReport rep, r;
    const Eigen::MatrixXd pp = underline_prelimit_block(pos, pos, p, q, Route::Auto, &r);
    rep = r;
    const Eigen::MatrixXd pm = underline_prelimit_block(pos, neg, p, q, Route::Auto, &r);
    rep.error = std::max(rep.error, r.error), rep.nodes = std::max(rep.nodes, r.nodes);
    rep.max_imag = std::max(rep.max_imag, r.max_imag);
    const Eigen::MatrixXd mm = underline_prelimit_block(neg, neg, p, q, Route::Auto, &r);
    rep.error = std::max(rep.error, r.error), rep.nodes = std::max(rep.nodes, r.nodes);
    rep.max_imag = std::max(rep.max_imag, r.max_imag);
    if (report) *report = rep;
    // window order is ascending: negatives first
    Eigen::MatrixXd m(2 * N, 2 * N);
    m.block(0, 0, N, N) = mm;
    m.block(N, N, N, N) = pp;
    m.block(N, 0, N, N) = pm;
    m.block(0, N, N, N) = pm.transpose();
    return WindowKernel(N, KernelKind::UnderlinePreLimit, p.xi, std::move(m));
}

namespace {

void tridiagonal(int N, const XiParams& p, Eigen::VectorXd& diag, Eigen::VectorXd& sub) {
    require(N >= 4, "window", "spectral window needs N >= 4");
    const double xi = p.xi, zs = (p.base.z + p.base.zp).real();
    diag.resize(2 * N);
    sub.resize(2 * N - 1);
    for (int i = 0; i < 2 * N; ++i) {
        const double x = i - N + 0.5;
        diag[i] = -(x + xi * (zs + x));
        if (i + 1 < 2 * N) {
            const double t = (xi * (p.base.z + x + 0.5) * (p.base.zp + x + 0.5)).real();
            sub[i] = std::sqrt(t);
        }
    }
}

}  // namespace

WindowKernel underline_prelimit_spectral(int N, const XiParams& p) {
    Eigen::VectorXd diag, sub;
    tridiagonal(N, p, diag, sub);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver", "tridiagonal eigensolver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    int first = 0;
    while (first < ev.size() && ev[first] <= 0.0) ++first;
    const Eigen::MatrixXd v = es.eigenvectors().rightCols(ev.size() - first);
    return WindowKernel(N, KernelKind::UnderlinePreLimit, p.xi, v * v.transpose());
}

Eigen::VectorXd difference_operator_spectrum(int N, const XiParams& p) {
    Eigen::VectorXd diag, sub;
    tridiagonal(N, p, diag, sub);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver", "tridiagonal eigensolver failed");
    return es.eigenvalues();
}

int spectral_margin(double xi, double tol) {
    // eigenvectors of the window operator decay roughly like xi^{d/2} away
    // from their centre; the truncation error is quadratic in that decay
    return static_cast<int>(std::ceil(2.0 * std::log(1.0 / tol) / -std::log(xi))) + 8;
}

double k_from_underline(HalfInt x, HalfInt y, double u) {
    const double v = x.positive() ? u : (x == y ? 1.0 : 0.0) - u;
    return epsilon(x) * epsilon(y) * v;
}

WindowKernel j_transform(const WindowKernel& k) {
    require(k.underline(), "kernel_kind", "j_transform needs an underline kernel");
    Eigen::MatrixXd m(k.size(), k.size());
    for (int i = 0; i < k.size(); ++i)
        for (int j = 0; j < k.size(); ++j) m(i, j) = k_from_underline(k.point(i), k.point(j), k.values()(i, j));
    return WindowKernel(k.radius(), k.limit() ? KernelKind::KLimit : KernelKind::KPreLimit, k.xi(), std::move(m));
}

Eigen::MatrixXd gauge_transform(const Eigen::MatrixXd& k, const Eigen::VectorXd& phi) {
    require(phi.size() == k.rows() && k.rows() == k.cols(), "gauge", "phi must match the kernel size");
    for (int i = 0; i < phi.size(); ++i) require(phi[i] != 0.0, "gauge_zero", "gauge function must not vanish");
    return phi.asDiagonal() * k * phi.cwiseInverse().asDiagonal();
}

WindowKernel gauge_transform(const WindowKernel& k, const Eigen::VectorXd& phi) {
    return WindowKernel(k.radius(), k.kind(), k.xi(), gauge_transform(k.values(), phi));
}

WeightedBlocks weighted_blocks(const WindowKernel& k) {
    const int N = k.radius();
    Eigen::VectorXd h(2 * N);
    for (int i = 0; i < 2 * N; ++i) h[i] = 1.0 / std::sqrt(std::abs(k.point(i).value()));
    const Eigen::MatrixXd a = h.asDiagonal() * k.values() * h.asDiagonal();
    WeightedBlocks b;
    b.mm = a.block(0, 0, N, N);
    b.mp = a.block(0, N, N, N);
    b.pm = a.block(N, 0, N, N);
    b.pp = a.block(N, N, N, N);
    b.trace_pp = b.pp.trace();
    b.trace_mm = b.mm.trace();
    b.trace_norm_pp = Eigen::BDCSVD<Eigen::MatrixXd>(b.pp).singularValues().sum();
    b.trace_norm_mm = Eigen::BDCSVD<Eigen::MatrixXd>(b.mm).singularValues().sum();
    b.hs_pm = b.pm.norm();
    b.hs_mp = b.mp.norm();
    return b;
}

}  // namespace gk
