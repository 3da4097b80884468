#include "gk/kernel.hpp"

#include "gk/contour.hpp"
#include "gk/errors.hpp"
#include "gk/simd/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gk {

namespace {

constexpr double pi = std::numbers::pi;

struct Exponents {
    cplx alpha, beta, gamma, logpref;
};

double gamma_sign(double w) {
    if (w > 0) return 1.0;
    return (static_cast<long long>(std::floor(-w)) % 2 == 0) ? -1.0 : 1.0;
}

Exponents row_exponents(HalfInt x, const Params& p) {
    const double xv = x.value();
    const cplx l1 = log_gamma(-p.zp - xv + 0.5), l2 = log_gamma(-p.z - xv + 0.5);
    return {p.zp + xv - 0.5, -p.z - xv - 0.5, -xv - 0.5, l1 - 0.5 * (l1 + l2).real()};
}

Exponents col_exponents(HalfInt y, const Params& p, Route route) {
    const double yv = y.value();
    const cplx l1 = log_gamma(-p.z - yv + 0.5), l2 = log_gamma(-p.zp - yv + 0.5);
    const cplx lp = l1 - 0.5 * (l1 + l2).real();
    if (route == Route::Difference) return {-p.zp - yv - 0.5, p.z + yv - 0.5, yv - 0.5, lp};
    return {p.z + yv - 0.5, -p.zp - yv - 0.5, -yv - 0.5, lp};
}

struct Setup {
    bool limit;
    double xi;  // unused for limit
    Params par;
    ContourShape shape;  // Circle or Keyhole for pre-limit
    Route route;         // Product or Difference
};

struct NodePair {
    contour::Nodes n1, n2;
};

NodePair nodes_at(const Setup& s, const QuadratureConfig& q, int level) {
    const double scale = std::ldexp(1.0, level);
    if (s.limit) {
        const double h = q.step / scale;
        const int ngl = q.gl_nodes << level;
        const double s_max = std::asinh(2.0 / pi * std::log(q.u_max));
        if (s.route == Route::Product) {
            auto n = contour::hairpin(q.rho, 0.0, h, s_max, ngl);
            return {n, n};
        }
        return {contour::hairpin(q.rho1, 0.0, h, s_max, ngl), contour::hairpin(q.rho2, q.ray_angle, h, s_max, ngl)};
    }
    const double sx = std::sqrt(s.xi);
    if (s.shape == ContourShape::Circle) {
        const int n = q.nodes << level;
        const double r = q.radius > 0 ? q.radius : std::pow(s.xi, -1.0 / 6.0);
        if (s.route == Route::Product) {
            auto c = contour::circle(s.xi, r, n);
            return {c, c};
        }
        return {contour::circle(s.xi, r, n), contour::circle(s.xi, 1.0 / r, n)};
    }
    const double h = q.step / scale;
    const int ngl = q.gl_nodes << level;
    if (s.route == Route::Product) {
        auto k = contour::keyhole(s.xi, q.rho, 0.0, h, ngl, 2.0 / sx);
        return {k, k};
    }
    return {contour::keyhole(s.xi, q.rho1, 0.0, h, ngl, 2.0 / sx),
            contour::keyhole(s.xi, q.rho2, q.ray_angle, h, ngl, 1.6 / sx)};
}

int max_level(const Setup& s, const QuadratureConfig& q) {
    if (!s.limit && s.shape == ContourShape::Circle) {
        int L = 0;
        while ((static_cast<long long>(q.nodes) << (L + 1)) <= q.max_nodes) ++L;
        return L;
    }
    return q.max_levels;
}

// Split arrays for P_i Q_j + R_i + S_j.
struct Denominator {
    std::vector<double> p_re, p_im, r_re, r_im;  // first variable
    std::vector<double> q_re, q_im, s_re, s_im;  // second variable
    simd::RowFactors rows() const { return {p_re.data(), p_im.data(), r_re.data(), r_im.data(), p_re.size()}; }
    simd::ColFactors cols() const { return {q_re.data(), q_im.data(), s_re.data(), s_im.data(), q_re.size()}; }
};

Denominator denominator(const Setup& s, const NodePair& np) {
    Denominator d;
    const std::size_t n1 = np.n1.size(), n2 = np.n2.size();
    d.p_re.resize(n1), d.p_im.resize(n1), d.r_re.resize(n1), d.r_im.resize(n1);
    d.q_re.resize(n2), d.q_im.resize(n2), d.s_re.resize(n2), d.s_im.resize(n2);
    const bool keyhole = !s.limit && s.shape == ContourShape::Keyhole;
    const bool circle = !s.limit && s.shape == ContourShape::Circle;
    const double isx = s.limit ? 0.0 : 1.0 / std::sqrt(s.xi);
    const double c0 = s.limit ? 0.0 : (1.0 - s.xi) / s.xi;
    for (std::size_t i = 0; i < n1; ++i) {
        const cplx v = np.n1.var[i];
        cplx P = 0.0, R = v;
        if (s.route == Route::Product) {
            if (circle) P = v, R = -1.0;
            else if (keyhole) P = v, R = v * isx + c0;
            else R = v + 1.0;
        }
        d.p_re[i] = P.real(), d.p_im[i] = P.imag(), d.r_re[i] = R.real(), d.r_im[i] = R.imag();
    }
    for (std::size_t j = 0; j < n2; ++j) {
        const cplx v = np.n2.var[j];
        cplx Q = 0.0, S = -v;
        if (s.route == Route::Product) {
            if (circle) Q = v, S = 0.0;
            else if (keyhole) Q = v, S = v * isx;
            else S = v;
        }
        d.q_re[j] = Q.real(), d.q_im[j] = Q.imag(), d.s_re[j] = S.real(), d.s_im[j] = S.imag();
    }
    return d;
}

Eigen::MatrixXcd factors(const contour::Nodes& n, const std::vector<Exponents>& ex) {
    Eigen::MatrixXcd g(ex.size(), n.size());
    for (std::size_t k = 0; k < n.size(); ++k)
        for (std::size_t i = 0; i < ex.size(); ++i) {
            const Exponents& e = ex[i];
            g(i, k) = std::exp(e.alpha * n.la[k] + e.beta * n.lb[k] + e.gamma * n.lw[k] + e.logpref) * n.weight[k];
        }
    return g;
}

Eigen::MatrixXcd evaluate(const Setup& s, const NodePair& np, const std::vector<Exponents>& rows,
                          const std::vector<Exponents>& cols) {
    const Denominator d = denominator(s, np);
    const Eigen::MatrixXcd g1 = factors(np.n1, rows), g2 = factors(np.n2, cols);
    const double c = -(s.limit ? 1.0 : 1.0 - s.xi) / (4.0 * pi * pi);
    Eigen::MatrixXcd out(rows.size(), cols.size());
    if (rows.size() == 1 && cols.size() == 1) {
        std::vector<double> ar(np.n1.size()), ai(np.n1.size()), br(np.n2.size()), bi(np.n2.size());
        for (std::size_t k = 0; k < ar.size(); ++k) ar[k] = g1(0, k).real(), ai[k] = g1(0, k).imag();
        for (std::size_t k = 0; k < br.size(); ++k) br[k] = g2(0, k).real(), bi[k] = g2(0, k).imag();
        out(0, 0) = c * simd::cauchy_bilinear(d.rows(), ar.data(), ai.data(), d.cols(), br.data(), bi.data());
        return out;
    }
    out.setZero();
    const std::size_t n1 = np.n1.size(), n2 = np.n2.size(), chunk = 256;
    Eigen::MatrixXcd cm(n1, chunk);
    for (std::size_t j0 = 0; j0 < n2; j0 += chunk) {
        const std::size_t w = std::min(chunk, n2 - j0);
        simd::ColFactors cf = d.cols();
        cf.q_re += j0, cf.q_im += j0, cf.s_re += j0, cf.s_im += j0, cf.n = w;
        simd::cauchy_fill(d.rows(), cf, cm.data(), n1);
        out.noalias() += (g1 * cm.leftCols(w)) * g2.middleCols(j0, w).transpose();
    }
    return c * out;
}

Eigen::MatrixXcd refine(const Setup& s, const QuadratureConfig& q, const std::vector<Exponents>& rows,
                        const std::vector<Exponents>& cols, BlockReport& rep) {
    const int L = max_level(s, q);
    Eigen::MatrixXcd prev;
    for (int level = 0; level <= L; ++level) {
        const NodePair np = nodes_at(s, q, level);
        Eigen::MatrixXcd cur = evaluate(s, np, rows, cols);
        if (!cur.allFinite()) throw ConvergenceError("quadrature", "non-finite contour integral");
        rep.nodes = static_cast<int>(std::max(np.n1.size(), np.n2.size()));
        rep.levels = level + 1;
        if (level > 0) {
            rep.error = (cur - prev).cwiseAbs().maxCoeff();
            if (rep.error < q.tol) {
                rep.max_imag = cur.imag().cwiseAbs().maxCoeff();
                return cur;
            }
        }
        prev = std::move(cur);
    }
    throw ConvergenceError("quadrature", "contour quadrature did not reach tol " + std::to_string(q.tol) +
                                             " (last change " + std::to_string(rep.error) + ")");
}

std::vector<Exponents> rows_for(const std::vector<HalfInt>& xs, const Params& p) {
    std::vector<Exponents> r;
    for (HalfInt x : xs) r.push_back(row_exponents(x, p));
    return r;
}

std::vector<Exponents> cols_for(const std::vector<HalfInt>& ys, const Params& p, Route route) {
    std::vector<Exponents> c;
    for (HalfInt y : ys) c.push_back(col_exponents(y, p, route));
    return c;
}

Eigen::MatrixXd direct_block(const Setup& s, const QuadratureConfig& q, const std::vector<HalfInt>& xs,
                             const std::vector<HalfInt>& ys, BlockReport& rep) {
    if (xs.empty() || ys.empty()) return Eigen::MatrixXd(xs.size(), ys.size());
    return refine(s, q, rows_for(xs, s.par), cols_for(ys, s.par, s.route), rep).real();
}

void merge(BlockReport& into, const BlockReport& r) {
    into.nodes = std::max(into.nodes, r.nodes);
    into.levels = std::max(into.levels, r.levels);
    into.error = std::max(into.error, r.error);
    into.max_imag = std::max(into.max_imag, r.max_imag);
}

// Auto route: ++ by the product form, +- by the difference form, -+ by
// symmetry and -- by reflection to (-z, -z').
Eigen::MatrixXd auto_block(Setup s, const QuadratureConfig& q, const std::vector<HalfInt>& xs,
                           const std::vector<HalfInt>& ys, BlockReport& rep) {
    std::vector<int> xp, xm, yp, ym;
    for (int i = 0; i < static_cast<int>(xs.size()); ++i) (xs[i].positive() ? xp : xm).push_back(i);
    for (int j = 0; j < static_cast<int>(ys.size()); ++j) (ys[j].positive() ? yp : ym).push_back(j);
    auto pick = [](const std::vector<HalfInt>& v, const std::vector<int>& idx, bool negate) {
        std::vector<HalfInt> out;
        for (int i : idx) out.push_back(negate ? -v[i] : v[i]);
        return out;
    };
    Eigen::MatrixXd out(xs.size(), ys.size());
    auto scatter = [&](const Eigen::MatrixXd& b, const std::vector<int>& ri, const std::vector<int>& ci) {
        for (std::size_t i = 0; i < ri.size(); ++i)
            for (std::size_t j = 0; j < ci.size(); ++j) out(ri[i], ci[j]) = b(i, j);
    };
    BlockReport r;
    if (!xp.empty() && !yp.empty()) {
        s.route = Route::Product;
        scatter(direct_block(s, q, pick(xs, xp, false), pick(ys, yp, false), r), xp, yp);
        merge(rep, r);
    }
    if (!xp.empty() && !ym.empty()) {
        s.route = Route::Difference;
        scatter(direct_block(s, q, pick(xs, xp, false), pick(ys, ym, false), r), xp, ym);
        merge(rep, r);
    }
    if (!xm.empty() && !yp.empty()) {
        s.route = Route::Difference;
        scatter(direct_block(s, q, pick(ys, yp, false), pick(xs, xm, false), r).transpose(), xm, yp);
        merge(rep, r);
    }
    if (!xm.empty() && !ym.empty()) {
        Setup neg = s;
        neg.par = s.par.negated();
        neg.route = Route::Product;
        const std::vector<HalfInt> rx = pick(xs, xm, true), ry = pick(ys, ym, true);
        Eigen::MatrixXd b = -direct_block(neg, q, rx, ry, r);
        for (std::size_t i = 0; i < rx.size(); ++i)
            for (std::size_t j = 0; j < ry.size(); ++j) {
                b(i, j) *= epsilon(-rx[i]) * epsilon(-ry[j]);
                if (rx[i] == ry[j]) b(i, j) += 1.0;
            }
        scatter(b, xm, ym);
        merge(rep, r);
    }
    return out;
}

Setup make_setup(bool limit, double xi, const Params& p, const QuadratureConfig& q, Route route) {
    return {limit, xi, p, limit ? ContourShape::Circle : q.shape_for(xi), route};
}

ContourResult pointwise(const Setup& s, const QuadratureConfig& q, HalfInt x, HalfInt y) {
    BlockReport rep;
    ContourResult res;
    if (s.route == Route::Auto) {
        // one-point blocks never mix signs, so the imaginary part is that of the
        // direct sub-evaluation
        Setup d = s;
        HalfInt a = x, b = y;
        double sign = 1.0, shift = 0.0;
        if (!x.positive() && !y.positive()) {
            d.par = s.par.negated();
            a = -x, b = -y;
            sign = -epsilon(x) * epsilon(y);
            shift = x == y ? 1.0 : 0.0;
        } else if (!x.positive()) {
            std::swap(a, b);
        }
        d.route = b.positive() ? Route::Product : Route::Difference;
        const cplx v = refine(d, q, {row_exponents(a, d.par)}, {col_exponents(b, d.par, d.route)}, rep)(0, 0);
        res.value = shift + sign * v.real();
        res.imag = v.imag();
    } else {
        const cplx v = refine(s, q, {row_exponents(x, s.par)}, {col_exponents(y, s.par, s.route)}, rep)(0, 0);
        res.value = v.real();
        res.imag = v.imag();
    }
    res.error = rep.error;
    res.nodes = rep.nodes;
    res.levels = rep.levels;
    return res;
}

}  // namespace

double epsilon(HalfInt x) {
    if (x.positive()) return 1.0;
    return x.floor_abs() % 2 == 0 ? 1.0 : -1.0;
}

double density_constant(const Params& p) {
    if (p.z == p.zp) {
        const double s = std::sin(pi * p.z.real()) / pi;
        return s * s;
    }
    const cplx v = std::sin(pi * p.z) * std::sin(pi * p.zp) * (p.z - p.zp) / (pi * std::sin(pi * (p.z - p.zp)));
    return v.real();
}

double underline_limit_integrable(HalfInt x, HalfInt y, const Params& p) {
    const double a = x.value() + 0.5, b = y.value() + 0.5;
    if (p.z == p.zp) {
        const double z = p.z.real(), s = std::sin(pi * z) / pi;
        if (x == y) return s * s * trigamma(z + a).real();
        const double sg = gamma_sign(z + a) * gamma_sign(z + b);
        return s * s * sg * (digamma(z + a) - digamma(z + b)).real() / (x.value() - y.value());
    }
    const cplx pre = std::sin(pi * p.z) * std::sin(pi * p.zp) / (pi * std::sin(pi * (p.z - p.zp)));
    if (x == y) return (pre * (digamma(p.z + a) - digamma(p.zp + a))).real();
    auto pq = [&](double t, cplx& P, cplx& Q) {
        const cplx l1 = log_gamma(p.z + t), l2 = log_gamma(p.zp + t);
        const double d = 0.5 * (l1 + l2).real();
        P = std::exp(l1 - d);
        Q = std::exp(l2 - d);
    };
    cplx px, qx, py, qy;
    pq(a, px, qx);
    pq(b, py, qy);
    return (pre * (px * qy - qx * py)).real() / (x.value() - y.value());
}

Eigen::MatrixXd underline_limit_integrable(const std::vector<HalfInt>& xs, const std::vector<HalfInt>& ys,
                                          const Params& p) {
    const bool equal = p.z == p.zp;
    const cplx pre = equal ? cplx(0.0) : std::sin(pi * p.z) * std::sin(pi * p.zp) / (pi * std::sin(pi * (p.z - p.zp)));
    const double s2 = equal ? std::pow(std::sin(pi * p.z.real()) / pi, 2) : 0.0;
    struct Point {
        cplx P, Q;      // z != z'
        double psi, sg;  // z = z'
    };
    auto table = [&](const std::vector<HalfInt>& v) {
        std::vector<Point> t(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double a = v[i].value() + 0.5;
            if (equal) {
                t[i].psi = digamma(p.z.real() + a).real();
                t[i].sg = gamma_sign(p.z.real() + a);
            } else {
                const cplx l1 = log_gamma(p.z + a), l2 = log_gamma(p.zp + a);
                const double d = 0.5 * (l1 + l2).real();
                t[i].P = std::exp(l1 - d);
                t[i].Q = std::exp(l2 - d);
            }
        }
        return t;
    };
    const std::vector<Point> tx = table(xs), ty = table(ys);
    Eigen::MatrixXd m(xs.size(), ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] == ys[j]) {
                m(i, j) = underline_limit_integrable(xs[i], ys[j], p);
                continue;
            }
            const double dx = xs[i].value() - ys[j].value();
            if (equal)
                m(i, j) = s2 * tx[i].sg * ty[j].sg * (tx[i].psi - ty[j].psi) / dx;
            else
                m(i, j) = (pre * (tx[i].P * ty[j].Q - tx[i].Q * ty[j].P)).real() / dx;
        }
    return m;
}

void QuadratureConfig::validate(double xi) const {
    require(nodes >= 8, "quadrature.nodes", "nodes must be >= 8");
    require(max_nodes >= nodes && max_nodes <= (1 << 18), "quadrature.max_nodes",
            "max_nodes must lie in [nodes, 2^18]");
    require(tol > 0, "quadrature.tol", "tol must be positive");
    require(step > 0 && step <= 0.5, "quadrature.step", "step must lie in (0, 0.5]");
    require(gl_nodes >= 8 && gl_nodes <= 4096, "quadrature.gl_nodes", "gl_nodes must lie in [8, 4096]");
    require(max_levels >= 1 && max_levels <= 8, "quadrature.max_levels", "max_levels must lie in [1, 8]");
    require(rho > 0 && rho < 0.5, "quadrature.rho", "rho must lie in (0, 1/2)");
    require(rho1 > 0 && rho1 < rho2 && rho2 < 0.5, "quadrature.rho1_rho2", "need 0 < rho1 < rho2 < 1/2");
    require(ray_angle >= 0 && ray_angle < pi / 2, "quadrature.ray_angle", "ray_angle must lie in [0, pi/2)");
    require(u_max > 1e3, "quadrature.u_max", "u_max must exceed 1e3");
    if (xi > 0 && radius != 0.0)
        require(radius > 1.0 && radius < 1.0 / std::sqrt(xi), "quadrature.radius",
                "circle radius must lie in (max(1, sqrt(xi)), 1/sqrt(xi))");
}

ContourShape QuadratureConfig::shape_for(double xi) const {
    if (shape != ContourShape::Auto) return shape;
    return xi >= keyhole_above ? ContourShape::Keyhole : ContourShape::Circle;
}

ContourResult underline_limit_contour(HalfInt x, HalfInt y, const Params& p, const QuadratureConfig& q, Route route) {
    q.validate(0.0);
    ContourResult r = pointwise(make_setup(true, 0.0, p, q, route), q, x, y);
    const double mu = (p.zp - p.z).real();
    const double s_max = std::asinh(2.0 / pi * std::log(q.u_max));
    const double U = std::exp(pi / 2 * std::sinh(s_max));
    r.tail_bound = std::pow(U, mu - 1.0) / (1.0 - std::abs(mu));
    return r;
}

ContourResult underline_prelimit_contour(HalfInt x, HalfInt y, const XiParams& p, const QuadratureConfig& q,
                                         Route route) {
    q.validate(p.xi);
    return pointwise(make_setup(false, p.xi, p.base, q, route), q, x, y);
}

Eigen::MatrixXd underline_prelimit_block(const std::vector<HalfInt>& xs, const std::vector<HalfInt>& ys,
                                         const XiParams& p, const QuadratureConfig& q, Route route,
                                         BlockReport* report) {
    q.validate(p.xi);
    BlockReport rep;
    const Setup s = make_setup(false, p.xi, p.base, q, route);
    Eigen::MatrixXd out = route == Route::Auto ? auto_block(s, q, xs, ys, rep) : direct_block(s, q, xs, ys, rep);
    if (report) *report = rep;
    return out;
}

Eigen::MatrixXd underline_limit_block(const std::vector<HalfInt>& xs, const std::vector<HalfInt>& ys,
                                      const Params& p, const QuadratureConfig& q, Route route,
                                      BlockReport* report) {
    q.validate(0.0);
    BlockReport rep;
    const Setup s = make_setup(true, 0.0, p, q, route);
    Eigen::MatrixXd out = route == Route::Auto ? auto_block(s, q, xs, ys, rep) : direct_block(s, q, xs, ys, rep);
    if (report) *report = rep;
    return out;
}

}  // namespace gk
