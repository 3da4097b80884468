#include "gk/errors.hpp"
#include "gk/kernel.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace gk;

namespace {

const Params half = Params::make(0.5, 0.5);
const Params princ = Params::make({0.4, 0.7}, {0.4, -0.7});
const Params comp = Params::make(-0.3, -0.6);

HalfInt h(const char* s) { return HalfInt::parse(s); }

}  // namespace

TEST_CASE("density constant") {
    CHECK(density_constant(half) == doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-15));
    const double c = density_constant(Params::make({0.3, 0.4}, {0.3, -0.4}));
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
}

TEST_CASE("diagonal of the limit kernel at z = z' = 1/2") {
    const double want = 0.5 - 4.0 / (std::numbers::pi * std::numbers::pi);
    CHECK(underline_limit_integrable(h("1/2"), h("1/2"), half) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("limit kernel: integrable form against both contour forms") {
    QuadratureConfig q;
    q.tol = 1e-11;
    for (const Params& p : {half, princ, comp}) {
        for (auto [x, y] : {std::pair{"1/2", "3/2"}, {"5/2", "5/2"}, {"1/2", "-1/2"}, {"7/2", "-3/2"},
                            {"-1/2", "-5/2"}, {"-3/2", "9/2"}}) {
            const double ref = underline_limit_integrable(h(x), h(y), p);
            CHECK(underline_limit_contour(h(x), h(y), p, q).value == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
        }
        // the +- block has both forms available
        const double prod = underline_limit_contour(h("1/2"), h("-1/2"), p, q, Route::Product).value;
        const double diff = underline_limit_contour(h("1/2"), h("-1/2"), p, q, Route::Difference).value;
        CHECK(prod == doctest::Approx(diff).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("limit kernel symmetries") {
    const std::vector<HalfInt> pts{h("-7/2"), h("-3/2"), h("-1/2"), h("1/2"), h("5/2")};
    for (const Params& p : {half, princ, comp}) {
        const Eigen::MatrixXd m = underline_limit_integrable(pts, pts, p);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j) {
                CHECK(m(i, j) == doctest::Approx(m(j, i)).epsilon(1e-12).scale(1.0));
                CHECK(m(i, j) == doctest::Approx(underline_limit_integrable(pts[i], pts[j], p)).epsilon(1e-13).scale(1.0));
                // K under x -> -x, z -> -z picks up sgn(x) sgn(y)
                const double s = (pts[i].positive() ? 1.0 : -1.0) * (pts[j].positive() ? 1.0 : -1.0);
                const double k = k_from_underline(pts[i], pts[j], m(i, j));
                const double r = k_from_underline(-pts[i], -pts[j],
                                                  underline_limit_integrable(-pts[i], -pts[j], p.negated()));
                CHECK(k == doctest::Approx(s * r).epsilon(1e-11).scale(1.0));
            }
    }
}

TEST_CASE("pre-limit contour against the spectral projection") {
    for (double xi : {0.3, 0.5}) {
        const XiParams p = XiParams::make(princ, xi);
        const int N = 6 + spectral_margin(xi);
        const WindowKernel s = underline_prelimit_spectral(N, p);
        for (auto [x, y] : {std::pair{"1/2", "1/2"}, {"3/2", "-1/2"}, {"-5/2", "-1/2"}, {"-1/2", "11/2"}}) {
            const double c = underline_prelimit_contour(h(x), h(y), p).value;
            CHECK(c == doctest::Approx(s(h(x), h(y))).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("pre-limit contour shapes agree") {
    const XiParams p = XiParams::make(half, 0.9);
    QuadratureConfig circ, key;
    circ.shape = ContourShape::Circle;
    circ.max_nodes = 1 << 16;
    key.shape = ContourShape::Keyhole;
    for (auto [x, y] : {std::pair{"1/2", "1/2"}, {"3/2", "-1/2"}, {"-3/2", "-1/2"}}) {
        const double a = underline_prelimit_contour(h(x), h(y), p, circ).value;
        const double b = underline_prelimit_contour(h(x), h(y), p, key).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("spectral kernel is an orthogonal projection") {
    const WindowKernel k = underline_prelimit_spectral(10, XiParams::make(half, 0.4));
    const Eigen::MatrixXd& m = k.values();
    CHECK((m * m - m).norm() < 1e-10);
    CHECK((m - m.transpose()).norm() < 1e-12);
    const Eigen::VectorXd ev = difference_operator_spectrum(10, XiParams::make(half, 0.4));
    CHECK(ev.size() == 20);
}

TEST_CASE("one-point function against the enumeration") {
    const XiParams p = XiParams::make(princ, 0.2);
    const Enumeration e = enumerate_weights(p, 18);
    for (const char* x : {"1/2", "-1/2", "5/2", "-7/2"}) {
        const double k = underline_prelimit_contour(h(x), h(x), p).value;
        const OracleValue o = correlation_oracle({h(x)}, e, Side::Underline);
        CHECK(std::abs(k - o.value) <= o.tail + 1e-7);
    }
}

TEST_CASE("J-transform and gauge") {
    const WindowKernel u = underline_limit_window(3, half);
    const WindowKernel k = j_transform(u);
    CHECK_FALSE(k.underline());
    CHECK(k.limit());
    for (int i = 0; i < k.size(); ++i) {
        const HalfInt x = k.point(i);
        CHECK(k(x, x) == doctest::Approx(x.positive() ? u(x, x) : 1.0 - u(x, x)).epsilon(1e-14));
        CHECK(k_from_underline(x, x, u(x, x)) == doctest::Approx(k(x, x)));
    }
    CHECK(epsilon(h("1/2")) == 1.0);
    CHECK(epsilon(h("-1/2")) == 1.0);
    CHECK(epsilon(h("-3/2")) == -1.0);

    Eigen::VectorXd one = Eigen::VectorXd::Ones(k.size());
    CHECK((gauge_transform(k, one).values() - k.values()).norm() == 0.0);
    Eigen::VectorXd phi(k.size());
    for (int i = 0; i < k.size(); ++i) phi(i) = 0.5 + i;
    const Eigen::MatrixXd g = gauge_transform(k.values(), phi);
    CHECK(g.determinant() == doctest::Approx(k.values().determinant()).epsilon(1e-10));
    CHECK(g.topLeftCorner(3, 3).determinant() == doctest::Approx(k.values().topLeftCorner(3, 3).determinant()).epsilon(1e-10));
}

TEST_CASE("weighted blocks") {
    const WindowKernel k = j_transform(underline_limit_window(8, princ));
    const WeightedBlocks b = weighted_blocks(k);
    double tr = 0.0, hs = 0.0;
    for (int i = 0; i < 8; ++i) {
        const HalfInt x = HalfInt::above(i);
        tr += k(x, x) / x.value();
        for (int j = 0; j < 8; ++j) {
            const HalfInt y = -HalfInt::above(j);
            hs += std::pow(k(x, y), 2) / (x.value() * -y.value());
        }
    }
    CHECK(b.trace_pp == doctest::Approx(tr).epsilon(1e-13));
    CHECK(b.hs_pm == doctest::Approx(std::sqrt(hs)).epsilon(1e-13));
    // the ++ block is positive semidefinite, so trace norm equals trace
    CHECK(b.trace_norm_pp == doctest::Approx(b.trace_pp).epsilon(1e-8));
}

TEST_CASE("quadrature configuration is validated") {
    QuadratureConfig q;
    q.rho1 = 0.5;
    q.rho2 = 0.4;
    CHECK_THROWS_AS(underline_limit_contour(h("1/2"), h("-1/2"), half, q, Route::Difference), PreconditionError);
    QuadratureConfig r;
    r.max_nodes = 1 << 20;
    CHECK_THROWS_AS(r.validate(0.5), PreconditionError);
    QuadratureConfig t;
    t.max_nodes = 64;
    t.tol = 1e-15;
    t.shape = ContourShape::Circle;
    CHECK_THROWS_AS(underline_prelimit_contour(h("1/2"), h("1/2"), XiParams::make(half, 0.9), t), ConvergenceError);
}
