#include "gk/errors.hpp"
#include "gk/functionals.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gk;

namespace {

const Params princ = Params::make({0.3, 0.5}, {0.3, -0.5});
HalfInt h(const char* s) { return HalfInt::parse(s); }

// E[Phi_f] = sum over S of prod_S f * det K_S, by brute force over subsets of
// the support of f.
double correlation_expansion(const TestFunction& f, const WindowKernel& k) {
    std::vector<int> idx;
    for (int i = 0; i < k.size(); ++i)
        if (f(k.point(i)) != 0.0) idx.push_back(i);
    const int n = static_cast<int>(idx.size());
    double total = 0.0;
    for (unsigned m = 0; m < (1u << n); ++m) {
        std::vector<int> s;
        double w = 1.0;
        for (int i = 0; i < n; ++i)
            if (m >> i & 1u) s.push_back(idx[i]), w *= f(k.point(idx[i]));
        Eigen::MatrixXd sub(s.size(), s.size());
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = 0; b < s.size(); ++b) sub(a, b) = k.values()(s[a], s[b]);
        total += w * (s.empty() ? 1.0 : sub.determinant());
    }
    return total;
}

}  // namespace

TEST_CASE("test functions") {
    const TestFunction f = TestFunction::parse("1/2:-1,-3/2:0.5");
    CHECK(f.radius() == 2);
    CHECK(f(h("1/2")) == -1.0);
    CHECK(f(h("-3/2")) == 0.5);
    CHECK(f(h("3/2")) == 0.0);
    CHECK(f(h("99/2")) == 0.0);
    CHECK(f.reflected()(h("-1/2")) == -1.0);
    CHECK_THROWS_AS(TestFunction::parse("1/2"), PreconditionError);
    CHECK_THROWS_AS(TestFunction::parse("1/2:1,1/2:2"), PreconditionError);

    const TestFunction d = TestFunction::inverse_decay(-0.3, 2);
    CHECK(d(h("1/2")) == 0.0);
    CHECK(d(h("9/2")) == doctest::Approx(-0.3 / 4.5).epsilon(1e-15));
    CHECK(d(h("-9/2")) == doctest::Approx(-0.3 / 4.5).epsilon(1e-15));
    CHECK(d.widened(6)(h("9/2")) == doctest::Approx(d(h("9/2"))));
    CHECK(d.decay_constant() >= 0.3 - 1e-15);

    const TestFunction g = f.product(d);
    for (const char* x : {"1/2", "-3/2", "9/2", "-11/2"})
        CHECK(1.0 + g(h(x)) == doctest::Approx((1.0 + f(h(x))) * (1.0 + d(h(x)))).epsilon(1e-14));
    // 1 + f must stay positive along the tail
    CHECK_THROWS_AS(TestFunction().with_tails({{-2.0, 0.0, 1.0}}, {}), PreconditionError);
}

TEST_CASE("multiplicative functionals") {
    CHECK(phi_eval(TestFunction(), FiniteConfig::parse("1/2,-5/2")) == 1.0);
    const TestFunction f = TestFunction::parse("1/2:-1");
    CHECK(phi_eval(f, FiniteConfig()) == 1.0);
    CHECK(phi_eval(f, FiniteConfig::parse("1/2,3/2")) == 0.0);
    const TestFunction g = TestFunction::parse("1/2:0.5,-1/2:-0.25");
    CHECK(phi_eval(g, FiniteConfig::parse("-1/2,1/2")) == doctest::Approx(1.5 * 0.75));

    // the unlisted part contributes at most exp(c * sum 1/|x|) - 1 in relative terms
    const TestFunction d = TestFunction::inverse_decay(0.1, 1);
    const SparseConfig sc{{h("5/2"), h("-7/2")}, 0.05};
    const PhiValue v = phi_eval(d, sc);
    CHECK(v.value == doctest::Approx((1 + 0.1 / 2.5) * (1 + 0.1 / 3.5)).epsilon(1e-14));
    CHECK(v.error > 0.0);
    CHECK(v.error < 0.02);
}

TEST_CASE("expectation by enumeration") {
    const XiParams p = XiParams::make(princ, 0.2);
    const Estimate one = expectation_sum(TestFunction(), p, 12);
    CHECK(one.value == doctest::Approx(1.0).epsilon(2 * one.error + 1e-15));
    const Enumeration e = enumerate_weights(p, 16);
    const Estimate avoid = expectation_sum(TestFunction::parse("1/2:-1"), e);
    const OracleValue rho = correlation_oracle({h("1/2")}, e, Side::K);
    CHECK(avoid.value == doctest::Approx(1.0 - rho.value - e.tail_mass).epsilon(1e-12));
}

TEST_CASE("Fredholm determinant against the correlation expansion") {
    const XiParams p = XiParams::make(princ, 0.3);
    const WindowKernel k = j_transform(underline_prelimit_spectral(5 + spectral_margin(0.3), p).central(5));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int trial = 0; trial < 5; ++trial) {
        std::map<HalfInt, double> m;
        for (int i = 0; i < 5; ++i) m[HalfInt::from_twice(2 * (static_cast<int>(rng() % 8)) - 7)] = u(rng);
        const TestFunction f = TestFunction::from_points(m);
        const DetResult d = expectation_det(f, k);
        CHECK(d.value == doctest::Approx(correlation_expansion(f, k)).epsilon(1e-10));
        // and against the enumeration
        const Estimate s = expectation_sum(f, p, 24);
        CHECK(std::abs(d.value - s.value) <= s.error + 1e-8);
    }
    CHECK(expectation_det(TestFunction(), k).value == 1.0);
}

TEST_CASE("Fredholm determinant with a decaying tail") {
    const XiParams p = XiParams::make(princ, 0.1);
    const TestFunction f = TestFunction::parse("1/2:0.4,-1/2:-0.3").widened(1);
    const TestFunction g = f.with_tails({{-0.2, 0.0, 1.0}}, {{0.2, 0.0, 1.0}});
    const WindowKernel k = j_transform(underline_prelimit_spectral(64 + spectral_margin(0.1), p).central(64));
    const DetResult d = expectation_det(g, k);
    CHECK(d.stabilized);
    const Estimate s = expectation_sum(g, p, 30);
    CHECK(std::abs(d.value - s.value) <= s.error + 10 * d.last_change + 1e-7);
}

TEST_CASE("regularized determinant") {
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(4, 4);
    CHECK(regularized_det(zero, 2).regularized == doctest::Approx(1.0));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    Eigen::MatrixXd a(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) a(i, j) = u(rng);
    // in finite dimensions the ++ and -- traces restore exactly what e^{-A} removed
    const RegularizedDet r = regularized_det(a, 3);
    CHECK(r.regularized == doctest::Approx(r.ordinary).epsilon(1e-12));
    CHECK(r.ordinary == doctest::Approx((Eigen::MatrixXd::Identity(6, 6) + a).determinant()).epsilon(1e-12));
}

TEST_CASE("Janossy densities sum to one") {
    const WindowKernel k = underline_prelimit_spectral(3 + spectral_margin(0.3), XiParams::make(princ, 0.3)).central(3);
    const Eigen::MatrixXd& m = k.values();
    double total = 0.0;
    for (unsigned s = 0; s < 64; ++s) {
        std::vector<int> idx;
        for (int i = 0; i < 6; ++i)
            if (s >> i & 1u) idx.push_back(i);
        total += janossy(m, idx);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(janossy(m, {}) == doctest::Approx((Eigen::MatrixXd::Identity(6, 6) - m).determinant()).epsilon(1e-12));
    CHECK(janossy(k, FiniteConfig::parse("1/2")) == doctest::Approx(janossy(m, {3})));
}

TEST_CASE("sparseness certificate") {
    const int N = 512;
    std::vector<double> flat(2 * N, 1.0), sq(2 * N);
    for (int i = 0; i < 2 * N; ++i) sq[i] = 1.0 / std::pow(std::abs(i - N + 0.5), 2);
    CHECK_FALSE(sparseness_certificate(flat).passed);
    const SparsenessReport r = sparseness_certificate(sq);
    CHECK(r.passed);
    CHECK(r.remainder_estimate < 1e-2);
}
