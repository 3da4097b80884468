#include "gk/rn.hpp"

#include "gk/errors.hpp"

#include <cmath>

namespace gk {

double RnExpression::evaluate(const FiniteConfig& x, double xi) const {
    double s = 0.0;
    for (const RnTerm& t : terms) s += t.a * std::pow(xi, t.k) * phi_eval(t.f, x);
    return s;
}

PhiValue RnExpression::evaluate_limit(const SparseConfig& x) const {
    PhiValue out{0.0, 0.0};
    for (const RnTerm& t : terms) {
        const PhiValue v = phi_eval(t.f, x);
        out.value += t.a * v.value;
        out.error += std::abs(t.a) * v.error;
    }
    return out;
}

double rn_exact(const FinitaryPermutation& s, const FiniteConfig& x, const XiParams& p) {
    require(x.is_balanced(), "balanced", "rn_exact needs a balanced configuration");
    const FiniteConfig y = apply_sigma_modified(s.inverse(), x);
    return std::exp(log_weight_config(y, p) - log_weight_config(x, p));
}

double ClosedForm::evaluate(const FiniteConfig& x, double xi) const {
    return a * std::pow(xi, k) * phi_eval(f_out, x);
}

namespace {

TestFunction zero_on(int N) { return TestFunction::on_window(N, std::vector<double>(2 * N, 0.0)); }

}  // namespace

ClosedForm rn_closed_form(int n, const FiniteConfig& xw, int N, const Params& p) {
    require(N > std::abs(n), "window", "closed form needs N > |n|");
    for (HalfInt x : xw.points())
        require(x.floor_abs() < N, "window", "window part has a point outside [-N, N]: " + x.str());
    if (n < 0) {
        ClosedForm c = rn_closed_form(-n, xw.reflected(), N, p.negated());
        c.f_out = c.f_out.reflected();
        return c;
    }
    ClosedForm c{1.0, 0, zero_on(N)};
    if (n == 0) {
        const HalfInt h = HalfInt::above(0);
        const bool has_m = xw.contains(-h), has_p = xw.contains(h);
        if (has_m != has_p) return c;
        const int s = has_p ? -1 : 1;
        double prod = 1.0;
        for (HalfInt x : xw.points()) {
            if (x == h || x == -h) continue;
            const double v = std::abs(x.value());
            prod *= (v - 0.5) / (v + 0.5);
        }
        c.a = std::pow(p.zzp(), s) * std::pow(prod, 2 * s);
        c.k = s;
        const std::vector<TailFactor> t{{-0.5, 0.0, 2.0 * s}, {0.5, 0.0, -2.0 * s}};
        c.f_out = c.f_out.with_tails(t, t);
        return c;
    }
    const HalfInt lo = HalfInt::above(n - 1), hi = HalfInt::above(n);
    const bool occ_lo = xw.contains(lo), occ_hi = xw.contains(hi);
    if (occ_lo == occ_hi) return c;
    const int s = occ_lo ? 1 : -1;
    const double pi = (occ_lo ? lo : hi).value(), t = pi + 0.5 * s;
    double a = std::pow(((p.z + t) * (p.zp + t)).real() / (t * t), s);
    for (HalfInt x : xw.points()) {
        const double v = x.value();
        if (x.positive()) {
            if (v == pi) continue;
            const double r = (v - pi - s) / (v - pi);
            a *= r * r;
        } else {
            const double r = (-v + pi + s) / (-v + pi);
            a /= r * r;
        }
    }
    c.a = a;
    c.k = s;
    c.f_out = c.f_out.with_tails({{-1.0 * s, -pi, 2.0}}, {{1.0 * s, pi, -2.0}});
    return c;
}

ClosedForm rn_compose(const FinitaryPermutation& s, const FiniteConfig& xw, int N, const Params& p) {
    require(N > s.support_radius(), "window", "window too small for the permutation");
    ClosedForm total{1.0, 0, zero_on(N)};
    FiniteConfig cur = xw;
    for (int g : s.word) {
        const ClosedForm c = rn_closed_form(g, cur, N, p);
        total.a *= c.a;
        total.k += c.k;
        total.f_out = total.f_out.product(c.f_out);
        cur = apply_generator_modified(g, cur);
    }
    return total;
}

RnExpression rn_expression(const FinitaryPermutation& s, int N, const Params& p) {
    require(N > s.support_radius(), "window", "window too small for the permutation");
    require(2 * N <= 10, "window", "pattern expansion limited to 2N <= 10");
    const int n = 2 * N;
    std::vector<HalfInt> pts;
    for (int i = 0; i < n; ++i) pts.push_back(HalfInt::from_twice(2 * i - n + 1));
    RnExpression e;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<HalfInt> sel;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) sel.push_back(pts[i]);
        const ClosedForm c = rn_compose(s, FiniteConfig(sel), N, p);
        // 1{X ∩ W = X'} = sum over S ⊆ X' of (-1)^{|S|} Phi_{-1 on S ∪ (W \ X')}
        for (unsigned sub = mask;; sub = (sub - 1) & mask) {
            std::vector<double> vals(n, 0.0);
            int sign = 1;
            for (int i = 0; i < n; ++i) {
                if (!(mask >> i & 1u) || (sub >> i & 1u)) vals[i] = -1.0;
                if (sub >> i & 1u) sign = -sign;
            }
            const TestFunction f =
                TestFunction::on_window(N, vals).with_tails(c.f_out.tail_pos(), c.f_out.tail_neg());
            e.terms.push_back({sign * c.a, c.k, f});
            if (sub == 0) break;
        }
    }
    return e;
}

PhiValue rn_limit(const RnExpression& e, const SparseConfig& x) { return e.evaluate_limit(x); }

}  // namespace gk
