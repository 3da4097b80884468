#include "gk/errors.hpp"
#include "gk/rn.hpp"

#include <algorithm>
#include <cmath>

namespace gk {

FiniteConfig restrict_to(const FiniteConfig& x, int radius) {
    std::vector<HalfInt> v;
    for (HalfInt p : x.points())
        if (p.floor_abs() < radius) v.push_back(p);
    return FiniteConfig(std::move(v));
}

double CylinderFunction::operator()(const FiniteConfig& x) const { return fn(restrict_to(x, radius)); }

CylinderFunction CylinderFunction::constant(double c) {
    return {0, [c](const FiniteConfig&) { return c; }, "const:" + std::to_string(c), std::abs(c)};
}

CylinderFunction CylinderFunction::contains(HalfInt x) {
    return {static_cast<int>(x.floor_abs()) + 1, [x](const FiniteConfig& c) { return c.contains(x) ? 1.0 : 0.0; },
            "contains:" + x.str(), 1.0};
}

CylinderFunction CylinderFunction::avoids(HalfInt x) {
    return {static_cast<int>(x.floor_abs()) + 1, [x](const FiniteConfig& c) { return c.contains(x) ? 0.0 : 1.0; },
            "avoids:" + x.str(), 1.0};
}

CylinderFunction CylinderFunction::count(int radius) {
    require(radius >= 1, "cylinder", "count radius must be >= 1");
    return {radius, [](const FiniteConfig& c) { return static_cast<double>(c.size()); },
            "count:" + std::to_string(radius), 2.0 * radius};
}

CylinderFunction CylinderFunction::phi(const TestFunction& f) {
    require(!f.has_tail(), "cylinder", "cylinder functionals need window-supported f");
    double sup = 1.0;
    for (int i = 0; i < 2 * f.radius(); ++i)
        sup *= std::max(1.0, std::abs(1.0 + f(HalfInt::from_twice(2 * i - 2 * f.radius() + 1))));
    return {f.radius(), [f](const FiniteConfig& c) { return phi_eval(f, c); }, "phi:" + f.str(), sup};
}

CylinderFunction CylinderFunction::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    require(colon != std::string::npos, "cylinder", "expected kind:argument, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "const") {
        try {
            return constant(std::stod(arg));
        } catch (const std::exception&) {
            throw PreconditionError("cylinder", "bad constant '" + arg + "'");
        }
    }
    if (kind == "contains") return contains(HalfInt::parse(arg));
    if (kind == "avoids") return avoids(HalfInt::parse(arg));
    if (kind == "count") {
        try {
            return count(std::stoi(arg));
        } catch (const std::invalid_argument&) {
            throw PreconditionError("cylinder", "bad radius '" + arg + "'");
        }
    }
    if (kind == "phi") return phi(TestFunction::parse(arg));
    throw PreconditionError("cylinder", "unknown cylinder function kind '" + kind + "'");
}

TransportReport verify_transport(const FinitaryPermutation& s, const CylinderFunction& f, const Enumeration& e) {
    const XiParams& p = e.params;
    const FinitaryPermutation inv = s.inverse();
    TransportReport r;
    for (const WeightedPartition& w : e.items) {
        r.lhs += w.weight * f(apply_sigma_modified(s, w.config));
        const FiniteConfig pre = apply_sigma_modified(inv, w.config);
        r.rhs += std::exp(log_weight_config(pre, p)) * f(w.config);
    }
    // each generator changes |lambda| by at most one, so the two truncated sums
    // differ only on partitions of size > max_size - |word|
    const int m = static_cast<int>(s.word.size());
    r.budget = f.sup * tail_mass_beyond(std::max(e.max_size - m, 0), p) + 1e-9;
    r.difference = std::abs(r.lhs - r.rhs);
    r.passed = r.difference <= r.budget;
    return r;
}

TransportReport verify_transport(const FinitaryPermutation& s, const CylinderFunction& f, const XiParams& p,
                                 int max_size) {
    return verify_transport(s, f, enumerate_weights(p, max_size));
}

double pattern_expectation(const WindowKernel& k, int pattern_radius, const FiniteConfig& s, const TestFunction& f) {
    require(!k.underline(), "kernel_kind", "pattern expectations need a K-kind kernel");
    require(pattern_radius <= k.radius(), "window", "pattern window exceeds the kernel window");
    const int n = k.size();
    Eigen::VectorXd d(n), c(n);
    for (int i = 0; i < n; ++i) {
        const HalfInt x = k.point(i);
        if (x.floor_abs() < pattern_radius) {
            const bool in = s.contains(x);
            d[i] = in ? 0.0 : 1.0;
            c[i] = in ? 1.0 : -1.0;
        } else {
            d[i] = 1.0;
            c[i] = f(x);
        }
    }
    Eigen::MatrixXd m = c.asDiagonal() * k.values();
    m.diagonal() += d;
    return m.partialPivLu().determinant();
}

LimitTransportReport verify_limit_transport(const FinitaryPermutation& s, const CylinderFunction& f, const Params& p,
                                            const LimitTransportOptions& opt) {
    require(!opt.windows.empty(), "windows", "need at least one truncation window");
    const int R = std::max({f.radius, s.support_radius() + 1, 1});
    require(2 * R <= 16, "window", "pattern window limited to 16 points");
    for (int M : opt.windows) require(M >= R, "windows", "truncation windows must contain the pattern window");
    LimitTransportReport r;
    r.pattern_radius = R;
    r.budget = opt.budget;

    const WindowKernel kw = j_transform(underline_limit_window(R, p));
    const int n = 2 * R;
    std::vector<FiniteConfig> patterns;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<HalfInt> v;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) v.push_back(kw.point(i));
        patterns.emplace_back(std::move(v));
    }
    for (const FiniteConfig& S : patterns) {
        const double fv = f(apply_word_modified(s, S));
        if (fv != 0.0) r.lhs += fv * janossy(kw, S);
    }

    std::vector<ClosedForm> forms;
    for (const FiniteConfig& S : patterns) forms.push_back(rn_compose(s, S, R, p));
    for (int M : opt.windows) {
        const WindowKernel km = j_transform(underline_limit_window(M, p));
        double v = 0.0;
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            const double fv = f(patterns[i]);
            if (fv == 0.0) continue;
            v += fv * forms[i].a * pattern_expectation(km, R, patterns[i], forms[i].f_out);
        }
        r.rhs_by_window.push_back(v);
    }
    const auto& v = r.rhs_by_window;
    const std::size_t m = v.size();
    if (m == 1) {
        r.rhs = v[0];
    } else if (m == 2) {
        r.rhs = 2 * v[1] - v[0];
        r.extrapolation_error = std::abs(v[1] - v[0]);
    } else {
        // windows are expected to double; remove the 1/M term, then the 1/M^2 term
        const double r1 = 2 * v[m - 2] - v[m - 3], r2 = 2 * v[m - 1] - v[m - 2];
        r.rhs = (4 * r2 - r1) / 3;
        r.extrapolation_error = std::abs(r2 - r1) / 3;
    }
    r.difference = std::abs(r.lhs - r.rhs);
    r.passed = r.difference <= r.budget;
    return r;
}

}  // namespace gk
