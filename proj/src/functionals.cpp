#include "gk/functionals.hpp"

#include "gk/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace gk {

namespace {

// scan length used to bound tail quantities before switching to the
// asymptotic slope
constexpr int kTailScan = 20000;

double log_one_plus_tail(const std::vector<TailFactor>& fs, double ax) {
    double s = 0.0;
    for (const TailFactor& t : fs) s += t.e * std::log1p(t.a / (ax + t.b));
    return s;
}

double slope(const std::vector<TailFactor>& fs) {
    double s = 0.0;
    for (const TailFactor& t : fs) s += t.e * t.a;
    return std::abs(s);
}

}  // namespace

TestFunction TestFunction::on_window(int N, std::vector<double> values) {
    require(N >= 0, "window", "window radius must be >= 0");
    require(static_cast<int>(values.size()) == 2 * N, "window", "need 2N window values");
    TestFunction f;
    f.N_ = N;
    f.values_ = std::move(values);
    return f;
}

TestFunction TestFunction::from_points(const std::map<HalfInt, double>& values) {
    int N = 0;
    for (const auto& [x, v] : values) N = std::max<int>(N, static_cast<int>(x.floor_abs()) + 1);
    std::vector<double> w(2 * N, 0.0);
    for (const auto& [x, v] : values) w[(x.twice() + 2 * N - 1) / 2] = v;
    return on_window(N, std::move(w));
}

TestFunction TestFunction::inverse_decay(double c, int N) {
    TestFunction f = on_window(N, std::vector<double>(2 * N, 0.0));
    f.pos_ = {{c, 0.0, 1.0}};
    f.neg_ = {{c, 0.0, 1.0}};
    return f;
}

TestFunction TestFunction::parse(const std::string& spec) {
    std::map<HalfInt, double> m;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto colon = item.find(':');
        require(colon != std::string::npos, "test_function", "expected point:value, got '" + item + "'");
        const HalfInt x = HalfInt::parse(item.substr(0, colon));
        double v = 0.0;
        try {
            v = std::stod(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw PreconditionError("test_function", "bad value in '" + item + "'");
        }
        require(!m.count(x), "test_function", "duplicate point " + x.str());
        m[x] = v;
    }
    return from_points(m);
}

TestFunction TestFunction::with_tails(std::vector<TailFactor> pos, std::vector<TailFactor> neg) const {
    auto check = [&](const std::vector<TailFactor>& fs) {
        for (const TailFactor& t : fs) {
            const double d = N_ + 0.5 + t.b;
            require(d > 0 && d + t.a > 0, "tail", "tail factor 1 + a/(|x|+b) must stay positive beyond the window");
        }
    };
    check(pos);
    check(neg);
    TestFunction f = *this;
    f.pos_ = std::move(pos);
    f.neg_ = std::move(neg);
    return f;
}

double TestFunction::operator()(HalfInt x) const {
    const long ax = x.floor_abs();
    if (ax < N_) return values_[(x.twice() + 2 * N_ - 1) / 2];
    const auto& fs = x.positive() ? pos_ : neg_;
    if (fs.empty()) return 0.0;
    return std::expm1(log_one_plus_tail(fs, std::abs(x.value())));
}

TestFunction TestFunction::widened(int M) const {
    if (M <= N_) return *this;
    std::vector<double> w(2 * M);
    for (int i = 0; i < 2 * M; ++i) w[i] = (*this)(HalfInt::from_twice(2 * i - 2 * M + 1));
    TestFunction f = on_window(M, std::move(w));
    f.pos_ = pos_;
    f.neg_ = neg_;
    return f;
}

TestFunction TestFunction::product(const TestFunction& g) const {
    const int M = std::max(N_, g.N_);
    std::vector<double> w(2 * M);
    for (int i = 0; i < 2 * M; ++i) {
        const HalfInt x = HalfInt::from_twice(2 * i - 2 * M + 1);
        const double a = (*this)(x), b = g(x);
        w[i] = a + b + a * b;
    }
    TestFunction f = on_window(M, std::move(w));
    f.pos_ = pos_;
    f.pos_.insert(f.pos_.end(), g.pos_.begin(), g.pos_.end());
    f.neg_ = neg_;
    f.neg_.insert(f.neg_.end(), g.neg_.begin(), g.neg_.end());
    return f;
}

TestFunction TestFunction::reflected() const {
    TestFunction f = *this;
    std::reverse(f.values_.begin(), f.values_.end());
    std::swap(f.pos_, f.neg_);
    return f;
}

double TestFunction::decay_constant() const {
    double c = std::max(slope(pos_), slope(neg_));
    for (const auto* fs : {&pos_, &neg_}) {
        if (fs->empty()) continue;
        for (int k = N_; k < N_ + kTailScan; ++k) {
            const double ax = k + 0.5;
            c = std::max(c, std::abs(std::expm1(log_one_plus_tail(*fs, ax))) * ax);
        }
    }
    return c;
}

double TestFunction::log_decay_constant() const {
    double c = std::max(slope(pos_), slope(neg_));
    for (const auto* fs : {&pos_, &neg_}) {
        if (fs->empty()) continue;
        for (int k = N_; k < N_ + kTailScan; ++k) {
            const double ax = k + 0.5;
            c = std::max(c, std::abs(log_one_plus_tail(*fs, ax)) * ax);
        }
    }
    return c;
}

double TestFunction::sup_one_plus() const {
    double s = 1.0;  // f vanishes at infinity
    for (double v : values_) s = std::max(s, std::abs(1.0 + v));
    for (const auto* fs : {&pos_, &neg_}) {
        if (fs->empty()) continue;
        for (int k = N_; k < N_ + kTailScan; ++k) s = std::max(s, std::exp(log_one_plus_tail(*fs, k + 0.5)));
    }
    return s;
}

std::string TestFunction::str() const {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (int i = 0; i < 2 * N_; ++i) {
        if (values_[i] == 0.0) continue;
        if (!first) os << ',';
        first = false;
        os << HalfInt::from_twice(2 * i - 2 * N_ + 1).str() << ':' << values_[i];
    }
    auto tails = [&](const char* side, const std::vector<TailFactor>& fs) {
        for (const TailFactor& t : fs) os << (first ? "" : ",") << side << "(1+" << t.a << "/(|x|+" << t.b << "))^" << t.e, first = false;
    };
    tails("+", pos_);
    tails("-", neg_);
    return os.str();
}

double SparseConfig::listed_inverse_sum() const {
    double s = 0.0;
    for (HalfInt x : points) s += 1.0 / std::abs(x.value());
    return s;
}

double phi_eval(const TestFunction& f, const FiniteConfig& x) {
    double v = 1.0;
    for (HalfInt p : x.points()) v *= 1.0 + f(p);
    return v;
}

PhiValue phi_eval(const TestFunction& f, const SparseConfig& x) {
    double v = 1.0, abs_sum = 0.0;
    for (HalfInt p : x.points) {
        const double fv = f(p);
        abs_sum += std::abs(fv);
        v *= 1.0 + fv;
    }
    require(std::isfinite(abs_sum) && std::isfinite(v), "divergence", "sum of |f| over the listed points diverges");
    require(x.unlisted_inverse_sum >= 0 && std::isfinite(x.unlisted_inverse_sum), "divergence",
            "unlisted points need a finite bound on sum 1/|x|");
    if (x.unlisted_inverse_sum == 0.0 || !f.has_tail()) return {v, 0.0};
    // unlisted points lie beyond the window, where |log(1+f)| <= c/|x|
    const double c = f.log_decay_constant();
    require(std::isfinite(c), "divergence", "tail of f is not O(1/|x|)");
    return {v, std::abs(v) * std::expm1(c * x.unlisted_inverse_sum)};
}

Estimate expectation_sum(const TestFunction& f, const Enumeration& e) {
    double s = 0.0;
    for (const WeightedPartition& w : e.items) s += w.weight * phi_eval(f, w.config);
    return {s, weighted_tail_beyond(e.max_size, e.params, f.sup_one_plus())};
}

Estimate expectation_sum(const TestFunction& f, const XiParams& p, int max_size) {
    return expectation_sum(f, enumerate_weights(p, max_size));
}

double det_on_window(const TestFunction& f, const WindowKernel& k, int M, double* rcond) {
    require(!k.underline(), "kernel_kind", "Fredholm determinants need a K-kind kernel");
    if (M == 0) return 1.0;
    const WindowKernel c = k.central(M);
    const int n = c.size();
    Eigen::VectorXd h(n), g(n);
    for (int i = 0; i < n; ++i) {
        const double ax = std::abs(c.point(i).value());
        h[i] = 1.0 / std::sqrt(ax);
        g[i] = f(c.point(i)) * ax;
    }
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(n, n) + g.asDiagonal() * (h.asDiagonal() * c.values() * h.asDiagonal());
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    if (rcond) *rcond = lu.rcond();
    return lu.determinant();
}

namespace {

DetResult nested(const TestFunction& f, const std::function<double(int, double*)>& det_at, int start, int max_window,
                 double tol) {
    DetResult r;
    if (!f.has_tail()) {
        for (int i = max_window; i < f.radius(); ++i)
            require(f(HalfInt::above(i)) == 0.0 && f(-HalfInt::above(i)) == 0.0, "window",
                    "support of f exceeds the kernel window");
        r.window = std::min(f.radius(), max_window);
        r.value = det_at(r.window, &r.rcond);
        return r;
    }
    int M = std::max({start, f.radius(), 4});
    require(M <= max_window, "window", "kernel window smaller than the support window of f");
    double prev = det_at(M, &r.rcond);
    int small = 0;
    r.value = prev;
    r.window = M;
    while (2 * M <= max_window) {
        M *= 2;
        const double cur = det_at(M, &r.rcond);
        r.last_change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        r.value = cur;
        r.window = M;
        small = r.last_change < tol ? small + 1 : 0;
        if (small >= 2) return r;
        prev = cur;
    }
    r.stabilized = false;
    char msg[128];
    std::snprintf(msg, sizeof msg, "Fredholm determinant did not stabilize up to window %d (last change %.3e)",
                  r.window, r.last_change);
    throw ConvergenceError("stabilization", msg);
}

}  // namespace

DetResult expectation_det(const TestFunction& f, const WindowKernel& k, double tol) {
    require(!k.underline(), "kernel_kind", "Fredholm determinants need a K-kind kernel");
    return nested(f, [&](int M, double* rc) { return det_on_window(f, k, M, rc); }, 4, k.radius(), tol);
}

DetResult expectation_det(const TestFunction& f, const std::function<WindowKernel(int)>& kernel_at, int start,
                          int max_window, double tol) {
    return nested(f, [&](int M, double* rc) { return det_on_window(f, kernel_at(M), M, rc); }, start, max_window,
                  tol);
}

RegularizedDet regularized_det(const Eigen::MatrixXd& a, int negatives) {
    require(a.rows() == a.cols(), "shape", "operator must be square");
    require(negatives >= 0 && negatives <= a.rows(), "shape", "bad block split");
    const int n = static_cast<int>(a.rows()), m = negatives;
    const Eigen::MatrixXd one_plus = Eigen::MatrixXd::Identity(n, n) + a;
    const Eigen::MatrixXd em = (-a).exp();
    const double tr = a.block(0, 0, m, m).trace() + a.block(m, m, n - m, n - m).trace();
    RegularizedDet r;
    r.regularized = (one_plus * em).determinant() * std::exp(tr);
    r.ordinary = one_plus.determinant();
    require(std::isfinite(r.regularized), "overflow", "regularized determinant overflowed");
    return r;
}

double janossy(const Eigen::MatrixXd& k, const std::vector<int>& subset) {
    const int n = static_cast<int>(k.rows());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - k;
    for (int i : subset) m.row(i) = k.row(i);
    return m.partialPivLu().determinant();
}

double janossy(const WindowKernel& k, const FiniteConfig& s) {
    std::vector<int> idx;
    for (HalfInt x : s.points()) {
        require(k.contains(x), "window", "point " + x.str() + " outside the kernel window");
        idx.push_back(k.index(x));
    }
    return janossy(k.values(), idx);
}

SparsenessReport sparseness_certificate(const std::vector<double>& density, double tol) {
    require(density.size() % 2 == 0, "window", "density must cover a symmetric window");
    const int N = static_cast<int>(density.size() / 2);
    SparsenessReport r;
    auto partial = [&](int R) {
        double s = 0.0;
        for (int k = 0; k < R; ++k) s += (density[N + k] + density[N - 1 - k]) / (k + 0.5);
        return s;
    };
    for (int R = 4; R <= N; R *= 2) {
        r.radii.push_back(R);
        r.partial_sums.push_back(partial(R));
        if (r.partial_sums.size() > 1) r.increments.push_back(r.partial_sums.back() - r.partial_sums[r.partial_sums.size() - 2]);
    }
    const std::size_t m = r.increments.size();
    if (m < 3) return r;
    const double q1 = r.increments[m - 1] / r.increments[m - 2], q2 = r.increments[m - 2] / r.increments[m - 3];
    const double q = std::max(q1, q2);
    if (!(q >= 0 && q <= 0.75)) return r;
    r.remainder_estimate = r.increments[m - 1] * q / (1.0 - q);
    r.passed = r.remainder_estimate < tol;
    return r;
}

}  // namespace gk
