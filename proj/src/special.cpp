#include "gk/special.hpp"

#include "gk/errors.hpp"

#include <cmath>
#include <numbers>

namespace gk {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_20
constexpr double kBernoulli[] = {1.0 / 6,        -1.0 / 30,     1.0 / 42,         -1.0 / 30,
                                 5.0 / 66,       -691.0 / 2730, 7.0 / 6,          -3617.0 / 510,
                                 43867.0 / 798,  -174611.0 / 330};

void check_pole(cplx w) {
    if (w.imag() == 0.0 && w.real() <= 0.0 && std::floor(w.real()) == w.real())
        throw PreconditionError("pole", "Gamma-function pole at " + std::to_string(w.real()));
}

cplx stirling_log_gamma(cplx w) {
    cplx inv = 1.0 / w, inv2 = inv * inv, term = inv, s = 0.0;
    for (int n = 1; n <= 10; ++n) {
        s += kBernoulli[n - 1] / (2.0 * n * (2.0 * n - 1)) * term;
        term *= inv2;
    }
    return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * kPi) + s;
}

cplx asymptotic_digamma(cplx w) {
    cplx inv2 = 1.0 / (w * w), term = inv2, s = 0.0;
    for (int n = 1; n <= 10; ++n) {
        s += kBernoulli[n - 1] / (2.0 * n) * term;
        term *= inv2;
    }
    return std::log(w) - 0.5 / w - s;
}

cplx asymptotic_trigamma(cplx w) {
    cplx inv = 1.0 / w, inv2 = inv * inv, term = inv2 * inv, s = 0.0;
    for (int n = 1; n <= 10; ++n) {
        s += kBernoulli[n - 1] * term;
        term *= inv2;
    }
    return inv + 0.5 * inv2 + s;
}

// pi w reduced by an integer shift; sin/cos/tan are periodic up to sign
cplx reduced(cplx w, double& parity) {
    double n = std::round(w.real());
    parity = std::fmod(std::fabs(n), 2.0) == 0.0 ? 1.0 : -1.0;
    return kPi * cplx(w.real() - n, w.imag());
}

}  // namespace

cplx log_gamma(cplx w) {
    check_pole(w);
    // Shifting with principal logs keeps all cuts on the negative axis, which
    // is exactly the principal branch.
    cplx shift = 0.0;
    while (w.real() < 15.0) {
        shift += std::log(w);
        w += 1.0;
    }
    return stirling_log_gamma(w) - shift;
}

cplx digamma(cplx w) {
    check_pole(w);
    if (w.real() < 0.5) {
        double parity;
        cplx t = reduced(w, parity);
        return digamma(1.0 - w) - kPi / std::tan(t);
    }
    cplx shift = 0.0;
    while (w.real() < 10.0) {
        shift += 1.0 / w;
        w += 1.0;
    }
    return asymptotic_digamma(w) - shift;
}

cplx trigamma(cplx w) {
    check_pole(w);
    if (w.real() < 0.5) {
        double parity;
        cplx s = std::sin(reduced(w, parity));
        return kPi * kPi / (s * s) - trigamma(1.0 - w);
    }
    cplx shift = 0.0;
    while (w.real() < 10.0) {
        shift += 1.0 / (w * w);
        w += 1.0;
    }
    return asymptotic_trigamma(w) + shift;
}

cplx pochhammer(cplx x, int k) {
    require(k >= 0, "pochhammer_order", "Pochhammer order must be nonnegative");
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= x + static_cast<double>(i);
    return r;
}

cplx pochhammer_lambda(cplx x, const Partition& lambda) {
    cplx r = 1.0;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda.row(i); ++j) r *= x + static_cast<double>(j - i);
    return r;
}

}  // namespace gk
