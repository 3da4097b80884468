#include "gk/zmeasure.hpp"

#include "gk/errors.hpp"
#include "gk/parallel.hpp"

#include <cmath>
#include <sstream>

namespace gk {

Params Params::make(cplx z, cplx zp) {
    Params p{z, zp, Series::Principal};
    if (z.imag() != 0.0 || zp.imag() != 0.0) {
        require(z.imag() != 0.0 && zp == std::conj(z), "admissible_params",
                "principal series requires z non-real and z' = conj(z)");
        p.series = Series::Principal;
    } else {
        const double a = z.real(), b = zp.real();
        require(std::floor(a) != a && std::floor(b) != b, "admissible_params",
                "complementary series requires non-integer z, z'");
        require(std::floor(a) == std::floor(b), "admissible_params",
                "complementary series requires z, z' in a common interval (N, N+1)");
        p.series = Series::Complementary;
    }
    // Spot check of (z+k)(z'+k) > 0 near the origin; the sign analysis above
    // covers all k.
    for (int k = -64; k <= 64; ++k) {
        const cplx v = (z + static_cast<double>(k)) * (zp + static_cast<double>(k));
        if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-9 * std::abs(v.real()))
            throw PreconditionError("admissible_params",
                                    "(z+k)(z'+k) is not positive at k=" + std::to_string(k));
    }
    return p;
}

std::string Params::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "z=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i, z'=" << zp.real()
       << (zp.imag() < 0 ? "" : "+") << zp.imag() << "i ("
       << (series == Series::Principal ? "principal" : "complementary") << ")";
    return os.str();
}

XiParams XiParams::make(const Params& base, double xi) {
    require(xi > 0.0 && xi < 1.0, "xi_range", "xi must lie in (0, 1)");
    return {base, xi};
}

namespace {

// log of (z+c)(z'+c), which is real and positive for admissible params
double log_pair(const Params& p, double c) { return std::log(((p.z + c) * (p.zp + c)).real()); }

}  // namespace

double log_weight_partition(const Partition& lambda, const XiParams& p) {
    const Params& b = p.base;
    double s = b.zzp() * std::log1p(-p.xi) + lambda.size() * std::log(p.xi);
    const Partition conj = lambda.conjugate();
    for (int i = 0; i < lambda.length(); ++i) {
        for (int j = 0; j < lambda.row(i); ++j) {
            s += log_pair(b, j - i);
            const int hook = (lambda.row(i) - j - 1) + (conj.row(j) - i - 1) + 1;
            s -= 2.0 * std::log(static_cast<double>(hook));
        }
    }
    return s;
}

double weight_partition(const Partition& lambda, const XiParams& p) {
    return std::exp(log_weight_partition(lambda, p));
}

double log_weight_config(const FiniteConfig& x, const XiParams& p) {
    require(x.is_balanced(), "balanced", "configuration " + x.str() + " is not balanced");
    const Params& b = p.base;
    const auto pos = x.positive_part();
    auto neg = x.negative_part();
    const std::size_t d = pos.size();
    std::vector<double> P(d), Q(d);
    for (std::size_t i = 0; i < d; ++i) {
        P[i] = pos[i].value();
        Q[i] = -neg[d - 1 - i].value();  // ascending q
    }
    double s = b.zzp() * std::log1p(-p.xi) + d * std::log(b.zzp());
    for (std::size_t i = 0; i < d; ++i) {
        s += (P[i] + Q[i]) * std::log(p.xi);
        const long mp = pos[i].floor_abs(), mq = neg[d - 1 - i].floor_abs();
        for (long k = 1; k <= mp; ++k) s += log_pair(b, k) - 2.0 * std::log(static_cast<double>(k));
        for (long k = 1; k <= mq; ++k) s += log_pair(b, -k) - 2.0 * std::log(static_cast<double>(k));
        for (std::size_t j = i + 1; j < d; ++j)
            s += 2.0 * (std::log(P[j] - P[i]) + std::log(Q[j] - Q[i]));
        for (std::size_t j = 0; j < d; ++j) s -= 2.0 * std::log(P[i] + Q[j]);
    }
    return s;
}

double weight_config(const FiniteConfig& x, const XiParams& p) { return std::exp(log_weight_config(x, p)); }

double level_mass(int n, const XiParams& p) {
    const double r = p.base.zzp();
    double t = std::exp(r * std::log1p(-p.xi));
    for (int k = 0; k < n; ++k) t *= p.xi * (r + k) / (k + 1);
    return t;
}

double weighted_tail_beyond(int L, const XiParams& p, double growth) {
    const double r = p.base.zzp();
    double t = level_mass(L + 1, p), s = 0.0;
    const double lg = std::log(std::max(growth, 1.0));
    for (int n = L + 1; n < 100000; ++n) {
        const double term = t * std::exp(2.0 * std::floor(std::sqrt(static_cast<double>(n))) * lg);
        s += term;
        if (n > 2 * (L + 10) && term < 1e-18 * s) break;
        if (t == 0.0) break;
        t *= p.xi * (r + n) / (n + 1);
    }
    return s;
}

double tail_mass_beyond(int L, const XiParams& p) { return weighted_tail_beyond(L, p, 1.0); }

Enumeration enumerate_weights(const XiParams& p, int max_size) {
    require(max_size >= 0 && max_size <= 30, "max_size", "max_size must lie in [0, 30]");
    std::vector<std::vector<WeightedPartition>> levels(max_size + 1);
    parallel_for(max_size + 1, [&](std::size_t n) {
        for (auto& lam : partitions_of(static_cast<int>(n)))
            levels[n].push_back({lam, to_balanced_config(lam), weight_partition(lam, p)});
    });
    Enumeration e{p, max_size, {}, tail_mass_beyond(max_size, p)};
    for (auto& lv : levels)
        for (auto& w : lv) e.items.push_back(std::move(w));
    return e;
}

OracleValue correlation_oracle(const std::vector<HalfInt>& points, const Enumeration& e, Side side) {
    double s = 0.0;
    for (const auto& it : e.items) {
        bool all = true;
        if (side == Side::K) {
            for (auto x : points) all = all && it.config.contains(x);
        } else {
            MayaDiagram m = particle_hole_involution(it.config);
            for (auto x : points) all = all && m.contains(x);
        }
        if (all) s += it.weight;
    }
    return {s, e.tail_mass};
}

OracleValue correlation_oracle(const std::vector<HalfInt>& points, const XiParams& p, int max_size,
                               Side side) {
    return correlation_oracle(points, enumerate_weights(p, max_size), side);
}

}  // namespace gk
