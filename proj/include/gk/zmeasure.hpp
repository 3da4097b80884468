#pragma once

#include "gk/lattice.hpp"
#include "gk/special.hpp"

#include <string>
#include <vector>

namespace gk {

enum class Series { Principal, Complementary };

struct Params {
    cplx z;
    cplx zp;
    Series series = Series::Principal;

    // Validates admissibility and classifies the series.
    static Params make(cplx z, cplx zp);
    Params negated() const { return make(-z, -zp); }
    double zzp() const { return (z * zp).real(); }
    std::string str() const;
};

struct XiParams {
    Params base;
    double xi = 0.5;

    static XiParams make(const Params& base, double xi);
};

double log_weight_partition(const Partition& lambda, const XiParams& p);
double weight_partition(const Partition& lambda, const XiParams& p);
double log_weight_config(const FiniteConfig& x, const XiParams& p);
double weight_config(const FiniteConfig& x, const XiParams& p);

// Total mass of partitions of size n: (1-xi)^{zz'} xi^n (zz')_n / n!.
double level_mass(int n, const XiParams& p);
// Mass of partitions with |lambda| > L, summed forward (no cancellation).
double tail_mass_beyond(int L, const XiParams& p);
// sum_{n > L} level_mass(n) * growth^{2 floor(sqrt n)}; bounds the contribution
// of |Phi_f| <= growth^{2d} beyond the enumeration (d <= sqrt n diagonal boxes).
double weighted_tail_beyond(int L, const XiParams& p, double growth);

struct WeightedPartition {
    Partition lambda;
    FiniteConfig config;  // X(lambda)
    double weight;
};

struct Enumeration {
    XiParams params;
    int max_size = 0;
    std::vector<WeightedPartition> items;
    double tail_mass = 0.0;  // 1 - sum of weights, computed from the level masses
};

Enumeration enumerate_weights(const XiParams& p, int max_size);

enum class Side { K, Underline };

struct OracleValue {
    double value;
    double tail;
};

// rho(points) for P (Side::K, membership in X(lambda)) or for the underline
// measure (membership in the Maya diagram).
OracleValue correlation_oracle(const std::vector<HalfInt>& points, const Enumeration& e, Side side);
OracleValue correlation_oracle(const std::vector<HalfInt>& points, const XiParams& p, int max_size,
                               Side side);

}  // namespace gk
