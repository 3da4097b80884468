#pragma once

#include "gk/functionals.hpp"
#include "gk/lattice.hpp"
#include "gk/zmeasure.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gk {

// a xi^k Phi_f
struct RnTerm {
    double a = 1.0;
    int k = 0;
    TestFunction f;
};

// sum of a_i xi^{k_i} Phi_{f_i}
struct RnExpression {
    std::vector<RnTerm> terms;

    double evaluate(const FiniteConfig& x, double xi) const;
    // xi = 1
    PhiValue evaluate_limit(const SparseConfig& x) const;
};

// P(sigma~^{-1} X) / P(X)
double rn_exact(const FinitaryPermutation& s, const FiniteConfig& x, const XiParams& p);

// Single-term form a xi^k Phi_{f_out} of mu(sigma, X), valid for every X with
// X ∩ [-N, N] equal to the given window part; f_out vanishes on the window.
struct ClosedForm {
    double a = 1.0;
    int k = 0;
    TestFunction f_out;

    double evaluate(const FiniteConfig& x, double xi) const;
    RnTerm term() const { return {a, k, f_out}; }
};

ClosedForm rn_closed_form(int n, const FiniteConfig& x_window, int N, const Params& p);
// Composes generator closed forms by the cocycle rule; the leftmost generator
// of the word is evaluated at X, the rest at sigma~_{w1}(X).
ClosedForm rn_compose(const FinitaryPermutation& s, const FiniteConfig& x_window, int N, const Params& p);
// Full expression valid for all X: closed forms of every window pattern X',
// with 1{X ∩ W = X'} expanded into multiplicative functionals. Needs 2N <= 10.
RnExpression rn_expression(const FinitaryPermutation& s, int N, const Params& p);

PhiValue rn_limit(const RnExpression& e, const SparseConfig& x);

// F(X) depending on X ∩ [-radius, radius] only.
struct CylinderFunction {
    int radius = 0;
    std::function<double(const FiniteConfig&)> fn;
    std::string name;
    double sup = 1.0;  // sup |F|

    double operator()(const FiniteConfig& x) const;

    static CylinderFunction constant(double c);
    static CylinderFunction contains(HalfInt x);
    static CylinderFunction avoids(HalfInt x);
    static CylinderFunction count(int radius);  // number of points with |x| < radius
    static CylinderFunction phi(const TestFunction& f);  // f supported in its window
    // "const:1", "contains:1/2", "avoids:-1/2", "count:2", "phi:1/2:-0.5,-1/2:0.3"
    static CylinderFunction parse(const std::string& spec);
};

FiniteConfig restrict_to(const FiniteConfig& x, int radius);

struct TransportReport {
    double lhs = 0.0;  // <F o sigma~, P>
    double rhs = 0.0;  // <mu(sigma, .) F, P>
    double difference = 0.0;
    double budget = 0.0;
    bool passed = false;
};

TransportReport verify_transport(const FinitaryPermutation& s, const CylinderFunction& f, const Enumeration& e);
TransportReport verify_transport(const FinitaryPermutation& s, const CylinderFunction& f, const XiParams& p,
                                 int max_size);

struct LimitTransportOptions {
    std::vector<int> windows{64, 128, 256};  // truncations for the right side
    double budget = 1e-5;
};

struct LimitTransportReport {
    int pattern_radius = 0;             // W = [-r, r] holds both F and sigma
    double lhs = 0.0;                   // Janossy sums on W
    std::vector<double> rhs_by_window;  // det route at each truncation
    double rhs = 0.0;                   // extrapolated in the truncation
    double extrapolation_error = 0.0;
    double difference = 0.0;
    double budget = 0.0;
    bool passed = false;
};

// Uses the limit K kernel from the integrable form; the right side converges
// like 1/M in the truncation M and is extrapolated from the given windows.
LimitTransportReport verify_limit_transport(const FinitaryPermutation& s, const CylinderFunction& f, const Params& p,
                                            const LimitTransportOptions& opt = {});

// E[1{X ∩ W = S} Phi_f] on the truncation of k, f supported outside W.
double pattern_expectation(const WindowKernel& k, int pattern_radius, const FiniteConfig& s, const TestFunction& f);

}  // namespace gk
