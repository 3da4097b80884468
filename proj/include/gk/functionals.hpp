#pragma once

#include "gk/kernel.hpp"
#include "gk/lattice.hpp"
#include "gk/zmeasure.hpp"

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace gk {

// One factor (1 + a/(|x| + b))^e of 1 + f(x) beyond the window.
struct TailFactor {
    double a = 0.0;
    double b = 0.0;
    double e = 1.0;
};

// f on Z': explicit values on Z' ∩ [-N, N], and beyond the window
// 1 + f(x) = prod of tail factors for the side of x (f = 0 when there are none).
class TestFunction {
public:
    TestFunction() = default;  // f = 0

    // values[i] is f at the i-th window point, ascending (2N entries).
    static TestFunction on_window(int N, std::vector<double> values);
    static TestFunction from_points(const std::map<HalfInt, double>& values);
    // f(x) = c/|x| for |x| > N, zero inside unless set otherwise.
    static TestFunction inverse_decay(double c, int N = 0);
    // "1/2:-1,3/2:0.5" (point:value pairs)
    static TestFunction parse(const std::string& spec);

    TestFunction with_tails(std::vector<TailFactor> pos, std::vector<TailFactor> neg) const;
    // Same function on a larger window (tail values filled in explicitly).
    TestFunction widened(int M) const;
    // The function f + g + f g, i.e. Phi_f Phi_g.
    TestFunction product(const TestFunction& g) const;
    TestFunction reflected() const;  // x -> -x

    int radius() const { return N_; }
    bool has_tail() const { return !pos_.empty() || !neg_.empty(); }
    const std::vector<TailFactor>& tail_pos() const { return pos_; }
    const std::vector<TailFactor>& tail_neg() const { return neg_; }
    double operator()(HalfInt x) const;
    // c with |f(x)| <= c/|x| for |x| > N (0 without tails).
    double decay_constant() const;
    // c with |log(1 + f(x))| <= c/|x| for |x| > N.
    double log_decay_constant() const;
    // sup |1 + f| over Z'.
    double sup_one_plus() const;
    std::string str() const;

private:
    int N_ = 0;
    std::vector<double> values_;
    std::vector<TailFactor> pos_, neg_;
};

// A configuration given by explicitly listed points plus a certified bound on
// sum 1/|x| over the points that are not listed.
struct SparseConfig {
    std::vector<HalfInt> points;
    double unlisted_inverse_sum = 0.0;

    static SparseConfig from_finite(const FiniteConfig& x) { return {x.points(), 0.0}; }
    double listed_inverse_sum() const;
};

struct PhiValue {
    double value;
    double error;  // absolute bound from the unlisted part
};

double phi_eval(const TestFunction& f, const FiniteConfig& x);
// Throws PreconditionError("divergence") if the listed partial sum of |f| is
// not finite or the tail bound cannot be certified.
PhiValue phi_eval(const TestFunction& f, const SparseConfig& x);

struct Estimate {
    double value;
    double error;
};

// sum over |lambda| <= max_size of M(lambda) Phi_f(X(lambda)), with the tail bound
Estimate expectation_sum(const TestFunction& f, const Enumeration& e);
Estimate expectation_sum(const TestFunction& f, const XiParams& p, int max_size);

struct DetResult {
    double value = 1.0;
    int window = 0;          // radius of the last truncation used
    double last_change = 0;  // relative change across the last doubling
    bool stabilized = true;
    double rcond = 1.0;      // reciprocal condition estimate of the last LU
};

// det(1 + A_g A_h K A_h) restricted to window M, f = g h^2, h = |x|^{-1/2}.
double det_on_window(const TestFunction& f, const WindowKernel& k, int M, double* rcond = nullptr);
// Finite support inside the kernel window: one determinant. With tails:
// nested windows M, 2M, ... up to the kernel window until two consecutive
// relative changes are below tol; throws ConvergenceError otherwise.
DetResult expectation_det(const TestFunction& f, const WindowKernel& k, double tol = 1e-8);
DetResult expectation_det(const TestFunction& f, const std::function<WindowKernel(int)>& kernel_at, int start,
                          int max_window, double tol = 1e-8);

struct RegularizedDet {
    double regularized;  // det((1+A) e^{-A}) e^{tr A++ + tr A--}
    double ordinary;     // det(1+A)
};

// A is indexed by the window (negatives first); `negatives` is the size of the
// minus part.
RegularizedDet regularized_det(const Eigen::MatrixXd& a, int negatives);

// P(X ∩ W = S) for the window W of k (rows of S keep K, others use 1 - K).
double janossy(const Eigen::MatrixXd& k, const std::vector<int>& subset);
double janossy(const WindowKernel& k, const FiniteConfig& s);

struct SparsenessReport {
    std::vector<int> radii;
    std::vector<double> partial_sums;  // sum_{|x| < radius} rho1(x)/|x|
    std::vector<double> increments;
    double remainder_estimate = 0.0;
    bool passed = false;
};

// density[i] is rho1 at the i-th point of Z' ∩ [-N, N], ascending.
SparsenessReport sparseness_certificate(const std::vector<double>& density, double tol = 1e-2);

}  // namespace gk
