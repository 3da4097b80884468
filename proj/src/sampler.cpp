#include "gk/sampler.hpp"

#include "gk/errors.hpp"
#include "gk/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace gk {

namespace {

constexpr std::size_t kChunk = 1024;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One draw from the projection process spanned by the columns of v.
std::vector<int> sample_projection(Eigen::MatrixXd v, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = static_cast<int>(v.rows());
    std::vector<int> out;
    while (v.cols() > 0) {
        const int k = static_cast<int>(v.cols());
        const Eigen::VectorXd w = v.rowwise().squaredNorm();
        double u = unif(rng) * w.sum();
        int pick = n - 1;
        for (int i = 0; i < n; ++i) {
            u -= w[i];
            if (u < 0) {
                pick = i;
                break;
            }
        }
        out.push_back(pick);
        // drop the direction e_pick: eliminate with the column of largest |v(pick, j)|
        int j0 = 0;
        v.row(pick).cwiseAbs().maxCoeff(&j0);
        const Eigen::VectorXd c = v.col(j0) / v(pick, j0);
        Eigen::MatrixXd nv(n, k - 1);
        for (int j = 0, t = 0; j < k; ++j) {
            if (j == j0) continue;
            nv.col(t++) = v.col(j) - v(pick, j) * c;
        }
        // re-orthonormalize
        if (nv.cols() > 0) {
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(nv);
            v = qr.householderQ() * Eigen::MatrixXd::Identity(n, nv.cols());
        } else {
            v.resize(n, 0);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SampleBatch run(const WindowKernel& k, std::size_t count, std::uint64_t seed, bool involute) {
    require(k.underline(), "kernel_kind", "sampling needs a symmetric underline kernel");
    const Eigen::MatrixXd& m = k.values();
    require((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-10, "symmetric", "kernel must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolver", "kernel eigendecomposition failed");
    Eigen::VectorXd lam = es.eigenvalues();
    SampleBatch b;
    for (int i = 0; i < lam.size(); ++i) {
        const double c = std::clamp(lam[i], 0.0, 1.0);
        b.max_clamp = std::max(b.max_clamp, std::abs(c - lam[i]));
        lam[i] = c;
    }
    require(b.max_clamp <= 1e-4, "spectrum", "kernel eigenvalues leave [0, 1] by " + std::to_string(b.max_clamp));
    b.window = k.radius();
    b.seed = seed;
    b.involuted = involute;
    b.configs.resize(count);
    const Eigen::MatrixXd& vecs = es.eigenvectors();
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
        std::mt19937_64 rng(splitmix(seed ^ splitmix(c)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const std::size_t end = std::min(count, (c + 1) * kChunk);
        for (std::size_t s = c * kChunk; s < end; ++s) {
            std::vector<int> cols;
            for (int i = 0; i < lam.size(); ++i)
                if (unif(rng) < lam[i]) cols.push_back(i);
            Eigen::MatrixXd v(vecs.rows(), cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j) v.col(j) = vecs.col(cols[j]);
            const std::vector<int> idx = sample_projection(std::move(v), rng);
            std::vector<bool> occ(k.size(), false);
            for (int i : idx) occ[i] = true;
            std::vector<HalfInt> pts;
            for (int i = 0; i < k.size(); ++i) {
                const HalfInt x = k.point(i);
                const bool in = (involute && !x.positive()) ? !occ[i] : occ[i];
                if (in) pts.push_back(x);
            }
            b.configs[s] = FiniteConfig(std::move(pts));
        }
    });
    return b;
}

}  // namespace

SampleBatch sample_window(const WindowKernel& k, std::size_t count, std::uint64_t seed) {
    return run(k, count, seed, false);
}

SampleBatch sample_underline_then_involute(const WindowKernel& k, std::size_t count, std::uint64_t seed) {
    return run(k, count, seed, true);
}

SampleBatch::Mean SampleBatch::estimate(const std::function<double(const FiniteConfig&)>& fn) const {
    const double n = static_cast<double>(configs.size());
    require(n >= 2, "count", "need at least two samples");
    double s = 0.0, s2 = 0.0;
    for (const FiniteConfig& c : configs) {
        const double v = fn(c);
        s += v;
        s2 += v * v;
    }
    const double mean = s / n, var = std::max(0.0, (s2 - n * mean * mean) / (n - 1));
    return {mean, std::sqrt(var / n)};
}

SampleBatch::Mean SampleBatch::frequency(HalfInt x) const {
    return estimate([x](const FiniteConfig& c) { return c.contains(x) ? 1.0 : 0.0; });
}

SampleBatch::Mean SampleBatch::mean_count() const {
    return estimate([](const FiniteConfig& c) { return static_cast<double>(c.size()); });
}

double SampleBatch::balanced_fraction() const {
    if (configs.empty()) return 0.0;
    std::size_t k = 0;
    for (const FiniteConfig& c : configs) k += c.is_balanced();
    return static_cast<double>(k) / configs.size();
}

}  // namespace gk
