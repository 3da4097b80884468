#pragma once

#include "gk/kernel.hpp"
#include "gk/lattice.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gk {

struct SampleBatch {
    int window = 0;
    std::uint64_t seed = 0;
    std::string rng = "mt19937_64";
    bool involuted = false;     // configs are K-side (negative half flipped)
    double max_clamp = 0.0;     // largest eigenvalue correction into [0, 1]
    std::vector<FiniteConfig> configs;

    struct Mean {
        double value;
        double se;  // standard error
    };
    Mean estimate(const std::function<double(const FiniteConfig&)>& fn) const;
    Mean frequency(HalfInt x) const;
    Mean mean_count() const;
    double balanced_fraction() const;
};

// Exact samples of the determinantal process with the given symmetric kernel
// on its window. Eigenvalues are clamped into [0, 1]; a clamp above 1e-4 is
// rejected. Samples are split into chunks with derived seeds, so the batch
// does not depend on the thread count.
SampleBatch sample_window(const WindowKernel& k, std::size_t count, std::uint64_t seed);
// Samples the underline process, then takes the symmetric difference with the
// negative half of the window.
SampleBatch sample_underline_then_involute(const WindowKernel& k, std::size_t count, std::uint64_t seed);

}  // namespace gk
