#pragma once

#include <cstdint>
#include <optional>

#include "gsmote/dataset.hpp"
#include "gsmote/gmm.hpp"
#include "gsmote/sampling.hpp"

namespace gsmote {

struct GsmoteParams {
    std::size_t m = 2;             // mixture components
    std::size_t num = 10;          // sampling kernels
    std::size_t m_per_kernel = 5;  // candidates per kernel
    std::size_t k_select = 50;     // synthetics kept after filtering
    std::size_t k_neighbors = 5;   // neighborhood size for radius bounds

    std::size_t em_max_iter = 200;
    double em_tol = 1e-6;
    bool diagonal_covariance = false;
    bool volume_uniform = false;
    // literal pseudocode mode: neighbors searched among the selected kernels
    bool knn_over_kernels = false;
};

// Validates params against the minority set; m is clamped (with a note in
// the returned copy) rather than rejected so a tuner can propose freely.
GsmoteParams validate_params(const GsmoteParams& p, std::size_t minority_size);

// Full pipeline: fit GMM on s_min, density-sample num kernels, generate
// m_per_kernel hypersphere candidates per kernel, keep top k_select by
// mixture log density. Deterministic per (s_min, params, seed).
SyntheticBatch run_gsmote(const Dataset& s_min, const GsmoteParams& params, std::uint64_t seed);

// S union S_syn; synthetics labeled minority and flagged.
Dataset augment(const Dataset& s, const GsmoteParams& params, std::uint64_t seed);

}  // namespace gsmote
