#include "gsmote/gsmote.hpp"

#include <algorithm>
#include <iostream>

#include "gsmote/errors.hpp"

namespace gsmote {

GsmoteParams validate_params(const GsmoteParams& p, std::size_t minority_size) {
    GsmoteParams v = p;
    if (v.m == 0 || v.num == 0 || v.m_per_kernel == 0 || v.k_select == 0 || v.k_neighbors == 0)
        throw InfeasibleError("gsmote: all parameters must be positive");
    if (v.num > minority_size)
        throw InfeasibleError("gsmote: num (" + std::to_string(v.num) +
                              ") exceeds minority size (" + std::to_string(minority_size) + ")");
    if (v.k_select > v.num * v.m_per_kernel)
        throw InfeasibleError("gsmote: k_select exceeds num * m_per_kernel");
    if (v.k_neighbors >= minority_size)
        throw InfeasibleError("gsmote: k_neighbors must be smaller than the minority size");
    if (v.m > minority_size) {
        std::cerr << "warning: clamping gmm components from " << v.m << " to minority size "
                  << minority_size << "\n";
        v.m = minority_size;
    }
    return v;
}

SyntheticBatch run_gsmote(const Dataset& s_min, const GsmoteParams& raw_params,
                          std::uint64_t seed) {
    GsmoteParams params = validate_params(raw_params, s_min.size());

    // stage 1: mixture fit on the raw minority set
    Rng em_rng(substream_seed(seed, 0));
    auto [gmm, report] = fit_em(to_matrix(s_min), params.m, params.em_max_iter, params.em_tol,
                                em_rng, params.diagonal_covariance);

    // stage 2: density-weighted kernel selection
    Rng kernel_rng(substream_seed(seed, 1));
    std::vector<std::size_t> kernels = sample_kernels(gmm, s_min, params.num, kernel_rng);

    // stage 3: per-kernel hypersphere candidates, independent substream per kernel rank
    Dataset kernel_subset;
    if (params.knn_over_kernels) {
        kernel_subset.n_features = s_min.n_features;
        for (std::size_t idx : kernels) kernel_subset.instances.push_back(s_min.instances[idx]);
        if (params.k_neighbors >= kernel_subset.size())
            throw InfeasibleError("gsmote: k_neighbors must be smaller than num in kernel mode");
    }

    SyntheticBatch candidates;
    for (std::size_t rank = 0; rank < kernels.size(); ++rank) {
        std::size_t kernel_idx = kernels[rank];
        Rng rng(substream_seed(seed, 2 + rank));
        Neighborhood hood = params.knn_over_kernels
                                ? knn(kernel_subset, rank, params.k_neighbors)
                                : knn(s_min, kernel_idx, params.k_neighbors);
        std::uniform_int_distribution<std::size_t> pick_nb(0, params.k_neighbors - 1);
        for (std::size_t j = 0; j < params.m_per_kernel; ++j) {
            double radius = hood.radii[pick_nb(rng)];
            if (radius > 0.0) {
                candidates.points.push_back(sample_hypersphere(
                    s_min.instances[kernel_idx].features, radius, rng, params.volume_uniform));
            } else {
                candidates.points.push_back(s_min.instances[kernel_idx].features);
                ++candidates.degenerate_count;
            }
            candidates.kernel_indices.push_back(kernel_idx);
            candidates.radius_bounds.push_back(radius);
        }
    }

    // stage 4: top-K by mixture log density
    return top_k_by_logprob(gmm, candidates, params.k_select);
}

Dataset augment(const Dataset& s, const GsmoteParams& params, std::uint64_t seed) {
    ClassSplit split = split_by_class(s);
    SyntheticBatch batch = run_gsmote(split.minority, params, seed);

    Dataset out = s;
    for (const auto& point : batch.points)
        out.instances.push_back({point, split.minority_label, true});
    return out;
}

}  // namespace gsmote
