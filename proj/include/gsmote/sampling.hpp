#pragma once

#include <cstddef>
#include <vector>

#include "gsmote/dataset.hpp"
#include "gsmote/rng.hpp"

namespace gsmote {

struct Neighborhood {
    std::size_t center_index = 0;
    std::vector<std::size_t> neighbor_indices;  // sorted by ascending distance
    std::vector<double> radii;
};

struct SyntheticBatch {
    std::vector<std::vector<double>> points;
    std::vector<std::size_t> kernel_indices;  // originating kernel per point
    std::vector<double> radius_bounds;        // chosen-neighbor radius per point
    std::vector<double> logprobs;             // filled by the GMM filter stage
    std::size_t degenerate_count = 0;         // zero-radius draws (duplicate data)

    std::size_t size() const { return points.size(); }
};

double euclidean(const std::vector<double>& a, const std::vector<double>& b);

// Exact k-NN by Euclidean distance; the query instance is excluded, ties go
// to the lower index.
Neighborhood knn(const Dataset& d, std::size_t query_index, std::size_t k);

// x_i + (x_k - x_i) * e
std::vector<double> smote_interpolate(const std::vector<double>& x_i,
                                      const std::vector<double>& x_k, double e);

SyntheticBatch smote(const Dataset& s_min, std::size_t amount, std::size_t k, Rng& rng);

// A point p with 0 < |p - x_i| < r. Radius uniform on (0,r) by default;
// volume_uniform instead draws uniformly over the ball.
std::vector<double> sample_hypersphere(const std::vector<double>& x_i, double r, Rng& rng,
                                       bool volume_uniform = false);

// SMOTE with the line segment widened to the hypersphere of radius
// |x_k - x_i| around the kernel.
SyntheticBatch rsmote(const Dataset& s_min, std::size_t amount, std::size_t k, Rng& rng,
                      bool volume_uniform = false);

SyntheticBatch random_oversample(const Dataset& s_min, std::size_t amount, Rng& rng);
Dataset random_undersample(const Dataset& s_maj, std::size_t target_size, Rng& rng);

}  // namespace gsmote
