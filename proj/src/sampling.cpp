#include "gsmote/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gsmote/errors.hpp"

namespace gsmote {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DataError("dimension mismatch in distance");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Neighborhood knn(const Dataset& d, std::size_t query_index, std::size_t k) {
    if (query_index >= d.size()) throw DataError("knn: query index out of range");
    if (k == 0 || k >= d.size())
        throw DataError("knn: k must satisfy 1 <= k < dataset size");

    const auto& q = d.instances[query_index].features;
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(d.size() - 1);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i == query_index) continue;
        dist.emplace_back(euclidean(q, d.instances[i].features), i);
    }
    // pair ordering gives the lower index on distance ties
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    Neighborhood nb;
    nb.center_index = query_index;
    for (std::size_t i = 0; i < k; ++i) {
        nb.radii.push_back(dist[i].first);
        nb.neighbor_indices.push_back(dist[i].second);
    }
    return nb;
}

std::vector<double> smote_interpolate(const std::vector<double>& x_i,
                                      const std::vector<double>& x_k, double e) {
    if (x_i.size() != x_k.size()) throw DataError("interpolation: dimension mismatch");
    std::vector<double> out(x_i.size());
    // convex form so e = 0 and e = 1 reproduce the endpoints exactly
    for (std::size_t d = 0; d < x_i.size(); ++d) out[d] = (1.0 - e) * x_i[d] + e * x_k[d];
    return out;
}

SyntheticBatch smote(const Dataset& s_min, std::size_t amount, std::size_t k, Rng& rng) {
    if (s_min.size() <= k)
        throw DataError("smote: minority class must have more than k instances");
    SyntheticBatch batch;
    if (amount == 0) return batch;

    std::vector<Neighborhood> hoods(s_min.size());
    std::vector<bool> have(s_min.size(), false);
    std::uniform_int_distribution<std::size_t> pick_kernel(0, s_min.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_nb(0, k - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t s = 0; s < amount; ++s) {
        std::size_t i = pick_kernel(rng);
        if (!have[i]) {
            hoods[i] = knn(s_min, i, k);
            have[i] = true;
        }
        std::size_t nb = hoods[i].neighbor_indices[pick_nb(rng)];
        double e = unit(rng);
        batch.points.push_back(smote_interpolate(s_min.instances[i].features,
                                                 s_min.instances[nb].features, e));
        batch.kernel_indices.push_back(i);
    }
    return batch;
}

std::vector<double> sample_hypersphere(const std::vector<double>& x_i, double r, Rng& rng,
                                       bool volume_uniform) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw DataError("hypersphere radius must be positive and finite");
    const std::size_t n = x_i.size();
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> dir(n);
    double norm = 0;
    do {
        norm = 0;
        for (auto& v : dir) {
            v = gauss(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
    } while (norm == 0.0);

    double u = unit(rng);
    while (u == 0.0) u = unit(rng);  // keep the distance strictly positive
    double radius = volume_uniform ? r * std::pow(u, 1.0 / static_cast<double>(n)) : r * u;

    std::vector<double> p(n);
    for (std::size_t d = 0; d < n; ++d) p[d] = x_i[d] + dir[d] / norm * radius;
    return p;
}

SyntheticBatch rsmote(const Dataset& s_min, std::size_t amount, std::size_t k, Rng& rng,
                      bool volume_uniform) {
    if (s_min.size() <= k)
        throw DataError("rsmote: minority class must have more than k instances");
    SyntheticBatch batch;
    if (amount == 0) return batch;

    std::vector<Neighborhood> hoods(s_min.size());
    std::vector<bool> have(s_min.size(), false);
    std::uniform_int_distribution<std::size_t> pick_kernel(0, s_min.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_nb(0, k - 1);

    for (std::size_t s = 0; s < amount; ++s) {
        std::size_t i = pick_kernel(rng);
        if (!have[i]) {
            hoods[i] = knn(s_min, i, k);
            have[i] = true;
        }
        std::size_t which = pick_nb(rng);
        double radius = hoods[i].radii[which];
        if (radius > 0.0) {
            batch.points.push_back(
                sample_hypersphere(s_min.instances[i].features, radius, rng, volume_uniform));
        } else {
            // duplicate minority points: the sphere collapses to the kernel
            batch.points.push_back(s_min.instances[i].features);
            ++batch.degenerate_count;
        }
        batch.kernel_indices.push_back(i);
        batch.radius_bounds.push_back(radius);
    }
    return batch;
}

SyntheticBatch random_oversample(const Dataset& s_min, std::size_t amount, Rng& rng) {
    if (s_min.size() == 0) throw DataError("oversample: empty input");
    SyntheticBatch batch;
    std::uniform_int_distribution<std::size_t> pick(0, s_min.size() - 1);
    for (std::size_t s = 0; s < amount; ++s) {
        std::size_t i = pick(rng);
        batch.points.push_back(s_min.instances[i].features);
        batch.kernel_indices.push_back(i);
    }
    return batch;
}

Dataset random_undersample(const Dataset& s_maj, std::size_t target_size, Rng& rng) {
    if (target_size > s_maj.size())
        throw DataError("undersample: target size exceeds input size");
    std::vector<std::size_t> idx(s_maj.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(target_size);
    std::sort(idx.begin(), idx.end());

    Dataset out;
    out.n_features = s_maj.n_features;
    out.feature_names = s_maj.feature_names;
    out.label_names = s_maj.label_names;
    for (std::size_t i : idx) out.instances.push_back(s_maj.instances[i]);
    return out;
}

}  // namespace gsmote
