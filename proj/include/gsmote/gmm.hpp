#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gsmote/dataset.hpp"
#include "gsmote/rng.hpp"
#include "gsmote/sampling.hpp"

namespace gsmote {

struct GaussianMixture {
    Eigen::VectorXd weights;                 // m, nonnegative, sums to 1
    std::vector<Eigen::VectorXd> means;      // m vectors of dim n
    std::vector<Eigen::MatrixXd> covariances;  // m symmetric PD n x n

    std::size_t components() const { return means.size(); }
    std::size_t dim() const { return means.empty() ? 0 : static_cast<std::size_t>(means[0].size()); }
};

struct EmReport {
    std::vector<double> log_likelihood_trace;
    std::size_t iterations = 0;
    bool converged = false;
};

// Precomputed Cholesky factors for repeated density evaluation.
class GmmDensity {
public:
    explicit GmmDensity(const GaussianMixture& gmm);
    double log_prob(const Eigen::VectorXd& x) const;

private:
    const GaussianMixture& gmm_;
    std::vector<Eigen::LLT<Eigen::MatrixXd>> chol_;
    std::vector<double> log_norm_;  // -0.5 (n log 2pi + log|Sigma|) + log c_k
};

Eigen::MatrixXd to_matrix(const Dataset& d);
Eigen::VectorXd to_vector(const std::vector<double>& v);

// EM for a full-covariance Gaussian mixture. Means seeded k-means++ style,
// covariances start at the global covariance, weights uniform. Covariances
// are regularized with eps*I, eps = 1e-6 * mean feature variance.
std::pair<GaussianMixture, EmReport> fit_em(const Eigen::MatrixXd& data, std::size_t m,
                                            std::size_t max_iter, double tol, Rng& rng,
                                            bool diagonal = false);

double log_prob(const GaussianMixture& gmm, const Eigen::VectorXd& x);
double log_prob(const GaussianMixture& gmm, const std::vector<double>& x);

// Density-weighted sampling of kernel indices from s_min, without replacement.
std::vector<std::size_t> sample_kernels(const GaussianMixture& gmm, const Dataset& s_min,
                                        std::size_t num, Rng& rng);

// Keeps the k candidates with the highest mixture log density, output sorted
// by descending logprob, ties to the lower candidate index.
SyntheticBatch top_k_by_logprob(const GaussianMixture& gmm, const SyntheticBatch& candidates,
                                std::size_t k);

void save_gmm(const std::string& path, const GaussianMixture& gmm);
GaussianMixture load_gmm(const std::string& path);

}  // namespace gsmote
