#include "gsmote/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include "gsmote/errors.hpp"

namespace gsmote {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double chol_log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

// log N(x; mu, Sigma) given the Cholesky factor of Sigma
double log_gauss(const Eigen::VectorXd& x, const Eigen::VectorXd& mu,
                 const Eigen::LLT<Eigen::MatrixXd>& llt, double log_det) {
    Eigen::VectorXd z = llt.matrixL().solve(x - mu);
    return -0.5 * (static_cast<double>(x.size()) * kLog2Pi + log_det + z.squaredNorm());
}

double log_sum_exp(const Eigen::VectorXd& v) {
    double mx = v.maxCoeff();
    if (!std::isfinite(mx)) return mx;
    return mx + std::log((v.array() - mx).exp().sum());
}

}  // namespace

Eigen::MatrixXd to_matrix(const Dataset& d) {
    Eigen::MatrixXd X(d.size(), d.n_features);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.n_features; ++j)
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                d.instances[i].features[j];
    return X;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

GmmDensity::GmmDensity(const GaussianMixture& gmm) : gmm_(gmm) {
    for (std::size_t k = 0; k < gmm.components(); ++k) {
        chol_.emplace_back(gmm.covariances[k]);
        if (chol_.back().info() != Eigen::Success)
            throw DataError("gmm density: covariance not positive definite");
        double ld = chol_log_det(chol_.back());
        log_norm_.push_back(std::log(std::max(gmm.weights[static_cast<Eigen::Index>(k)],
                                              std::numeric_limits<double>::min())) -
                            0.5 * (static_cast<double>(gmm.dim()) * kLog2Pi + ld));
    }
}

double GmmDensity::log_prob(const Eigen::VectorXd& x) const {
    if (static_cast<std::size_t>(x.size()) != gmm_.dim())
        throw DataError("gmm log_prob: dimension mismatch");
    Eigen::VectorXd terms(static_cast<Eigen::Index>(gmm_.components()));
    for (std::size_t k = 0; k < gmm_.components(); ++k) {
        Eigen::VectorXd z = chol_[k].matrixL().solve(x - gmm_.means[k]);
        terms[static_cast<Eigen::Index>(k)] = log_norm_[k] - 0.5 * z.squaredNorm();
    }
    return log_sum_exp(terms);
}

double log_prob(const GaussianMixture& gmm, const Eigen::VectorXd& x) {
    return GmmDensity(gmm).log_prob(x);
}

double log_prob(const GaussianMixture& gmm, const std::vector<double>& x) {
    return log_prob(gmm, to_vector(x));
}

std::pair<GaussianMixture, EmReport> fit_em(const Eigen::MatrixXd& data, std::size_t m,
                                            std::size_t max_iter, double tol, Rng& rng,
                                            bool diagonal) {
    const auto n_rows = static_cast<std::size_t>(data.rows());
    const auto n = data.cols();
    if (m == 0) throw DataError("fit_em: need at least one component");
    if (m > n_rows) throw DataError("fit_em: more components than data points");
    if (!data.allFinite()) throw DataError("fit_em: non-finite features");

    Eigen::VectorXd mean = data.colwise().mean();
    Eigen::MatrixXd centered = data.rowwise() - mean.transpose();
    Eigen::MatrixXd global_cov =
        centered.transpose() * centered / std::max<double>(1.0, static_cast<double>(n_rows - 1));
    double eps = 1e-6 * std::max(global_cov.diagonal().mean(), 1e-12);
    Eigen::MatrixXd reg = eps * Eigen::MatrixXd::Identity(n, n);

    GaussianMixture gmm;
    gmm.weights = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m),
                                            1.0 / static_cast<double>(m));

    // k-means++ style seeding of means from data rows
    std::uniform_int_distribution<std::size_t> pick(0, n_rows - 1);
    std::vector<std::size_t> seeds{pick(rng)};
    std::vector<double> d2(n_rows, 0.0);
    while (seeds.size() < m) {
        double total = 0;
        for (std::size_t i = 0; i < n_rows; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t s : seeds)
                best = std::min(best, (data.row(static_cast<Eigen::Index>(i)) -
                                       data.row(static_cast<Eigen::Index>(s)))
                                          .squaredNorm());
            d2[i] = best;
            total += best;
        }
        std::size_t next;
        if (total <= 0) {
            next = pick(rng);  // all duplicates
        } else {
            std::uniform_real_distribution<double> unit(0.0, total);
            double u = unit(rng);
            next = n_rows - 1;
            double acc = 0;
            for (std::size_t i = 0; i < n_rows; ++i) {
                acc += d2[i];
                if (u <= acc) {
                    next = i;
                    break;
                }
            }
        }
        seeds.push_back(next);
    }
    for (std::size_t s : seeds) {
        gmm.means.push_back(data.row(static_cast<Eigen::Index>(s)).transpose());
        Eigen::MatrixXd cov = global_cov + reg;
        if (diagonal) cov = cov.diagonal().asDiagonal();
        gmm.covariances.push_back(cov);
    }

    EmReport report;
    Eigen::MatrixXd log_resp(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(m));
    double prev_ll = -std::numeric_limits<double>::infinity();

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        // E step
        double ll = 0;
        {
            std::vector<Eigen::LLT<Eigen::MatrixXd>> chol;
            std::vector<double> log_norm;
            for (std::size_t k = 0; k < m; ++k) {
                chol.emplace_back(gmm.covariances[k]);
                log_norm.push_back(
                    std::log(std::max(gmm.weights[static_cast<Eigen::Index>(k)],
                                      std::numeric_limits<double>::min())) -
                    0.5 * (static_cast<double>(n) * kLog2Pi + chol_log_det(chol.back())));
            }
            for (std::size_t i = 0; i < n_rows; ++i) {
                Eigen::VectorXd x = data.row(static_cast<Eigen::Index>(i)).transpose();
                for (std::size_t k = 0; k < m; ++k) {
                    Eigen::VectorXd z = chol[k].matrixL().solve(x - gmm.means[k]);
                    log_resp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                        log_norm[k] - 0.5 * z.squaredNorm();
                }
                double lse = log_sum_exp(log_resp.row(static_cast<Eigen::Index>(i)).transpose());
                ll += lse;
                log_resp.row(static_cast<Eigen::Index>(i)).array() -= lse;
            }
        }
        // test convergence before recording so the trace never shows the
        // sub-tol wobble of the final evaluation
        if (iter > 0 && ll - prev_ll < tol) {
            report.converged = true;
            break;
        }
        report.log_likelihood_trace.push_back(ll);
        ++report.iterations;
        prev_ll = ll;

        // M step
        Eigen::MatrixXd resp = log_resp.array().exp();
        Eigen::VectorXd nk = resp.colwise().sum();
        for (std::size_t k = 0; k < m; ++k) {
            auto kk = static_cast<Eigen::Index>(k);
            double weight_sum = std::max(nk[kk], 1e-300);
            gmm.weights[kk] = nk[kk] / static_cast<double>(n_rows);
            Eigen::VectorXd mu = (resp.col(kk).transpose() * data).transpose() / weight_sum;
            Eigen::MatrixXd c = data.rowwise() - mu.transpose();
            Eigen::MatrixXd cov =
                (c.transpose() * (resp.col(kk).asDiagonal() * c)) / weight_sum + reg;
            if (diagonal) cov = cov.diagonal().asDiagonal();
            gmm.means[k] = mu;
            gmm.covariances[k] = cov;
        }
        double wsum = gmm.weights.sum();
        gmm.weights /= wsum;
    }
    return {std::move(gmm), std::move(report)};
}

std::vector<std::size_t> sample_kernels(const GaussianMixture& gmm, const Dataset& s_min,
                                        std::size_t num, Rng& rng) {
    if (num > s_min.size())
        throw DataError("sample_kernels: requested more kernels than minority instances");
    GmmDensity density(gmm);

    std::vector<double> lp(s_min.size());
    for (std::size_t i = 0; i < s_min.size(); ++i)
        lp[i] = density.log_prob(to_vector(s_min.instances[i].features));
    double mx = *std::max_element(lp.begin(), lp.end());
    std::vector<double> w(s_min.size());
    for (std::size_t i = 0; i < s_min.size(); ++i) w[i] = std::exp(lp[i] - mx);

    // sequential weighted draws without replacement
    std::vector<std::size_t> chosen;
    std::vector<bool> taken(s_min.size(), false);
    for (std::size_t draw = 0; draw < num; ++draw) {
        double total = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (!taken[i]) total += w[i];
        if (total <= 0) throw DataError("sample_kernels: all densities underflowed to zero");
        std::uniform_real_distribution<double> unit(0.0, total);
        double u = unit(rng), acc = 0;
        std::size_t pick = s_min.size();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (taken[i]) continue;
            acc += w[i];
            if (u <= acc) {
                pick = i;
                break;
            }
        }
        if (pick == s_min.size()) {  // numeric edge at the upper boundary
            for (std::size_t i = s_min.size(); i-- > 0;)
                if (!taken[i]) {
                    pick = i;
                    break;
                }
        }
        taken[pick] = true;
        chosen.push_back(pick);
    }
    return chosen;
}

SyntheticBatch top_k_by_logprob(const GaussianMixture& gmm, const SyntheticBatch& candidates,
                                std::size_t k) {
    if (k > candidates.size())
        throw DataError("top_k_by_logprob: k exceeds candidate count");
    GmmDensity density(gmm);
    std::vector<std::pair<double, std::size_t>> scored(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i)
        scored[i] = {density.log_prob(to_vector(candidates.points[i])), i};
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    SyntheticBatch out;
    out.degenerate_count = candidates.degenerate_count;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t idx = scored[i].second;
        out.points.push_back(candidates.points[idx]);
        out.kernel_indices.push_back(candidates.kernel_indices[idx]);
        if (!candidates.radius_bounds.empty())
            out.radius_bounds.push_back(candidates.radius_bounds[idx]);
        out.logprobs.push_back(scored[i].first);
    }
    return out;
}

void save_gmm(const std::string& path, const GaussianMixture& gmm) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write gmm file: " + path);
    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "gsmote-gmm 1\n";
    out << gmm.components() << ' ' << gmm.dim() << '\n';
    for (Eigen::Index k = 0; k < gmm.weights.size(); ++k)
        out << fmt(gmm.weights[k]) << (k + 1 < gmm.weights.size() ? ' ' : '\n');
    for (std::size_t k = 0; k < gmm.components(); ++k) {
        for (Eigen::Index j = 0; j < gmm.means[k].size(); ++j)
            out << fmt(gmm.means[k][j]) << (j + 1 < gmm.means[k].size() ? ' ' : '\n');
        const auto& cov = gmm.covariances[k];
        for (Eigen::Index r = 0; r < cov.rows(); ++r)
            for (Eigen::Index c = 0; c < cov.cols(); ++c)
                out << fmt(cov(r, c)) << (c + 1 < cov.cols() ? ' ' : '\n');
    }
}

GaussianMixture load_gmm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open gmm file: " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "gsmote-gmm" || version != 1)
        throw DataError(path + ": not a gsmote-gmm v1 file");
    std::size_t m = 0, n = 0;
    in >> m >> n;
    if (!in || m == 0 || n == 0) throw DataError(path + ": malformed gmm header");
    GaussianMixture gmm;
    gmm.weights.resize(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) in >> gmm.weights[static_cast<Eigen::Index>(k)];
    for (std::size_t k = 0; k < m; ++k) {
        Eigen::VectorXd mu(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) in >> mu[static_cast<Eigen::Index>(j)];
        Eigen::MatrixXd cov(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                in >> cov(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        gmm.means.push_back(std::move(mu));
        gmm.covariances.push_back(std::move(cov));
    }
    if (!in) throw DataError(path + ": truncated gmm file");
    return gmm;
}

}  // namespace gsmote
