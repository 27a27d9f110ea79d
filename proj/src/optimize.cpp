#include "gsmote/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <limits>

#include "gsmote/errors.hpp"

namespace gsmote {

void validate_config(const DeConfig& config) {
    if (config.population < 4)
        throw DataError("de: population must be at least 4");
    if (config.generations == 0) throw DataError("de: need at least one generation");
    if (config.dims == 0) throw DataError("de: zero-dimensional search space");
    if (config.lower.size() != config.dims || config.upper.size() != config.dims)
        throw DataError("de: bounds must have one entry per dimension");
    for (std::size_t d = 0; d < config.dims; ++d) {
        if (!std::isfinite(config.lower[d]) || !std::isfinite(config.upper[d]) ||
            config.lower[d] > config.upper[d])
            throw DataError("de: invalid bounds at dimension " + std::to_string(d));
    }
}

namespace {

void clamp_to_box(std::vector<double>& genes, const DeConfig& config) {
    for (std::size_t d = 0; d < genes.size(); ++d)
        genes[d] = std::clamp(genes[d], config.lower[d], config.upper[d]);
}

}  // namespace

std::vector<Candidate> de_initialize(const DeConfig& config, Rng& rng) {
    validate_config(config);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Candidate> pop(config.population);
    for (auto& cand : pop) {
        cand.genes.resize(config.dims);
        for (std::size_t d = 0; d < config.dims; ++d)
            cand.genes[d] = config.lower[d] + unit(rng) * (config.upper[d] - config.lower[d]);
    }
    return pop;
}

std::vector<double> de_mutate(const std::vector<double>& r1, const std::vector<double>& r2,
                              const std::vector<double>& r3, double f, const DeConfig& config) {
    if (r1.size() != r2.size() || r1.size() != r3.size())
        throw DataError("de_mutate: dimension mismatch");
    std::vector<double> donor(r1.size());
    for (std::size_t d = 0; d < r1.size(); ++d) donor[d] = r1[d] + f * (r2[d] - r3[d]);
    clamp_to_box(donor, config);
    return donor;
}

std::vector<double> de_crossover(const std::vector<double>& target,
                                 const std::vector<double>& donor, double cr, Rng& rng) {
    if (target.size() != donor.size()) throw DataError("de_crossover: dimension mismatch");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, target.size() - 1);
    std::size_t j_rand = pick(rng);
    std::vector<double> trial(target.size());
    for (std::size_t j = 0; j < target.size(); ++j)
        trial[j] = (unit(rng) <= cr || j == j_rand) ? donor[j] : target[j];
    return trial;
}

bool de_select(double trial_fitness, double incumbent_fitness) {
    return trial_fitness > incumbent_fitness;
}

DeResult de_optimize(const std::function<double(const std::vector<double>&)>& fitness,
                     const DeConfig& config, std::uint64_t seed,
                     const std::function<void(std::size_t, const DeResult&)>& on_generation) {
    validate_config(config);
    auto safe_fitness = [&](const std::vector<double>& genes) {
        try {
            return fitness(genes);
        } catch (const std::exception& e) {
            std::cerr << "warning: fitness evaluation failed (" << e.what()
                      << "), scored as 0\n";
            return 0.0;
        }
    };

    const std::size_t n = config.population;
    Rng init_rng(substream_seed(seed, 0));
    std::vector<Candidate> pop = de_initialize(config, init_rng);
    for (auto& cand : pop) cand.fitness = safe_fitness(cand.genes);

    DeResult result;
    auto record_best = [&]() {
        auto best = std::max_element(pop.begin(), pop.end(), [](const auto& a, const auto& b) {
            return a.fitness < b.fitness;
        });
        if (result.history.empty() || best->fitness > result.best_fitness) {
            result.best_genes = best->genes;
            result.best_fitness = best->fitness;
        }
        result.history.push_back(result.history.empty()
                                     ? best->fitness
                                     : std::max(result.history.back(), best->fitness));
    };

    for (std::size_t g = 1; g <= config.generations; ++g) {
        std::vector<Candidate> next = pop;
        for (std::size_t i = 0; i < n; ++i) {
            // randomness fixed per (generation, index)
            Rng rng(substream_seed(seed, g * n + i));
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            std::size_t r1, r2, r3;
            do { r1 = pick(rng); } while (r1 == i);
            do { r2 = pick(rng); } while (r2 == i || r2 == r1);
            do { r3 = pick(rng); } while (r3 == i || r3 == r1 || r3 == r2);

            auto donor = de_mutate(pop[r1].genes, pop[r2].genes, pop[r3].genes,
                                   config.mutation_factor, config);
            auto trial = de_crossover(pop[i].genes, donor, config.crossover_prob, rng);
            double trial_fitness = safe_fitness(trial);
            if (de_select(trial_fitness, pop[i].fitness))
                next[i] = {std::move(trial), trial_fitness};
        }
        pop = std::move(next);
        record_best();
        if (on_generation) on_generation(g, result);
    }

    // final-generation argmax (history may carry an earlier equal value)
    auto best = std::max_element(pop.begin(), pop.end(), [](const auto& a, const auto& b) {
        return a.fitness < b.fitness;
    });
    if (best->fitness >= result.best_fitness || result.best_genes.empty()) {
        result.best_genes = best->genes;
        result.best_fitness = best->fitness;
    }
    return result;
}

GsmoteParams decode_genes(const std::vector<double>& genes, std::size_t minority_size,
                          std::size_t k_neighbors) {
    if (genes.size() != 4) throw DataError("decode_genes: expected a 4-vector (m,Num,M,K)");
    auto round_half_up = [](double x) {
        return static_cast<long long>(std::floor(x + 0.5));
    };
    auto clamp_sz = [](long long v, long long lo, long long hi) {
        return static_cast<std::size_t>(std::clamp(v, lo, hi));
    };
    auto min_size = static_cast<long long>(minority_size);

    GsmoteParams p;
    p.m = clamp_sz(round_half_up(genes[0]), 1, min_size);
    p.num = clamp_sz(round_half_up(genes[1]), 1, min_size);
    p.m_per_kernel = clamp_sz(round_half_up(genes[2]), 1,
                              std::numeric_limits<long long>::max());
    // K = 0 is allowed and means "no augmentation"
    p.k_select = clamp_sz(round_half_up(genes[3]), 0,
                          static_cast<long long>(p.num * p.m_per_kernel));
    p.k_neighbors = std::min(k_neighbors, minority_size > 1 ? minority_size - 1 : 1);
    return p;
}

std::vector<double> encode_params(const GsmoteParams& p) {
    return {static_cast<double>(p.m), static_cast<double>(p.num),
            static_cast<double>(p.m_per_kernel), static_cast<double>(p.k_select)};
}

GsmoteFitness::GsmoteFitness(Dataset train, Dataset eval, GsmoteFitnessConfig config)
    : train_(std::move(train)), eval_(std::move(eval)), config_(config) {
    minority_size_ = split_by_class(train_).minority.size();
}

double GsmoteFitness::operator()(const std::vector<double>& genes) {
    GsmoteParams params = decode_genes(genes, minority_size_, config_.k_neighbors);
    std::array<std::size_t, 4> key{params.m, params.num, params.m_per_kernel, params.k_select};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    double acc = 0.0;
    try {
        // per-tuple substream: identical tuples always score identically
        std::uint64_t tuple_seed = config_.seed;
        for (std::size_t v : key) tuple_seed = substream_seed(tuple_seed, v);

        Dataset augmented =
            params.k_select == 0 ? train_ : augment(train_, params, tuple_seed);
        Rng elm_rng(substream_seed(tuple_seed, 0xe1));
        ElmModel model = elm_train(augmented, config_.elm_hidden, config_.elm_ridge, elm_rng);
        std::vector<int> truth;
        for (const auto& inst : eval_.instances) truth.push_back(inst.label);
        ConfusionMatrix cm = confusion(elm_predict(model, eval_), truth,
                                       split_by_class(train_).minority_label);
        acc = accuracy(cm);
    } catch (const std::exception& e) {
        std::cerr << "warning: gsmote fitness failed (" << e.what() << "), scored as 0\n";
        acc = 0.0;
    }
    cache_[key] = acc;
    return acc;
}

}  // namespace gsmote
