#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "gsmote/classify.hpp"
#include "gsmote/dataset.hpp"
#include "gsmote/gsmote.hpp"
#include "gsmote/rng.hpp"

namespace gsmote {

struct DeConfig {
    std::size_t generations = 50;
    std::size_t population = 20;   // >= 4, mutation draws three distinct others
    double mutation_factor = 0.8;
    double crossover_prob = 0.9;
    std::size_t dims = 4;
    std::vector<double> lower;     // per-dimension bounds, lower < upper
    std::vector<double> upper;
};

void validate_config(const DeConfig& config);

struct Candidate {
    std::vector<double> genes;
    double fitness = 0.0;
};

struct DeResult {
    std::vector<double> best_genes;
    double best_fitness = 0.0;
    std::vector<double> history;  // per-generation best fitness
};

std::vector<Candidate> de_initialize(const DeConfig& config, Rng& rng);

// rand/1 donor: r1 + f * (r2 - r3), clamped to the box.
std::vector<double> de_mutate(const std::vector<double>& r1, const std::vector<double>& r2,
                              const std::vector<double>& r3, double f, const DeConfig& config);

// Binomial crossover with one forced donor gene at a random index.
std::vector<double> de_crossover(const std::vector<double>& target,
                                 const std::vector<double>& donor, double cr, Rng& rng);

// Strict improvement replaces; ties keep the incumbent.
bool de_select(double trial_fitness, double incumbent_fitness);

// Maximizes fitness over the box. Randomness is pre-assigned per
// (generation, index) substream so results depend only on (config, seed).
DeResult de_optimize(const std::function<double(const std::vector<double>&)>& fitness,
                     const DeConfig& config, std::uint64_t seed,
                     const std::function<void(std::size_t, const DeResult&)>& on_generation = {});

struct GsmoteFitnessConfig {
    std::size_t elm_hidden = 64;
    double elm_ridge = 1e-3;
    std::size_t k_neighbors = 5;
    std::uint64_t seed = 0;
};

// Round-half-up then clamp; K may decode to 0, meaning no augmentation.
GsmoteParams decode_genes(const std::vector<double>& genes, std::size_t minority_size,
                          std::size_t k_neighbors = 5);
std::vector<double> encode_params(const GsmoteParams& p);

// ELM accuracy on eval after augmenting train with the decoded params.
// Evaluations are cached per decoded tuple and seeded per tuple, so the
// objective is deterministic within a run.
class GsmoteFitness {
public:
    GsmoteFitness(Dataset train, Dataset eval, GsmoteFitnessConfig config);
    double operator()(const std::vector<double>& genes);
    std::size_t minority_size() const { return minority_size_; }

private:
    Dataset train_;
    Dataset eval_;
    GsmoteFitnessConfig config_;
    std::size_t minority_size_;
    std::map<std::array<std::size_t, 4>, double> cache_;
};

}  // namespace gsmote
