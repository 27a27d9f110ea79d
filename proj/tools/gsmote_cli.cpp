// gsmote command-line tool: augment / tune / evaluate / vectorize.
// Structured logs go to stderr, data to files. Every command persists its
// fully resolved config (seed included) next to its primary output, and
// rerunning from that config reproduces outputs byte for byte.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsmote/classify.hpp"
#include "gsmote/dataset.hpp"
#include "gsmote/errors.hpp"
#include "gsmote/gsmote.hpp"
#include "gsmote/optimize.hpp"
#include "gsmote/textvec.hpp"

using json = nlohmann::ordered_json;
using namespace gsmote;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInfeasible = 3;

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

// Flags win over the config file; absent flags take the config value.
template <typename T>
void overlay(const CLI::App* cmd, const json& cfg, const std::string& flag,
             const std::string& key, T& value) {
    if (cmd->count(flag) == 0 && cfg.contains(key)) value = cfg[key].get<T>();
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct MetricsOptions {
    double beta = 1.0;
    bool percent = false;
};

json metrics_json(const std::vector<int>& predictions, const std::vector<int>& truth,
                  const Dataset& d, const MetricsOptions& opts) {
    ClassSplit split = split_by_class(d);
    int pos = split.minority_label;
    int neg = split.majority_label;
    ConfusionMatrix cm = confusion(predictions, truth, pos);
    ConfusionMatrix cm_neg = confusion(predictions, truth, neg);

    double f_pos = f_measure(cm, opts.beta);
    double f_neg = f_measure(cm_neg, opts.beta);
    std::size_t n_pos = cm.tp + cm.fn;
    std::size_t n_neg = cm_neg.tp + cm_neg.fn;
    double scale = opts.percent ? 100.0 : 1.0;

    json out;
    out["accuracy"] = accuracy(cm) * scale;
    out["precision"] = precision(cm) * scale;
    out["recall"] = recall(cm) * scale;
    out["f_measure"] = {{d.label_names.empty() ? std::to_string(pos) : d.label_names[pos],
                         f_pos * scale},
                        {d.label_names.empty() ? std::to_string(neg) : d.label_names[neg],
                         f_neg * scale}};
    out["weighted_f"] = weighted_f(f_pos, f_neg, n_pos, n_neg) * scale;
    out["confusion"] = {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
    out["positive_class"] = d.label_names.empty() ? std::to_string(pos) : d.label_names[pos];
    return out;
}

// ---------------------------------------------------------------- augment

struct AugmentOptions {
    std::string input, output, summary, label_column, config;
    std::uint64_t seed = 0;
    GsmoteParams params;
    bool scale = false, provenance = false;
};

int cmd_augment(const CLI::App* cmd, AugmentOptions o) {
    if (!o.config.empty()) {
        json cfg = load_config_file(o.config);
        overlay(cmd, cfg, "--input", "input", o.input);
        overlay(cmd, cfg, "--output", "output", o.output);
        overlay(cmd, cfg, "--summary", "summary", o.summary);
        overlay(cmd, cfg, "--label-column", "label_column", o.label_column);
        overlay(cmd, cfg, "--seed", "seed", o.seed);
        overlay(cmd, cfg, "--components", "components", o.params.m);
        overlay(cmd, cfg, "--kernels", "kernels", o.params.num);
        overlay(cmd, cfg, "--per-kernel", "per_kernel", o.params.m_per_kernel);
        overlay(cmd, cfg, "--select", "select", o.params.k_select);
        overlay(cmd, cfg, "--k-neighbors", "k_neighbors", o.params.k_neighbors);
        overlay(cmd, cfg, "--scale", "scale", o.scale);
        overlay(cmd, cfg, "--provenance", "provenance", o.provenance);
        overlay(cmd, cfg, "--knn-over-kernels", "knn_over_kernels", o.params.knn_over_kernels);
        overlay(cmd, cfg, "--volume-uniform", "volume_uniform", o.params.volume_uniform);
        overlay(cmd, cfg, "--diagonal-cov", "diagonal_cov", o.params.diagonal_covariance);
    }
    if (o.input.empty() || o.output.empty())
        throw CLI::ValidationError("--input and --output are required");
    if (o.summary.empty()) o.summary = o.output + ".summary.json";

    Dataset d = load_csv(o.input, o.label_column);
    if (o.scale) d = scale_minmax(d);
    ClassSplit split = split_by_class(d);
    double degree_before = imbalance_degree(d);

    Dataset out = d;
    SyntheticBatch batch;
    if (o.params.k_select > 0) {
        batch = run_gsmote(split.minority, o.params, o.seed);
        for (const auto& p : batch.points)
            out.instances.push_back({p, split.minority_label, true});
    }

    if (o.provenance) {
        // synthetic column plus kernel index and logprob; originals get -1 / 0
        std::ofstream f(o.output);
        if (!f) throw DataError("cannot write file: " + o.output);
        for (const auto& name : out.feature_names) f << name << ',';
        f << "label,synthetic,kernel_index,logprob\n";
        std::size_t syn = 0;
        for (const auto& inst : out.instances) {
            for (double v : inst.features) f << fmt17(v) << ',';
            f << out.label_names[inst.label] << ',' << (inst.synthetic ? 1 : 0) << ',';
            if (inst.synthetic) {
                f << batch.kernel_indices[syn] << ',' << fmt17(batch.logprobs[syn]) << '\n';
                ++syn;
            } else {
                f << "-1,0\n";
            }
        }
    } else {
        write_csv(o.output, out, true);
    }

    json summary;
    summary["input"] = o.input;
    summary["output"] = o.output;
    summary["seed"] = o.seed;
    summary["params"] = {{"components", o.params.m},
                         {"kernels", o.params.num},
                         {"per_kernel", o.params.m_per_kernel},
                         {"select", o.params.k_select},
                         {"k_neighbors", o.params.k_neighbors}};
    summary["size_before"] = d.size();
    summary["size_after"] = out.size();
    summary["minority_label"] = d.label_names[split.minority_label];
    summary["minority_before"] = split.minority.size();
    summary["minority_after"] = split.minority.size() + batch.size();
    summary["imbalance_degree_before"] = round3(degree_before);
    summary["imbalance_degree_after"] = round3(imbalance_degree(out));
    summary["degenerate_draws"] = batch.degenerate_count;
    write_json(o.summary, summary);

    json resolved;
    resolved["command"] = "augment";
    resolved["input"] = o.input;
    resolved["output"] = o.output;
    resolved["summary"] = o.summary;
    resolved["label_column"] = o.label_column;
    resolved["seed"] = o.seed;
    resolved["components"] = o.params.m;
    resolved["kernels"] = o.params.num;
    resolved["per_kernel"] = o.params.m_per_kernel;
    resolved["select"] = o.params.k_select;
    resolved["k_neighbors"] = o.params.k_neighbors;
    resolved["scale"] = o.scale;
    resolved["provenance"] = o.provenance;
    resolved["knn_over_kernels"] = o.params.knn_over_kernels;
    resolved["volume_uniform"] = o.params.volume_uniform;
    resolved["diagonal_cov"] = o.params.diagonal_covariance;
    write_json(o.output + ".config.json", resolved);

    std::cerr << "augment: " << d.size() << " -> " << out.size() << " instances, degree "
              << round3(degree_before) << " -> " << round3(imbalance_degree(out)) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- tune

struct TuneOptions {
    std::string input, output, log, label_column, config;
    std::uint64_t seed = 0;
    std::size_t generations = 20, population = 10;
    double mutation = 0.8, crossover = 0.9;
    double test_fraction = 0.25, validation_fraction = 0.25;
    bool fitness_on_test = false;
    std::size_t m_max = 5, per_kernel_max = 20;
    std::size_t hidden = 64, k_neighbors = 5;
    double ridge = 1e-3;
};

int cmd_tune(const CLI::App* cmd, TuneOptions o) {
    if (!o.config.empty()) {
        json cfg = load_config_file(o.config);
        overlay(cmd, cfg, "--input", "input", o.input);
        overlay(cmd, cfg, "--output", "output", o.output);
        overlay(cmd, cfg, "--log", "log", o.log);
        overlay(cmd, cfg, "--label-column", "label_column", o.label_column);
        overlay(cmd, cfg, "--seed", "seed", o.seed);
        overlay(cmd, cfg, "--generations", "generations", o.generations);
        overlay(cmd, cfg, "--population", "population", o.population);
        overlay(cmd, cfg, "--mutation", "mutation", o.mutation);
        overlay(cmd, cfg, "--crossover", "crossover", o.crossover);
        overlay(cmd, cfg, "--test-fraction", "test_fraction", o.test_fraction);
        overlay(cmd, cfg, "--validation-fraction", "validation_fraction",
                o.validation_fraction);
        overlay(cmd, cfg, "--fitness-on-test", "fitness_on_test", o.fitness_on_test);
        overlay(cmd, cfg, "--m-max", "m_max", o.m_max);
        overlay(cmd, cfg, "--per-kernel-max", "per_kernel_max", o.per_kernel_max);
        overlay(cmd, cfg, "--hidden", "hidden", o.hidden);
        overlay(cmd, cfg, "--ridge", "ridge", o.ridge);
        overlay(cmd, cfg, "--k-neighbors", "k_neighbors", o.k_neighbors);
    }
    if (o.input.empty() || o.output.empty())
        throw CLI::ValidationError("--input and --output are required");
    if (o.log.empty()) o.log = o.output + ".log.jsonl";

    Dataset d = load_csv(o.input, o.label_column);
    Rng split_rng(substream_seed(o.seed, 0x5b));
    auto [train, test] = stratified_split(d, o.test_fraction, split_rng);

    Dataset fit_train = train, fit_eval = test;
    if (!o.fitness_on_test) {
        // inner validation split; the literal protocol of scoring on test
        // leaks tuning information and stays behind --fitness-on-test
        Rng val_rng(substream_seed(o.seed, 0x5c));
        auto [inner_train, inner_val] = stratified_split(train, o.validation_fraction, val_rng);
        fit_train = std::move(inner_train);
        fit_eval = std::move(inner_val);
    }

    std::size_t s_min = split_by_class(fit_train).minority.size();
    DeConfig de;
    de.generations = o.generations;
    de.population = o.population;
    de.mutation_factor = o.mutation;
    de.crossover_prob = o.crossover;
    de.dims = 4;
    de.lower = {1.0, 1.0, 1.0, 0.0};
    double num_max = static_cast<double>(s_min);
    double k_max = num_max * static_cast<double>(o.per_kernel_max);
    de.upper = {static_cast<double>(o.m_max), num_max,
                static_cast<double>(o.per_kernel_max), k_max};

    GsmoteFitnessConfig fit_cfg;
    fit_cfg.elm_hidden = o.hidden;
    fit_cfg.elm_ridge = o.ridge;
    fit_cfg.k_neighbors = o.k_neighbors;
    fit_cfg.seed = substream_seed(o.seed, 0xf1);
    GsmoteFitness fitness(fit_train, fit_eval, fit_cfg);

    std::ofstream log(o.log);
    if (!log) throw DataError("cannot write file: " + o.log);
    auto t0 = std::chrono::steady_clock::now();
    auto on_gen = [&](std::size_t g, const DeResult& r) {
        GsmoteParams p = decode_genes(r.best_genes, s_min, o.k_neighbors);
        json line;
        line["generation"] = g;
        line["best_fitness"] = r.best_fitness;
        line["best_params"] = {{"components", p.m},
                               {"kernels", p.num},
                               {"per_kernel", p.m_per_kernel},
                               {"select", p.k_select}};
        log << line.dump() << '\n';
        // wall time stays on stderr so rerunning a config reproduces the log bytes
        std::cerr << "tune: generation " << g << " best " << r.best_fitness << " ("
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                         .count()
                  << "s)\n";
    };

    DeResult result =
        de_optimize([&](const std::vector<double>& g) { return fitness(g); }, de,
                    substream_seed(o.seed, 0xde), on_gen);

    GsmoteParams best = decode_genes(result.best_genes, s_min, o.k_neighbors);
    json out;
    out["best_params"] = {{"components", best.m},
                          {"kernels", best.num},
                          {"per_kernel", best.m_per_kernel},
                          {"select", best.k_select},
                          {"k_neighbors", best.k_neighbors}};
    out["best_fitness"] = result.best_fitness;
    out["generations"] = o.generations;
    out["seed"] = o.seed;
    out["fitness_on_test"] = o.fitness_on_test;
    write_json(o.output, out);

    json resolved;
    resolved["command"] = "tune";
    resolved["input"] = o.input;
    resolved["output"] = o.output;
    resolved["log"] = o.log;
    resolved["label_column"] = o.label_column;
    resolved["seed"] = o.seed;
    resolved["generations"] = o.generations;
    resolved["population"] = o.population;
    resolved["mutation"] = o.mutation;
    resolved["crossover"] = o.crossover;
    resolved["test_fraction"] = o.test_fraction;
    resolved["validation_fraction"] = o.validation_fraction;
    resolved["fitness_on_test"] = o.fitness_on_test;
    resolved["m_max"] = o.m_max;
    resolved["per_kernel_max"] = o.per_kernel_max;
    resolved["hidden"] = o.hidden;
    resolved["ridge"] = o.ridge;
    resolved["k_neighbors"] = o.k_neighbors;
    write_json(o.output + ".config.json", resolved);

    std::cerr << "tune: best fitness " << result.best_fitness << " with (m=" << best.m
              << ", Num=" << best.num << ", M=" << best.m_per_kernel << ", K=" << best.k_select
              << ")\n";
    return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
    std::string train, test, predictions, output, label_column, classifier = "elm", config;
    std::uint64_t seed = 0;
    std::size_t hidden = 64, k_neighbors = 5;
    double ridge = 1e-3, beta = 1.0;
    bool percent = false, compare = false;
    GsmoteParams params;
};

std::vector<int> train_and_predict(const EvaluateOptions& o, const Dataset& train,
                                   const Dataset& test) {
    if (o.classifier == "elm") {
        Rng rng(substream_seed(o.seed, 0xe1));
        return elm_predict(elm_train(train, o.hidden, o.ridge, rng), test);
    }
    if (o.classifier == "gnb") return gnb_predict(gnb_train(train), test);
    throw CLI::ValidationError("unknown classifier: " + o.classifier);
}

int cmd_evaluate(const CLI::App* cmd, EvaluateOptions o) {
    if (!o.config.empty()) {
        json cfg = load_config_file(o.config);
        overlay(cmd, cfg, "--train", "train", o.train);
        overlay(cmd, cfg, "--test", "test", o.test);
        overlay(cmd, cfg, "--predictions", "predictions", o.predictions);
        overlay(cmd, cfg, "--output", "output", o.output);
        overlay(cmd, cfg, "--label-column", "label_column", o.label_column);
        overlay(cmd, cfg, "--classifier", "classifier", o.classifier);
        overlay(cmd, cfg, "--seed", "seed", o.seed);
        overlay(cmd, cfg, "--hidden", "hidden", o.hidden);
        overlay(cmd, cfg, "--ridge", "ridge", o.ridge);
        overlay(cmd, cfg, "--beta", "beta", o.beta);
        overlay(cmd, cfg, "--percent", "percent", o.percent);
        overlay(cmd, cfg, "--compare", "compare", o.compare);
        overlay(cmd, cfg, "--components", "components", o.params.m);
        overlay(cmd, cfg, "--kernels", "kernels", o.params.num);
        overlay(cmd, cfg, "--per-kernel", "per_kernel", o.params.m_per_kernel);
        overlay(cmd, cfg, "--select", "select", o.params.k_select);
        overlay(cmd, cfg, "--k-neighbors", "k_neighbors", o.params.k_neighbors);
    }
    if (o.output.empty()) throw CLI::ValidationError("--output is required");

    MetricsOptions mopts{o.beta, o.percent};
    json result;

    if (!o.predictions.empty()) {
        // external scoring: CSV with columns (truth, predicted)
        std::ifstream in(o.predictions);
        if (!in) throw DataError("cannot open file: " + o.predictions);
        std::string line;
        std::getline(in, line);
        std::vector<int> truth, predicted;
        std::map<std::string, int> ids;
        Dataset fake;
        std::size_t row = 1;
        while (std::getline(in, line)) {
            ++row;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto comma = line.find(',');
            if (comma == std::string::npos)
                throw DataError(o.predictions + ": row " + std::to_string(row) +
                                ": expected 'truth,predicted'");
            for (const std::string& cell :
                 {line.substr(0, comma), line.substr(comma + 1)}) {
                if (!ids.count(cell)) {
                    ids[cell] = static_cast<int>(ids.size());
                    fake.label_names.push_back(cell);
                }
            }
            truth.push_back(ids[line.substr(0, comma)]);
            predicted.push_back(ids[line.substr(comma + 1)]);
        }
        fake.n_features = 0;
        for (int t : truth) fake.instances.push_back({{}, t, false});
        result = metrics_json(predicted, truth, fake, mopts);
    } else {
        if (o.train.empty() || o.test.empty())
            throw CLI::ValidationError("--train and --test (or --predictions) are required");
        Dataset train = load_csv(o.train, o.label_column);
        Dataset test = load_csv(o.test, o.label_column);
        std::vector<int> truth;
        for (const auto& inst : test.instances) truth.push_back(inst.label);

        if (o.compare) {
            Dataset augmented = augment(train, o.params, o.seed);
            result["original"] = metrics_json(train_and_predict(o, train, test), truth, test, mopts);
            result["augmented"] =
                metrics_json(train_and_predict(o, augmented, test), truth, test, mopts);
        } else {
            result = metrics_json(train_and_predict(o, train, test), truth, test, mopts);
        }
    }
    write_json(o.output, result);

    json resolved;
    resolved["command"] = "evaluate";
    resolved["train"] = o.train;
    resolved["test"] = o.test;
    resolved["predictions"] = o.predictions;
    resolved["output"] = o.output;
    resolved["label_column"] = o.label_column;
    resolved["classifier"] = o.classifier;
    resolved["seed"] = o.seed;
    resolved["hidden"] = o.hidden;
    resolved["ridge"] = o.ridge;
    resolved["beta"] = o.beta;
    resolved["percent"] = o.percent;
    resolved["compare"] = o.compare;
    resolved["components"] = o.params.m;
    resolved["kernels"] = o.params.num;
    resolved["per_kernel"] = o.params.m_per_kernel;
    resolved["select"] = o.params.k_select;
    resolved["k_neighbors"] = o.params.k_neighbors;
    write_json(o.output + ".config.json", resolved);

    std::cerr << "evaluate: wrote " << o.output << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- vectorize

struct VectorizeOptions {
    std::string input, output, stopwords, config;
    bool prune_unique = false, csv_input = false;
};

// minimal quote-aware split of "text,label" lines
std::pair<std::string, std::string> split_text_label(const std::string& line,
                                                     const std::string& path, std::size_t row) {
    if (!line.empty() && line.front() == '"') {
        auto close = line.find('"', 1);
        if (close == std::string::npos || close + 1 >= line.size() || line[close + 1] != ',')
            throw DataError(path + ": row " + std::to_string(row) + ": malformed quoted text");
        return {line.substr(1, close - 1), line.substr(close + 2)};
    }
    auto comma = line.rfind(',');
    if (comma == std::string::npos)
        throw DataError(path + ": row " + std::to_string(row) + ": expected 'text,label'");
    return {line.substr(0, comma), line.substr(comma + 1)};
}

int cmd_vectorize(const CLI::App* cmd, VectorizeOptions o) {
    if (!o.config.empty()) {
        json cfg = load_config_file(o.config);
        overlay(cmd, cfg, "--input", "input", o.input);
        overlay(cmd, cfg, "--output", "output", o.output);
        overlay(cmd, cfg, "--stopwords", "stopwords", o.stopwords);
        overlay(cmd, cfg, "--prune-unique", "prune_unique", o.prune_unique);
        overlay(cmd, cfg, "--csv", "csv_input", o.csv_input);
    }
    if (o.input.empty() || o.output.empty())
        throw CLI::ValidationError("--input and --output are required");

    std::ifstream in(o.input);
    if (!in) throw DataError("cannot open file: " + o.input);
    std::vector<std::string> texts, labels;
    std::string line;
    std::size_t row = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (o.csv_input) {
            if (!header_skipped) {
                header_skipped = true;
                continue;
            }
            auto [text, label] = split_text_label(line, o.input, row);
            texts.push_back(text);
            labels.push_back(label);
        } else {
            texts.push_back(line);
            labels.push_back("0");
        }
    }
    if (texts.empty()) throw DataError(o.input + ": empty corpus");

    std::set<std::string> stoplist =
        o.stopwords.empty() ? default_stopwords() : load_stopwords(o.stopwords);
    Corpus corpus = build_corpus(texts, stoplist, o.prune_unique);
    Dataset d = corpus_to_dataset(corpus, labels);
    write_csv(o.output, d);

    json resolved;
    resolved["command"] = "vectorize";
    resolved["input"] = o.input;
    resolved["output"] = o.output;
    resolved["stopwords"] = o.stopwords;
    resolved["prune_unique"] = o.prune_unique;
    resolved["csv_input"] = o.csv_input;
    write_json(o.output + ".config.json", resolved);

    std::cerr << "vectorize: " << texts.size() << " documents, " << corpus.vocabulary.size()
              << " terms\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GMM-guided synthetic minority oversampling toolkit"};
    app.require_subcommand(1);

    AugmentOptions ao;
    auto* aug = app.add_subcommand("augment", "Oversample the minority class of a CSV dataset");
    aug->add_option("--input", ao.input, "input CSV");
    aug->add_option("--output", ao.output, "augmented CSV");
    aug->add_option("--summary", ao.summary, "summary JSON (default <output>.summary.json)");
    aug->add_option("--label-column", ao.label_column, "label column name or index");
    aug->add_option("--seed", ao.seed, "random seed");
    aug->add_option("--components", ao.params.m, "GMM components (m)");
    aug->add_option("--kernels", ao.params.num, "sampling kernels (Num)");
    aug->add_option("--per-kernel", ao.params.m_per_kernel, "candidates per kernel (M)");
    aug->add_option("--select", ao.params.k_select, "synthetics kept (K); 0 copies the input");
    aug->add_option("--k-neighbors", ao.params.k_neighbors, "neighborhood size");
    aug->add_flag("--scale", ao.scale, "min-max scale features first");
    aug->add_flag("--provenance", ao.provenance, "emit kernel index and logprob columns");
    aug->add_flag("--knn-over-kernels", ao.params.knn_over_kernels,
                  "search neighbors among selected kernels only");
    aug->add_flag("--volume-uniform", ao.params.volume_uniform,
                  "draw uniformly over the ball volume");
    aug->add_flag("--diagonal-cov", ao.params.diagonal_covariance,
                  "diagonal covariance matrices");
    aug->add_option("--config", ao.config, "JSON config; flags win");

    TuneOptions to;
    auto* tune = app.add_subcommand("tune", "Tune (m,Num,M,K) by differential evolution");
    tune->add_option("--input", to.input, "input CSV");
    tune->add_option("--output", to.output, "best-params JSON");
    tune->add_option("--log", to.log, "per-generation JSONL log");
    tune->add_option("--label-column", to.label_column, "label column name or index");
    tune->add_option("--seed", to.seed, "random seed");
    tune->add_option("--generations", to.generations, "G");
    tune->add_option("--population", to.population, "N");
    tune->add_option("--mutation", to.mutation, "F");
    tune->add_option("--crossover", to.crossover, "C_r");
    tune->add_option("--test-fraction", to.test_fraction, "held-out test share");
    tune->add_option("--validation-fraction", to.validation_fraction,
                     "inner validation share of train");
    tune->add_flag("--fitness-on-test", to.fitness_on_test,
                   "score fitness on the test split (leaks tuning information)");
    tune->add_option("--m-max", to.m_max, "upper bound for GMM components");
    tune->add_option("--per-kernel-max", to.per_kernel_max, "upper bound for M");
    tune->add_option("--hidden", to.hidden, "ELM hidden units");
    tune->add_option("--ridge", to.ridge, "ELM ridge");
    tune->add_option("--k-neighbors", to.k_neighbors, "neighborhood size");
    tune->add_option("--config", to.config, "JSON config; flags win");

    EvaluateOptions eo;
    auto* eval = app.add_subcommand("evaluate", "Score a classifier or external predictions");
    eval->add_option("--train", eo.train, "training CSV");
    eval->add_option("--test", eo.test, "test CSV");
    eval->add_option("--predictions", eo.predictions, "external predictions CSV (truth,predicted)");
    eval->add_option("--output", eo.output, "metrics JSON");
    eval->add_option("--label-column", eo.label_column, "label column name or index");
    eval->add_option("--classifier", eo.classifier, "elm or gnb");
    eval->add_option("--seed", eo.seed, "random seed");
    eval->add_option("--hidden", eo.hidden, "ELM hidden units");
    eval->add_option("--ridge", eo.ridge, "ELM ridge");
    eval->add_option("--beta", eo.beta, "F-measure beta");
    eval->add_flag("--percent", eo.percent, "report metrics on a 0-100 scale");
    eval->add_flag("--compare", eo.compare, "original vs augmented side by side");
    eval->add_option("--components", eo.params.m, "GMM components for --compare");
    eval->add_option("--kernels", eo.params.num, "kernels for --compare");
    eval->add_option("--per-kernel", eo.params.m_per_kernel, "candidates per kernel");
    eval->add_option("--select", eo.params.k_select, "synthetics kept");
    eval->add_option("--k-neighbors", eo.params.k_neighbors, "neighborhood size");
    eval->add_option("--config", eo.config, "JSON config; flags win");

    VectorizeOptions vo;
    auto* vec = app.add_subcommand("vectorize", "TF-IDF vectorize a text corpus");
    vec->add_option("--input", vo.input, "text file (one document per line) or CSV");
    vec->add_option("--output", vo.output, "feature CSV");
    vec->add_option("--stopwords", vo.stopwords, "stop-word override, one term per line");
    vec->add_flag("--prune-unique", vo.prune_unique, "drop terms occurring in one document");
    vec->add_flag("--csv", vo.csv_input, "input is a two-column CSV (text,label)");
    vec->add_option("--config", vo.config, "JSON config; flags win");

    try {
        app.parse(argc, argv);
        if (aug->parsed()) return cmd_augment(aug, ao);
        if (tune->parsed()) return cmd_tune(tune, to);
        if (eval->parsed()) return cmd_evaluate(eval, eo);
        if (vec->parsed()) return cmd_vectorize(vec, vo);
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible parameters: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
