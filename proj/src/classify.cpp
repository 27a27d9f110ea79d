#include "gsmote/classify.hpp"

#include <algorithm>
#include <cmath>

#include "gsmote/errors.hpp"

namespace gsmote {

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& truth,
                          int positive_class) {
    if (predictions.size() != truth.size())
        throw DataError("confusion: prediction/truth length mismatch");
    if (predictions.empty()) throw DataError("confusion: empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        bool actual_pos = truth[i] == positive_class;
        bool pred_pos = predictions[i] == positive_class;
        if (actual_pos && pred_pos) ++cm.tp;
        else if (actual_pos) ++cm.fn;
        else if (pred_pos) ++cm.fp;
        else ++cm.tn;
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw DataError("accuracy of an empty confusion matrix");
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

double precision(const ConfusionMatrix& cm, bool* degenerate) {
    if (cm.tp + cm.fp == 0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
}

double recall(const ConfusionMatrix& cm, bool* degenerate) {
    if (cm.tp + cm.fn == 0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
}

double f_measure_pr(double p, double r, double beta, bool* degenerate) {
    double b2 = beta * beta;
    double denom = b2 * p + r;
    if (denom == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return (1.0 + b2) * p * r / denom;
}

double f_measure(const ConfusionMatrix& cm, double beta, bool* degenerate) {
    return f_measure_pr(precision(cm, degenerate), recall(cm, degenerate), beta, degenerate);
}

double weighted_f(double f1, double f2, std::size_t n1, std::size_t n2) {
    if (n1 + n2 == 0) throw DataError("weighted_f: empty classes");
    double total = static_cast<double>(n1 + n2);
    return static_cast<double>(n1) / total * f1 + static_cast<double>(n2) / total * f2;
}

namespace {

Eigen::MatrixXd features_matrix(const Dataset& d) {
    Eigen::MatrixXd X(d.size(), d.n_features);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.n_features; ++j)
            X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                d.instances[i].features[j];
    return X;
}

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& z) {
    return (1.0 / (1.0 + (-z.array()).exp())).matrix();
}

}  // namespace

ElmModel elm_train(const Dataset& train, std::size_t hidden, double ridge, Rng& rng) {
    if (train.size() == 0) throw DataError("elm_train: empty training set");
    if (hidden == 0) throw DataError("elm_train: need at least one hidden unit");

    ElmModel model;
    model.class_labels = train.class_ids();
    const auto n = static_cast<Eigen::Index>(train.n_features);
    const auto h = static_cast<Eigen::Index>(hidden);
    const auto classes = static_cast<Eigen::Index>(model.class_labels.size());

    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    model.input_weights.resize(n, h);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < h; ++j) model.input_weights(i, j) = unit(rng);
    model.biases.resize(h);
    for (Eigen::Index j = 0; j < h; ++j) model.biases[j] = unit(rng);

    Eigen::MatrixXd X = features_matrix(train);
    Eigen::MatrixXd H =
        sigmoid((X * model.input_weights).rowwise() + model.biases.transpose());

    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(train.size()), classes);
    for (std::size_t i = 0; i < train.size(); ++i) {
        auto col = std::find(model.class_labels.begin(), model.class_labels.end(),
                             train.instances[i].label) -
                   model.class_labels.begin();
        Y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) = 1.0;
    }

    Eigen::MatrixXd A = H.transpose() * H + ridge * Eigen::MatrixXd::Identity(h, h);
    model.output_weights = A.ldlt().solve(H.transpose() * Y);
    if (!model.output_weights.allFinite())
        throw DataError("elm_train: singular readout system");
    return model;
}

int elm_predict(const ElmModel& model, const std::vector<double>& x) {
    Eigen::Map<const Eigen::RowVectorXd> row(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::RowVectorXd hidden_out =
        sigmoid(row * model.input_weights + model.biases.transpose());
    Eigen::RowVectorXd scores = hidden_out * model.output_weights;
    Eigen::Index best = 0;
    scores.maxCoeff(&best);
    return model.class_labels[static_cast<std::size_t>(best)];
}

std::vector<int> elm_predict(const ElmModel& model, const Dataset& d) {
    std::vector<int> out;
    out.reserve(d.size());
    for (const auto& inst : d.instances) out.push_back(elm_predict(model, inst.features));
    return out;
}

GnbModel gnb_train(const Dataset& train) {
    if (train.size() == 0) throw DataError("gnb_train: empty training set");
    GnbModel model;
    model.class_labels = train.class_ids();
    for (int label : model.class_labels) {
        std::vector<double> mean(train.n_features, 0.0), var(train.n_features, 0.0);
        std::size_t count = 0;
        for (const auto& inst : train.instances)
            if (inst.label == label) {
                ++count;
                for (std::size_t j = 0; j < train.n_features; ++j) mean[j] += inst.features[j];
            }
        for (auto& v : mean) v /= static_cast<double>(count);
        for (const auto& inst : train.instances)
            if (inst.label == label)
                for (std::size_t j = 0; j < train.n_features; ++j) {
                    double diff = inst.features[j] - mean[j];
                    var[j] += diff * diff;
                }
        for (auto& v : var) v = std::max(v / static_cast<double>(count), 1e-9);
        model.log_priors.push_back(
            std::log(static_cast<double>(count) / static_cast<double>(train.size())));
        model.means.push_back(std::move(mean));
        model.variances.push_back(std::move(var));
    }
    return model;
}

int gnb_predict(const GnbModel& model, const std::vector<double>& x) {
    double best_score = -std::numeric_limits<double>::infinity();
    int best_label = model.class_labels.front();
    for (std::size_t c = 0; c < model.class_labels.size(); ++c) {
        double score = model.log_priors[c];
        for (std::size_t j = 0; j < x.size(); ++j) {
            double diff = x[j] - model.means[c][j];
            score += -0.5 * (std::log(2.0 * M_PI * model.variances[c][j]) +
                             diff * diff / model.variances[c][j]);
        }
        if (score > best_score) {
            best_score = score;
            best_label = model.class_labels[c];
        }
    }
    return best_label;
}

std::vector<int> gnb_predict(const GnbModel& model, const Dataset& d) {
    std::vector<int> out;
    out.reserve(d.size());
    for (const auto& inst : d.instances) out.push_back(gnb_predict(model, inst.features));
    return out;
}

}  // namespace gsmote
