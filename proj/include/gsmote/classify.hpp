#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gsmote/dataset.hpp"
#include "gsmote/rng.hpp"

namespace gsmote {

struct ConfusionMatrix {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    std::size_t total() const { return tp + tn + fp + fn; }
};

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& truth,
                          int positive_class);

// Zero denominators yield 0 and set *degenerate when given; a tuner's
// fitness evaluation must survive constant classifiers.
double accuracy(const ConfusionMatrix& cm);
double precision(const ConfusionMatrix& cm, bool* degenerate = nullptr);
double recall(const ConfusionMatrix& cm, bool* degenerate = nullptr);

// Standard F_beta: (1+b^2) P R / (b^2 P + R).
double f_measure(const ConfusionMatrix& cm, double beta = 1.0, bool* degenerate = nullptr);
double f_measure_pr(double precision, double recall, double beta = 1.0,
                    bool* degenerate = nullptr);

// Class-size weighted average of two per-class F scores.
double weighted_f(double f1, double f2, std::size_t n1, std::size_t n2);

// Extreme learning machine: random frozen hidden layer, ridge least-squares
// readout against one-hot targets.
struct ElmModel {
    Eigen::MatrixXd input_weights;   // n x hidden
    Eigen::VectorXd biases;          // hidden
    Eigen::MatrixXd output_weights;  // hidden x classes
    std::vector<int> class_labels;   // column -> label id
};

ElmModel elm_train(const Dataset& train, std::size_t hidden, double ridge, Rng& rng);
int elm_predict(const ElmModel& model, const std::vector<double>& x);
std::vector<int> elm_predict(const ElmModel& model, const Dataset& d);

struct GnbModel {
    std::vector<int> class_labels;
    std::vector<double> log_priors;
    std::vector<std::vector<double>> means;      // per class, per feature
    std::vector<std::vector<double>> variances;  // floored at 1e-9
};

GnbModel gnb_train(const Dataset& train);
int gnb_predict(const GnbModel& model, const std::vector<double>& x);
std::vector<int> gnb_predict(const GnbModel& model, const Dataset& d);

}  // namespace gsmote
