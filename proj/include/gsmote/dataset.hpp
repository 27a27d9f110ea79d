#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gsmote/rng.hpp"

namespace gsmote {

struct Instance {
    std::vector<double> features;
    int label = 0;
    bool synthetic = false;
};

// Immutable-by-convention labeled instance matrix. Labels are dense ids
// 0..C-1 assigned by first occurrence in the source; label_names keeps the
// raw text for reporting.
struct Dataset {
    std::vector<Instance> instances;
    std::size_t n_features = 0;
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;

    std::size_t size() const { return instances.size(); }
    std::vector<int> class_ids() const;
    std::size_t count_label(int label) const;
};

struct ClassSplit {
    Dataset minority;
    Dataset majority;
    int minority_label = 0;
    int majority_label = 0;
};

// label_column: header name, or a 0-based index as text; empty means last column.
Dataset load_csv(const std::string& path, const std::string& label_column = "");
void write_csv(const std::string& path, const Dataset& d, bool synthetic_column = false);

ClassSplit split_by_class(const Dataset& d);

// |majority| / |minority|; >= 1 for any valid binary dataset.
double imbalance_degree(const Dataset& d);

std::pair<Dataset, Dataset> stratified_split(const Dataset& d, double test_fraction, Rng& rng);

// Opt-in per-column min-max scaling to [0,1]; constant columns map to 0.
Dataset scale_minmax(const Dataset& d);

}  // namespace gsmote
