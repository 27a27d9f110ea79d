#include "gsmote/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gsmote/errors.hpp"

namespace gsmote {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::vector<int> Dataset::class_ids() const {
    std::vector<int> ids;
    for (const auto& inst : instances)
        if (std::find(ids.begin(), ids.end(), inst.label) == ids.end())
            ids.push_back(inst.label);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::size_t Dataset::count_label(int label) const {
    std::size_t c = 0;
    for (const auto& inst : instances) c += inst.label == label;
    return c;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_row(line);
    for (auto& h : header) h = trim(h);
    const std::size_t n_cols = header.size();
    if (n_cols < 2) throw DataError(path + ": need at least one feature and a label column");

    std::size_t label_idx = n_cols - 1;
    if (!label_column.empty()) {
        auto it = std::find(header.begin(), header.end(), label_column);
        if (it != header.end()) {
            label_idx = static_cast<std::size_t>(it - header.begin());
        } else {
            try {
                std::size_t pos = 0;
                long idx = std::stol(label_column, &pos);
                if (pos != label_column.size() || idx < 0 ||
                    static_cast<std::size_t>(idx) >= n_cols)
                    throw std::invalid_argument("");
                label_idx = static_cast<std::size_t>(idx);
            } catch (const std::exception&) {
                throw DataError(path + ": label column '" + label_column + "' not found");
            }
        }
    }

    Dataset d;
    d.n_features = n_cols - 1;
    for (std::size_t c = 0; c < n_cols; ++c)
        if (c != label_idx) d.feature_names.push_back(header[c]);

    std::map<std::string, int> label_ids;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split_row(line);
        if (cells.size() != n_cols)
            throw DataError(path + ": row " + std::to_string(row_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(n_cols));
        Instance inst;
        inst.features.reserve(d.n_features);
        for (std::size_t c = 0; c < n_cols; ++c) {
            std::string cell = trim(cells[c]);
            if (c == label_idx) {
                if (cell.empty())
                    throw DataError(path + ": row " + std::to_string(row_no) + ": empty label");
                auto it = label_ids.find(cell);
                if (it == label_ids.end()) {
                    int id = static_cast<int>(label_ids.size());
                    it = label_ids.emplace(cell, id).first;
                    d.label_names.push_back(cell);
                }
                inst.label = it->second;
            } else {
                double v = 0;
                try {
                    std::size_t pos = 0;
                    v = std::stod(cell, &pos);
                    if (pos != cell.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw DataError(path + ": row " + std::to_string(row_no) + ", column '" +
                                    header[c] + "': non-numeric cell '" + cell + "'");
                }
                if (!std::isfinite(v))
                    throw DataError(path + ": row " + std::to_string(row_no) + ", column '" +
                                    header[c] + "': non-finite value");
                inst.features.push_back(v);
            }
        }
        d.instances.push_back(std::move(inst));
    }
    if (d.instances.size() < 2)
        throw DataError(path + ": fewer than 2 data rows");
    return d;
}

void write_csv(const std::string& path, const Dataset& d, bool synthetic_column) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    for (std::size_t c = 0; c < d.n_features; ++c) {
        out << (c < d.feature_names.size() ? d.feature_names[c] : "f" + std::to_string(c))
            << ',';
    }
    out << "label";
    if (synthetic_column) out << ",synthetic";
    out << '\n';
    for (const auto& inst : d.instances) {
        for (double v : inst.features) out << fmt_double(v) << ',';
        if (inst.label >= 0 && static_cast<std::size_t>(inst.label) < d.label_names.size())
            out << d.label_names[inst.label];
        else
            out << inst.label;
        if (synthetic_column) out << ',' << (inst.synthetic ? 1 : 0);
        out << '\n';
    }
}

ClassSplit split_by_class(const Dataset& d) {
    auto ids = d.class_ids();
    if (ids.size() != 2)
        throw DataError("binary dataset required, found " + std::to_string(ids.size()) +
                        " classes");
    std::size_t c0 = d.count_label(ids[0]);
    std::size_t c1 = d.count_label(ids[1]);
    // Tie: smaller label id is minority.
    int min_label = (c0 <= c1) ? ids[0] : ids[1];
    int maj_label = (min_label == ids[0]) ? ids[1] : ids[0];

    ClassSplit s;
    s.minority_label = min_label;
    s.majority_label = maj_label;
    s.minority.n_features = s.majority.n_features = d.n_features;
    s.minority.feature_names = s.majority.feature_names = d.feature_names;
    s.minority.label_names = s.majority.label_names = d.label_names;
    for (const auto& inst : d.instances)
        (inst.label == min_label ? s.minority : s.majority).instances.push_back(inst);
    return s;
}

double imbalance_degree(const Dataset& d) {
    auto ids = d.class_ids();
    if (ids.size() != 2) throw DataError("imbalance degree requires a binary dataset");
    double c0 = static_cast<double>(d.count_label(ids[0]));
    double c1 = static_cast<double>(d.count_label(ids[1]));
    if (c0 == 0 || c1 == 0) throw DataError("imbalance degree: empty class");
    return std::max(c0, c1) / std::min(c0, c1);
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& d, double test_fraction, Rng& rng) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw DataError("test fraction must lie in (0,1)");
    auto ids = d.class_ids();

    Dataset train, test;
    train.n_features = test.n_features = d.n_features;
    train.feature_names = test.feature_names = d.feature_names;
    train.label_names = test.label_names = d.label_names;

    for (int label : ids) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d.instances[i].label == label) idx.push_back(i);
        if (idx.size() < 2)
            throw DataError("class " + std::to_string(label) + " too small to stratify");
        std::shuffle(idx.begin(), idx.end(), rng);
        auto n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(idx.size())));
        n_test = std::clamp<std::size_t>(n_test, 1, idx.size() - 1);
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_test ? test : train).instances.push_back(d.instances[idx[i]]);
    }
    return {std::move(train), std::move(test)};
}

Dataset scale_minmax(const Dataset& d) {
    if (d.instances.empty()) throw DataError("cannot scale an empty dataset");
    std::vector<double> lo(d.n_features, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d.n_features, -std::numeric_limits<double>::infinity());
    for (const auto& inst : d.instances)
        for (std::size_t c = 0; c < d.n_features; ++c) {
            lo[c] = std::min(lo[c], inst.features[c]);
            hi[c] = std::max(hi[c], inst.features[c]);
        }
    Dataset out = d;
    for (auto& inst : out.instances)
        for (std::size_t c = 0; c < d.n_features; ++c) {
            double range = hi[c] - lo[c];
            inst.features[c] = range > 0 ? (inst.features[c] - lo[c]) / range : 0.0;
        }
    return out;
}

}  // namespace gsmote
