#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gsmote/dataset.hpp"

namespace gsmote {

struct Document {
    std::vector<std::string> tokens;
};

struct Corpus {
    std::vector<Document> documents;
    std::vector<std::string> vocabulary;        // column order
    std::map<std::string, std::size_t> vocab_index;
    std::vector<std::size_t> doc_freq;          // per vocabulary term
};

// Lowercases and splits on non-alphanumeric boundaries; output tokens match [a-z0-9]+.
Document tokenize(const std::string& text);

Document remove_stopwords(const Document& doc, const std::set<std::string>& stoplist);

const std::set<std::string>& default_stopwords();
std::set<std::string> load_stopwords(const std::string& path);

// Porter stem iterated to a fixed point so stemming is idempotent.
std::string stem(const std::string& token);

Document stem_document(const Document& doc);

// TF per Eq.-style normalized count: raw_count / doc_total.
double term_frequency(std::size_t raw_count, std::size_t doc_total);

// ln(m_docs / df); zero when the term appears in every document.
double inverse_document_frequency(std::size_t df, std::size_t m_docs);

// Fixed pipeline: tokenize -> stopwords -> stem -> count. Vocabulary is built
// after stemming, ordered by first occurrence across documents.
Corpus build_corpus(const std::vector<std::string>& texts,
                    const std::set<std::string>& stoplist = default_stopwords(),
                    bool prune_unique = false);

// Row j, column i = TF(i,j) * IDF(i).
std::vector<std::vector<double>> vectorize(const Corpus& corpus);

// Bundles vectorize() output with labels into a Dataset (feature names = terms).
Dataset corpus_to_dataset(const Corpus& corpus, const std::vector<std::string>& labels);

}  // namespace gsmote
