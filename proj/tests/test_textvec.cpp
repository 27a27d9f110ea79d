#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "gsmote/errors.hpp"
#include "gsmote/textvec.hpp"

using namespace gsmote;

TEST_CASE("tokenize lowercases and strips punctuation") {
    Document d = tokenize("Crash, on Startup!");
    CHECK(d.tokens == std::vector<std::string>{"crash", "on", "startup"});
}

TEST_CASE("tokenize of empty text is empty") {
    CHECK(tokenize("").tokens.empty());
    CHECK(tokenize("!!! ,,, ...").tokens.empty());
}

TEST_CASE("tokenize output always matches [a-z0-9]+") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> ch(0, 255);
    std::uniform_int_distribution<int> len(0, 60);
    for (int trial = 0; trial < 500; ++trial) {
        std::string s;
        int n = len(rng);
        for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(ch(rng)));
        for (const auto& t : tokenize(s).tokens) {
            CHECK(!t.empty());
            for (char c : t)
                CHECK(((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')));
        }
    }
}

TEST_CASE("stopword removal preserves order and drops members") {
    Document d{{"the", "bug", "in", "parser"}};
    Document out = remove_stopwords(d, default_stopwords());
    CHECK(out.tokens == std::vector<std::string>{"bug", "parser"});
}

TEST_CASE("empty stoplist is the identity") {
    Document d{{"the", "bug"}};
    CHECK(remove_stopwords(d, {}).tokens == d.tokens);
}

TEST_CASE("default stoplist contains the canonical examples") {
    const auto& sw = default_stopwords();
    CHECK(sw.count("in"));
    CHECK(sw.count("that"));
    CHECK(sw.count("the"));
}

TEST_CASE("stopword filtering never leaks a stoplist member") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> pick(0, 25);
    for (int trial = 0; trial < 200; ++trial) {
        Document d;
        for (int i = 0; i < 20; ++i)
            d.tokens.push_back(std::string(1, static_cast<char>('a' + pick(rng))) +
                               std::string(1, static_cast<char>('a' + pick(rng))));
        Document out = remove_stopwords(d, default_stopwords());
        for (const auto& t : out.tokens) CHECK(default_stopwords().count(t) == 0);
    }
}

TEST_CASE("computerize and computerized share a stem") {
    CHECK(stem("computerize") == stem("computerized"));
}

TEST_CASE("base forms are unchanged") {
    CHECK(stem("bug") == "bug");
}

TEST_CASE("stemming reduces standard suffix families") {
    CHECK(stem("caresses") == stem("caress"));
    CHECK(stem("running") == stem("run"));
    CHECK(stem("relational") == stem("relate"));
}

TEST_CASE("stemming is idempotent on fuzzed tokens") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick(0, 25);
    std::uniform_int_distribution<int> len(1, 14);
    std::vector<std::string> suffixes{"", "ing", "ed", "ization", "ness", "ies", "ational",
                                      "izer", "ousli", "ement", "es", "s", "ive", "ful"};
    std::uniform_int_distribution<std::size_t> suf(0, suffixes.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string t;
        int n = len(rng);
        for (int i = 0; i < n; ++i) t.push_back(static_cast<char>('a' + pick(rng)));
        t += suffixes[suf(rng)];
        CHECK(stem(stem(t)) == stem(t));
    }
}

TEST_CASE("term frequency follows the normalized-count definition") {
    CHECK(term_frequency(2, 3) == doctest::Approx(2.0 / 3.0));
    CHECK(term_frequency(1, 1) == 1.0);
    CHECK_THROWS_AS(term_frequency(0, 0), DataError);
}

TEST_CASE("per-document term frequencies sum to one") {
    Corpus c = build_corpus({"alpha alpha beta gamma", "beta beta gamma"}, {});
    for (std::size_t j = 0; j < c.documents.size(); ++j) {
        const auto& doc = c.documents[j];
        double sum = 0;
        for (const auto& term : c.vocabulary) {
            std::size_t raw = 0;
            for (const auto& t : doc.tokens) raw += t == term;
            sum += term_frequency(raw, doc.tokens.size());
        }
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("idf edge values") {
    CHECK(inverse_document_frequency(10, 10) == 0.0);
    CHECK(inverse_document_frequency(1, 10) == doctest::Approx(std::log(10.0)));
    CHECK_THROWS_AS(inverse_document_frequency(0, 10), DataError);
}

TEST_CASE("idf is monotone decreasing in document frequency") {
    for (std::size_t m = 2; m <= 50; m += 7)
        for (std::size_t df = 1; df < m; ++df)
            CHECK(inverse_document_frequency(df, m) >
                  inverse_document_frequency(df + 1, m));
}

TEST_CASE("single-document corpus vectorizes to all zeros") {
    Corpus c = build_corpus({"alpha beta gamma"}, {});
    auto matrix = vectorize(c);
    REQUIRE(matrix.size() == 1);
    for (double v : matrix[0]) CHECK(v == 0.0);
}

TEST_CASE("three-document golden corpus") {
    // docs: "a b", "a c", "a"; stopwords disabled so single letters survive
    Corpus c = build_corpus({"a b", "a c", "a"}, {});
    auto matrix = vectorize(c);
    REQUIRE(matrix.size() == 3);
    REQUIRE(c.vocabulary.size() == 3);
    std::size_t col_a = c.vocab_index.at("a");
    std::size_t col_b = c.vocab_index.at("b");
    std::size_t col_c = c.vocab_index.at("c");
    // a appears in every document: idf 0, whole column zero
    for (const auto& row : matrix) CHECK(row[col_a] == 0.0);
    CHECK(matrix[0][col_b] == doctest::Approx(0.5 * std::log(3.0)));
    CHECK(matrix[1][col_c] == doctest::Approx(0.5 * std::log(3.0)));
    CHECK(matrix[2][col_b] == 0.0);
}

TEST_CASE("matrix shape equals documents x vocabulary") {
    Corpus c = build_corpus({"one two", "three four five", "one five"}, {});
    auto matrix = vectorize(c);
    CHECK(matrix.size() == 3);
    for (const auto& row : matrix) CHECK(row.size() == c.vocabulary.size());
}

TEST_CASE("vectorization ignores document-internal token order") {
    Corpus a = build_corpus({"red green blue", "red red blue"}, {});
    Corpus b = build_corpus({"blue green red", "blue red red"}, {});
    auto ma = vectorize(a);
    auto mb = vectorize(b);
    for (std::size_t j = 0; j < ma.size(); ++j)
        for (const auto& term : a.vocabulary)
            CHECK(ma[j][a.vocab_index.at(term)] ==
                  doctest::Approx(mb[j][b.vocab_index.at(term)]));
}

TEST_CASE("vocabulary pruning drops single-document terms") {
    Corpus c = build_corpus({"shared unique1", "shared unique2"}, {}, true);
    CHECK(c.vocabulary.size() == 1);
    CHECK(c.vocab_index.count(stem("shared")));
}

TEST_CASE("empty corpus cannot be vectorized") {
    CHECK_THROWS_AS(vectorize(Corpus{}), DataError);
    Corpus all_empty = build_corpus({"", "!!!"}, {});
    CHECK_THROWS_AS(vectorize(all_empty), DataError);
}

TEST_CASE("corpus_to_dataset keeps document order and vocabulary columns") {
    Corpus c = build_corpus({"crash on startup", "crash in parser"}, default_stopwords());
    Dataset d = corpus_to_dataset(c, {"severe", "nonsevere"});
    CHECK(d.size() == 2);
    CHECK(d.n_features == c.vocabulary.size());
    CHECK(d.feature_names == c.vocabulary);
    CHECK(d.label_names == std::vector<std::string>{"severe", "nonsevere"});
}
