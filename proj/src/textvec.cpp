#include "gsmote/textvec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "gsmote/errors.hpp"

namespace gsmote {

Document tokenize(const std::string& text) {
    Document doc;
    std::string cur;
    for (unsigned char ch : text) {
        if (std::isalnum(ch) && ch < 0x80) {
            cur.push_back(static_cast<char>(std::tolower(ch)));
        } else if (!cur.empty()) {
            doc.tokens.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) doc.tokens.push_back(cur);
    return doc;
}

Document remove_stopwords(const Document& doc, const std::set<std::string>& stoplist) {
    Document out;
    for (const auto& t : doc.tokens)
        if (!stoplist.count(t)) out.tokens.push_back(t);
    return out;
}

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> list = {
        "a",     "about", "after", "all",   "also",  "am",    "an",    "and",
        "any",   "are",   "as",    "at",    "be",    "been",  "but",   "by",
        "can",   "could", "did",   "do",    "does",  "for",   "from",  "had",
        "has",   "have",  "he",    "her",   "here",  "him",   "his",   "how",
        "i",     "if",    "in",    "into",  "is",    "it",    "its",   "just",
        "me",    "more",  "most",  "my",    "no",    "not",   "of",    "on",
        "only",  "or",    "other", "our",   "out",   "over",  "own",   "she",
        "so",    "some",  "such",  "than",  "that",  "the",   "their", "them",
        "then",  "there", "these", "they",  "this",  "those", "to",    "too",
        "under", "up",    "was",   "we",    "were",  "what",  "when",  "where",
        "which", "while", "who",   "why",   "will",  "with",  "would", "you",
        "your"};
    return list;
}

std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stop-word file: " + path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (!t.empty()) out.insert(t);
    }
    return out;
}

namespace {

// Classic Porter (1980) rules, operating on a mutable buffer.
class Porter {
public:
    explicit Porter(std::string word) : b_(std::move(word)), k_(b_.size()) {}

    std::string run() {
        if (k_ <= 2) return b_;
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b_.substr(0, k_);
    }

private:
    std::string b_;
    std::size_t k_;  // current length
    std::size_t j_ = 0;

    bool cons(std::size_t i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Measure of the stem b_[0..j_).
    int m() const {
        int n = 0;
        std::size_t i = 0;
        while (true) {
            if (i >= j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i >= j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i >= j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (std::size_t i = 0; i < j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_cons(std::size_t i) const {
        return i >= 1 && b_[i] == b_[i - 1] && cons(i);
    }

    // consonant-vowel-consonant ending, final consonant not w/x/y
    bool cvc(std::size_t i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char ch = b_[i];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* s) {
        std::size_t len = std::char_traits<char>::length(s);
        if (len > k_) return false;
        if (b_.compare(k_ - len, len, s) != 0) return false;
        j_ = k_ - len;
        return true;
    }

    void set_to(const char* s) {
        std::size_t len = std::char_traits<char>::length(s);
        b_.replace(j_, len, s);
        k_ = j_ + len;
    }

    void replace_if_m_gt0(const char* s) {
        if (m() > 0) set_to(s);
    }

    void step1ab() {
        if (b_[k_ - 1] == 's') {
            if (ends("sses")) k_ -= 2;
            else if (ends("ies")) set_to("i");
            else if (k_ >= 2 && b_[k_ - 2] != 's') --k_;
        }
        if (ends("eed")) {
            if (m() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at")) set_to("ate");
            else if (ends("bl")) set_to("ble");
            else if (ends("iz")) set_to("ize");
            else if (double_cons(k_ - 1)) {
                char ch = b_[k_ - 1];
                if (ch != 'l' && ch != 's' && ch != 'z') --k_;
            } else if (m() == 1 && cvc(k_ - 1)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[k_ - 1] = 'i';
    }

    void step2() {
        if (k_ < 2) return;
        switch (b_[k_ - 2]) {
            case 'a':
                if (ends("ational")) { replace_if_m_gt0("ate"); break; }
                if (ends("tional")) { replace_if_m_gt0("tion"); break; }
                break;
            case 'c':
                if (ends("enci")) { replace_if_m_gt0("ence"); break; }
                if (ends("anci")) { replace_if_m_gt0("ance"); break; }
                break;
            case 'e':
                if (ends("izer")) { replace_if_m_gt0("ize"); break; }
                break;
            case 'l':
                if (ends("bli")) { replace_if_m_gt0("ble"); break; }
                if (ends("alli")) { replace_if_m_gt0("al"); break; }
                if (ends("entli")) { replace_if_m_gt0("ent"); break; }
                if (ends("eli")) { replace_if_m_gt0("e"); break; }
                if (ends("ousli")) { replace_if_m_gt0("ous"); break; }
                break;
            case 'o':
                if (ends("ization")) { replace_if_m_gt0("ize"); break; }
                if (ends("ation")) { replace_if_m_gt0("ate"); break; }
                if (ends("ator")) { replace_if_m_gt0("ate"); break; }
                break;
            case 's':
                if (ends("alism")) { replace_if_m_gt0("al"); break; }
                if (ends("iveness")) { replace_if_m_gt0("ive"); break; }
                if (ends("fulness")) { replace_if_m_gt0("ful"); break; }
                if (ends("ousness")) { replace_if_m_gt0("ous"); break; }
                break;
            case 't':
                if (ends("aliti")) { replace_if_m_gt0("al"); break; }
                if (ends("iviti")) { replace_if_m_gt0("ive"); break; }
                if (ends("biliti")) { replace_if_m_gt0("ble"); break; }
                break;
            case 'g':
                if (ends("logi")) { replace_if_m_gt0("log"); break; }
                break;
            default:
                break;
        }
    }

    void step3() {
        switch (b_[k_ - 1]) {
            case 'e':
                if (ends("icate")) { replace_if_m_gt0("ic"); break; }
                if (ends("ative")) { replace_if_m_gt0(""); break; }
                if (ends("alize")) { replace_if_m_gt0("al"); break; }
                break;
            case 'i':
                if (ends("iciti")) { replace_if_m_gt0("ic"); break; }
                break;
            case 'l':
                if (ends("ical")) { replace_if_m_gt0("ic"); break; }
                if (ends("ful")) { replace_if_m_gt0(""); break; }
                break;
            case 's':
                if (ends("ness")) { replace_if_m_gt0(""); break; }
                break;
            default:
                break;
        }
    }

    void step4() {
        if (k_ < 2) return;
        switch (b_[k_ - 2]) {
            case 'a': if (ends("al")) break; return;
            case 'c': if (ends("ance") || ends("ence")) break; return;
            case 'e': if (ends("er")) break; return;
            case 'i': if (ends("ic")) break; return;
            case 'l': if (ends("able") || ends("ible")) break; return;
            case 'n':
                if (ends("ant") || ends("ement") || ends("ment") || ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j_ > 0 && (b_[j_ - 1] == 's' || b_[j_ - 1] == 't')) break;
                if (ends("ou")) break;
                return;
            case 's': if (ends("ism")) break; return;
            case 't': if (ends("ate") || ends("iti")) break; return;
            case 'u': if (ends("ous")) break; return;
            case 'v': if (ends("ive")) break; return;
            case 'z': if (ends("ize")) break; return;
            default: return;
        }
        if (m() > 1) k_ = j_;
    }

    void step5() {
        j_ = k_;
        if (b_[k_ - 1] == 'e') {
            j_ = k_ - 1;
            int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 2))) --k_;
        }
        j_ = k_;
        if (k_ >= 1 && b_[k_ - 1] == 'l' && double_cons(k_ - 1)) {
            j_ = k_ - 1;
            if (m() > 1) --k_;
        }
    }
};

}  // namespace

std::string stem(const std::string& token) {
    std::string cur = token;
    for (int pass = 0; pass < 8; ++pass) {
        std::string next = Porter(cur).run();
        if (next == cur) break;
        cur = std::move(next);
    }
    return cur;
}

Document stem_document(const Document& doc) {
    Document out;
    out.tokens.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) out.tokens.push_back(stem(t));
    return out;
}

double term_frequency(std::size_t raw_count, std::size_t doc_total) {
    if (doc_total == 0) throw DataError("term frequency of an empty document");
    return static_cast<double>(raw_count) / static_cast<double>(doc_total);
}

double inverse_document_frequency(std::size_t df, std::size_t m_docs) {
    if (df == 0) throw DataError("inverse document frequency: term not in corpus");
    return std::log(static_cast<double>(m_docs) / static_cast<double>(df));
}

Corpus build_corpus(const std::vector<std::string>& texts,
                    const std::set<std::string>& stoplist, bool prune_unique) {
    Corpus corpus;
    for (const auto& text : texts) {
        Document d = stem_document(remove_stopwords(tokenize(text), stoplist));
        corpus.documents.push_back(std::move(d));
    }
    // vocabulary by first occurrence, doc_freq counted per document
    for (const auto& doc : corpus.documents) {
        std::set<std::string> seen;
        for (const auto& t : doc.tokens) {
            if (!corpus.vocab_index.count(t)) {
                corpus.vocab_index[t] = corpus.vocabulary.size();
                corpus.vocabulary.push_back(t);
                corpus.doc_freq.push_back(0);
            }
            if (seen.insert(t).second) ++corpus.doc_freq[corpus.vocab_index[t]];
        }
    }
    if (prune_unique) {
        Corpus pruned;
        pruned.documents = corpus.documents;
        for (std::size_t i = 0; i < corpus.vocabulary.size(); ++i) {
            if (corpus.doc_freq[i] > 1) {
                pruned.vocab_index[corpus.vocabulary[i]] = pruned.vocabulary.size();
                pruned.vocabulary.push_back(corpus.vocabulary[i]);
                pruned.doc_freq.push_back(corpus.doc_freq[i]);
            }
        }
        return pruned;
    }
    return corpus;
}

std::vector<std::vector<double>> vectorize(const Corpus& corpus) {
    if (corpus.documents.empty()) throw DataError("cannot vectorize an empty corpus");
    if (corpus.vocabulary.empty()) throw DataError("cannot vectorize: empty vocabulary");
    const std::size_t m_docs = corpus.documents.size();
    std::vector<double> idf(corpus.vocabulary.size());
    for (std::size_t i = 0; i < corpus.vocabulary.size(); ++i)
        idf[i] = inverse_document_frequency(corpus.doc_freq[i], m_docs);

    std::vector<std::vector<double>> matrix(m_docs,
                                            std::vector<double>(corpus.vocabulary.size(), 0.0));
    for (std::size_t j = 0; j < m_docs; ++j) {
        const auto& doc = corpus.documents[j];
        std::size_t in_vocab = 0;
        std::map<std::size_t, std::size_t> counts;
        for (const auto& t : doc.tokens) {
            auto it = corpus.vocab_index.find(t);
            if (it != corpus.vocab_index.end()) {
                ++counts[it->second];
                ++in_vocab;
            }
        }
        for (auto [col, raw] : counts)
            matrix[j][col] = term_frequency(raw, in_vocab) * idf[col];
    }
    return matrix;
}

Dataset corpus_to_dataset(const Corpus& corpus, const std::vector<std::string>& labels) {
    if (labels.size() != corpus.documents.size())
        throw DataError("label count does not match document count");
    auto matrix = vectorize(corpus);
    Dataset d;
    d.n_features = corpus.vocabulary.size();
    d.feature_names = corpus.vocabulary;
    std::map<std::string, int> ids;
    for (std::size_t j = 0; j < matrix.size(); ++j) {
        auto it = ids.find(labels[j]);
        if (it == ids.end()) {
            it = ids.emplace(labels[j], static_cast<int>(ids.size())).first;
            d.label_names.push_back(labels[j]);
        }
        d.instances.push_back({std::move(matrix[j]), it->second, false});
    }
    return d;
}

}  // namespace gsmote
