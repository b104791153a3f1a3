#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace swcu {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
    bool operator==(const Bm25Params&) const = default;
};

// term-id -> weight, sorted by term id, no zero entries, norm cached
struct SparseVector {
    std::vector<std::pair<int32_t, double>> entries;
    double norm = 0.0;
};

double dot(const SparseVector& u, const SparseVector& v);
// dot(u,v) / (|u||v|), 0 when either norm is 0, clamped to [0,1]
double cosine(const SparseVector& u, const SparseVector& v);

// BM25-weighted inverted index. Weight of term t in doc d:
//   idf(t) * tf*(k1+1) / (tf + k1*(1 - b + b*len/avg_len))
//   idf(t) = ln((N - df + 0.5)/(df + 0.5) + 1)
// Queries are weighted identically, with the query's own token count as len.
class Bm25Index {
public:
    static Bm25Index build(const std::vector<std::string>& docs, Bm25Params params = {});

    size_t num_docs() const { return doc_vectors_.size(); }
    size_t vocab_size() const { return terms_.size(); }
    const Bm25Params& params() const { return params_; }
    double avg_doc_len() const { return avg_doc_len_; }
    double doc_len(size_t i) const { return doc_len_.at(i); }
    int64_t doc_freq(std::string_view term) const;
    double idf(std::string_view term) const;  // 0 for unknown terms
    const SparseVector& doc_vector(size_t i) const { return doc_vectors_.at(i); }

    // unknown terms are dropped (they cannot match any document)
    SparseVector vectorize_query(std::string_view text) const;
    // cosine of the query against every document (dense, zeros included)
    std::vector<double> cosine_all(const SparseVector& query) const;

    // serialization support
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<int64_t>& doc_freqs() const { return df_; }
    const std::vector<double>& doc_lens() const { return doc_len_; }
    const std::vector<SparseVector>& doc_vectors() const { return doc_vectors_; }
    static Bm25Index from_parts(Bm25Params params, std::vector<std::string> terms,
                                std::vector<int64_t> df, std::vector<double> doc_lens,
                                double avg_doc_len, std::vector<SparseVector> doc_vectors);

private:
    void rebuild_postings();

    Bm25Params params_;
    std::unordered_map<std::string, int32_t> vocab_;
    std::vector<std::string> terms_;
    std::vector<int64_t> df_;
    std::vector<double> doc_len_;
    double avg_doc_len_ = 0.0;
    std::vector<SparseVector> doc_vectors_;
    std::vector<std::vector<std::pair<int32_t, double>>> postings_;
};

// indices of the k highest scores, descending, ties by lower index first
std::vector<std::pair<int32_t, double>> top_k(const std::vector<double>& scores, size_t k);

}  // namespace swcu
