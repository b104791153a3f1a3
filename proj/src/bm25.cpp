#include "swcu/bm25.hpp"

#include <algorithm>
#include <cmath>

#include "swcu/error.hpp"
#include "swcu/text.hpp"

namespace swcu {

double dot(const SparseVector& u, const SparseVector& v) {
    double acc = 0.0;
    auto a = u.entries.begin();
    auto b = v.entries.begin();
    while (a != u.entries.end() && b != v.entries.end()) {
        if (a->first == b->first) { acc += a->second * b->second; ++a; ++b; }
        else if (a->first < b->first) ++a;
        else ++b;
    }
    return acc;
}

double cosine(const SparseVector& u, const SparseVector& v) {
    if (u.norm == 0.0 || v.norm == 0.0) return 0.0;
    return std::clamp(dot(u, v) / (u.norm * v.norm), 0.0, 1.0);
}

namespace {
double vector_norm(const std::vector<std::pair<int32_t, double>>& entries) {
    double acc = 0.0;
    for (const auto& [t, w] : entries) acc += w * w;
    return std::sqrt(acc);
}
}  // namespace

Bm25Index Bm25Index::build(const std::vector<std::string>& docs, Bm25Params params) {
    if (docs.empty()) throw Error("cannot build BM25 index over an empty corpus");
    Bm25Index idx;
    idx.params_ = params;

    std::vector<std::vector<std::pair<int32_t, int32_t>>> doc_tfs(docs.size());
    double total_len = 0.0;
    for (size_t d = 0; d < docs.size(); ++d) {
        auto tokens = tokenize(docs[d]);
        idx.doc_len_.push_back(static_cast<double>(tokens.size()));
        total_len += static_cast<double>(tokens.size());
        std::unordered_map<int32_t, int32_t> tf;
        for (const auto& tok : tokens) {
            auto [it, inserted] = idx.vocab_.try_emplace(tok, static_cast<int32_t>(idx.terms_.size()));
            if (inserted) {
                idx.terms_.push_back(tok);
                idx.df_.push_back(0);
            }
            ++tf[it->second];
        }
        auto& entries = doc_tfs[d];
        entries.assign(tf.begin(), tf.end());
        std::sort(entries.begin(), entries.end());
        for (const auto& [term, cnt] : entries) {
            (void)cnt;
            ++idx.df_[term];
        }
    }
    idx.avg_doc_len_ = total_len / static_cast<double>(docs.size());

    const double n = static_cast<double>(docs.size());
    const double k1 = params.k1, b = params.b;
    idx.doc_vectors_.resize(docs.size());
    for (size_t d = 0; d < docs.size(); ++d) {
        auto& vec = idx.doc_vectors_[d];
        const double len = idx.doc_len_[d];
        for (const auto& [term, cnt] : doc_tfs[d]) {
            const double df = static_cast<double>(idx.df_[term]);
            const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
            const double tf = static_cast<double>(cnt);
            const double w =
                idf * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * len / idx.avg_doc_len_));
            if (w > 0.0) vec.entries.emplace_back(term, w);
        }
        vec.norm = vector_norm(vec.entries);
    }
    idx.rebuild_postings();
    return idx;
}

void Bm25Index::rebuild_postings() {
    postings_.assign(terms_.size(), {});
    for (size_t d = 0; d < doc_vectors_.size(); ++d)
        for (const auto& [term, w] : doc_vectors_[d].entries)
            postings_[term].emplace_back(static_cast<int32_t>(d), w);
}

int64_t Bm25Index::doc_freq(std::string_view term) const {
    auto it = vocab_.find(std::string(term));
    return it == vocab_.end() ? 0 : df_[it->second];
}

double Bm25Index::idf(std::string_view term) const {
    auto it = vocab_.find(std::string(term));
    if (it == vocab_.end()) return 0.0;
    const double n = static_cast<double>(num_docs());
    const double df = static_cast<double>(df_[it->second]);
    return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

SparseVector Bm25Index::vectorize_query(std::string_view text) const {
    auto tokens = tokenize(text);
    std::unordered_map<int32_t, int32_t> tf;
    for (const auto& tok : tokens) {
        auto it = vocab_.find(tok);
        if (it != vocab_.end()) ++tf[it->second];
    }
    std::vector<std::pair<int32_t, int32_t>> sorted_tf(tf.begin(), tf.end());
    std::sort(sorted_tf.begin(), sorted_tf.end());

    SparseVector q;
    const double n = static_cast<double>(num_docs());
    const double k1 = params_.k1, b = params_.b;
    const double len = static_cast<double>(tokens.size());
    for (const auto& [term, cnt] : sorted_tf) {
        const double df = static_cast<double>(df_[term]);
        const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
        const double tf_d = static_cast<double>(cnt);
        const double w =
            idf * (tf_d * (k1 + 1.0)) / (tf_d + k1 * (1.0 - b + b * len / avg_doc_len_));
        if (w > 0.0) q.entries.emplace_back(term, w);
    }
    q.norm = vector_norm(q.entries);
    return q;
}

std::vector<double> Bm25Index::cosine_all(const SparseVector& query) const {
    std::vector<double> scores(num_docs(), 0.0);
    if (query.norm == 0.0) return scores;
    for (const auto& [term, qw] : query.entries)
        for (const auto& [doc, dw] : postings_[term])
            scores[doc] += qw * dw;
    for (size_t d = 0; d < scores.size(); ++d) {
        if (scores[d] == 0.0) continue;
        const double dn = doc_vectors_[d].norm;
        scores[d] = dn == 0.0 ? 0.0 : std::clamp(scores[d] / (query.norm * dn), 0.0, 1.0);
    }
    return scores;
}

Bm25Index Bm25Index::from_parts(Bm25Params params, std::vector<std::string> terms,
                                std::vector<int64_t> df, std::vector<double> doc_lens,
                                double avg_doc_len, std::vector<SparseVector> doc_vectors) {
    if (terms.size() != df.size())
        throw FormatError("BM25 index: term/df size mismatch");
    Bm25Index idx;
    idx.params_ = params;
    idx.terms_ = std::move(terms);
    idx.df_ = std::move(df);
    idx.doc_len_ = std::move(doc_lens);
    idx.avg_doc_len_ = avg_doc_len;
    idx.doc_vectors_ = std::move(doc_vectors);
    for (size_t i = 0; i < idx.terms_.size(); ++i)
        idx.vocab_.emplace(idx.terms_[i], static_cast<int32_t>(i));
    for (auto& v : idx.doc_vectors_) v.norm = vector_norm(v.entries);
    idx.rebuild_postings();
    return idx;
}

std::vector<std::pair<int32_t, double>> top_k(const std::vector<double>& scores, size_t k) {
    std::vector<int32_t> order(scores.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
    k = std::min(k, scores.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](int32_t a, int32_t b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });
    std::vector<std::pair<int32_t, double>> out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) out.emplace_back(order[i], scores[order[i]]);
    return out;
}

}  // namespace swcu
