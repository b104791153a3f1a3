#include "swcu/analogical.hpp"

#include <algorithm>

#include "swcu/error.hpp"

namespace swcu {

AnalogicalScore analogical_score(double relevance, double unification, double lambda1,
                                 double lambda2) {
    if (lambda1 < 0.0 || lambda2 < 0.0)
        throw ConfigError("analogical score lambdas must be non-negative");
    AnalogicalScore s;
    s.relevance = relevance;
    s.unification = unification;
    s.lambda1 = lambda1;
    s.lambda2 = lambda2;
    s.combined = lambda1 * relevance + lambda2 * unification;
    return s;
}

std::vector<std::pair<int32_t, double>> knn_hypotheses(const SparseVector& query,
                                                       const Bm25Index& ekb_index, size_t k) {
    return top_k(ekb_index.cosine_all(query), k);
}

double unification_score(FactIdx fact, const std::vector<std::pair<int32_t, double>>& neighbours,
                         const ExplanationsKB& ekb) {
    double acc = 0.0;
    for (const auto& [entry, sim] : neighbours) {
        if (sim == 0.0) continue;
        const auto& gold = ekb.entries[static_cast<size_t>(entry)].gold;
        if (std::binary_search(gold.begin(), gold.end(), fact)) acc += sim;
    }
    return acc;
}

std::vector<double> unification_scores(const std::vector<std::pair<int32_t, double>>& neighbours,
                                       const ExplanationsKB& ekb, size_t num_facts) {
    std::vector<double> us(num_facts, 0.0);
    for (const auto& [entry, sim] : neighbours) {
        if (sim == 0.0) continue;
        for (FactIdx f : ekb.entries[static_cast<size_t>(entry)].gold)
            us[static_cast<size_t>(f)] += sim;
    }
    return us;
}

CandidatePools candidate_pools(const std::vector<double>& relevance,
                               const std::vector<double>& unification, const FactsKB& fkb,
                               const PoolParams& params) {
    if (params.lambda1 < 0.0 || params.lambda2 < 0.0)
        throw ConfigError("pool lambdas must be non-negative");
    struct Ranked {
        FactIdx fact;
        double retrieval;
        AnalogicalScore score;
    };
    std::vector<Ranked> abs_pool, unf_pool;
    const size_t n = fkb.size();
    for (size_t i = 0; i < n; ++i) {
        const double rs = relevance[i];
        const double us = params.us_enabled ? unification[i] : 0.0;
        const double retrieval = params.lambda1 * rs + params.lambda2 * us;
        if (retrieval <= 0.0) continue;
        AnalogicalScore score = analogical_score(rs, us, params.rs_scored ? params.lambda1 : 0.0,
                                                 params.lambda2);
        Ranked r{static_cast<FactIdx>(i), retrieval, score};
        if (fkb.at(r.fact).role == Role::Abstractive) {
            if (params.n_abs > 0) abs_pool.push_back(std::move(r));
        } else {
            if (params.n_unf > 0) unf_pool.push_back(std::move(r));
        }
    }
    auto shrink = [&](std::vector<Ranked>& pool, size_t cap) {
        auto better = [&](const Ranked& a, const Ranked& b) {
            if (a.retrieval != b.retrieval) return a.retrieval > b.retrieval;
            return fkb.at(a.fact).id < fkb.at(b.fact).id;
        };
        if (pool.size() > cap) {
            std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(cap),
                              pool.end(), better);
            pool.resize(cap);
        } else {
            std::sort(pool.begin(), pool.end(), better);
        }
    };
    shrink(abs_pool, params.n_abs);
    shrink(unf_pool, params.n_unf);

    CandidatePools out;
    out.cabs.reserve(abs_pool.size());
    out.cunf.reserve(unf_pool.size());
    for (auto& r : abs_pool) out.cabs.push_back({r.fact, r.score});
    for (auto& r : unf_pool) out.cunf.push_back({r.fact, r.score});
    return out;
}

}  // namespace swcu
