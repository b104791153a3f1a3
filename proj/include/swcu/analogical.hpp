#pragma once

#include <cstdint>
#include <vector>

#include "swcu/bm25.hpp"
#include "swcu/types.hpp"

namespace swcu {

// as(h,f) = λ1·rs(h,f) + λ2·us(h,f)
struct AnalogicalScore {
    double relevance = 0.0;    // rs
    double unification = 0.0;  // us
    double combined = 0.0;     // as
    double lambda1 = 1.0;
    double lambda2 = 1.0;
};

// negative lambdas rejected
AnalogicalScore analogical_score(double relevance, double unification, double lambda1,
                                 double lambda2);

struct ScoredFact {
    FactIdx fact = -1;
    AnalogicalScore score;
};

// role-pure pools, sorted by retrieval score descending, ties by fact id
struct CandidatePools {
    std::vector<ScoredFact> cabs;
    std::vector<ScoredFact> cunf;
};

// top-k EKB entries by cosine similarity; ties broken by entry order; zero
// similarities included so that k == |EKB| yields a full permutation
std::vector<std::pair<int32_t, double>> knn_hypotheses(const SparseVector& query,
                                                       const Bm25Index& ekb_index, size_t k);

// us(h,f) = Σ_z sim(h,h_z) · in(f, E_z) over the retrieved neighbourhood
double unification_score(FactIdx fact, const std::vector<std::pair<int32_t, double>>& neighbours,
                         const ExplanationsKB& ekb);
std::vector<double> unification_scores(const std::vector<std::pair<int32_t, double>>& neighbours,
                                       const ExplanationsKB& ekb, size_t num_facts);

struct PoolParams {
    size_t n_abs = 200;
    size_t n_unf = 200;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    // Ablation gates. BM25 relevance always drives pool *retrieval* (the IR
    // component is constitutive); rs_scored only controls whether λ1·rs
    // enters the analogical score handed to the explanatory stage.
    bool rs_scored = true;
    bool us_enabled = true;
};

// Scores every fact and keeps the top n per role; facts whose retrieval
// score is 0 are excluded even if a pool stays underfilled.
CandidatePools candidate_pools(const std::vector<double>& relevance,
                               const std::vector<double>& unification, const FactsKB& fkb,
                               const PoolParams& params);

}  // namespace swcu
