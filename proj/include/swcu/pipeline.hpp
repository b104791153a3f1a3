#pragma once

#include <optional>
#include <vector>

#include "swcu/abductive.hpp"
#include "swcu/analogical.hpp"
#include "swcu/bm25.hpp"
#include "swcu/corpus.hpp"
#include "swcu/types.hpp"

namespace swcu {

struct PipelineConfig {
    size_t k_neighbours = 100;       // kNN size over the EKB
    size_t n_abs = 200;              // candidate abstractive pool
    size_t n_unf = 200;              // candidate unification pool
    size_t top_k_unifications = 2;   // K in the hypothesis score
    double lambda1_analogical = 1.0;
    double lambda2_analogical = 1.0;
    double lambda1_explanatory = 1.0;
    double lambda2_explanatory = 1.0;
    Bm25Params bm25;

    // ablation gates (all on = full model)
    bool abstraction = true;   // ABS: expansion + attachment step
    bool plausibility = true;  // PS term of the explanatory score
    bool relevance = true;     // RS term of the analogical score
    bool unification = true;   // US term (requires the EKB)

    bool validate = false;  // structural checks on every emitted candidate

    void check() const;  // throws ConfigError
};

struct HypothesisEvaluation {
    Hypothesis hypothesis;
    CandidatePools pools;
    std::vector<ExplanationCandidate> candidates;  // sorted by es desc, fact id asc
    double score = 0.0;
    bool degenerate = false;  // hypothesis without concepts
};

// Immutable after construction; all scoring entry points are const and
// safe to call from any number of threads.
class Engine {
public:
    Engine(const FactsKB& fkb, const ExplanationsKB& ekb, PipelineConfig cfg);
    Engine(const FactsKB& fkb, const ExplanationsKB& ekb, PipelineConfig cfg,
           Bm25Index fact_index, std::optional<Bm25Index> ekb_index);

    const PipelineConfig& config() const { return cfg_; }
    const FactsKB& fkb() const { return fkb_; }
    const ExplanationsKB& ekb() const { return ekb_; }
    const Bm25Index& fact_index() const { return fact_index_; }
    const std::optional<Bm25Index>& ekb_index() const { return ekb_index_; }

    HypothesisEvaluation evaluate_hypothesis(const Hypothesis& h) const;
    ScoredAnswer answer(const QuestionRecord& q) const;
    // deterministic regardless of the worker count
    std::vector<ScoredAnswer> answer_all(const std::vector<QuestionRecord>& questions,
                                         int workers) const;

    static Bm25Index build_fact_index(const FactsKB& fkb, Bm25Params params);
    static std::optional<Bm25Index> build_ekb_index(const ExplanationsKB& ekb, Bm25Params params);

private:
    const FactsKB& fkb_;
    const ExplanationsKB& ekb_;
    PipelineConfig cfg_;
    Bm25Index fact_index_;
    std::optional<Bm25Index> ekb_index_;
};

}  // namespace swcu
