#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swcu/pipeline.hpp"
#include "swcu/types.hpp"

namespace swcu {

struct AccuracyReport {
    double overall = 0, easy = 0, challenge = 0, at2 = 0;  // percentages
    size_t n = 0, n_easy = 0, n_challenge = 0;
    size_t correct = 0, correct_easy = 0, correct_challenge = 0, correct_at2 = 0;
    size_t fallback_count = 0;
};

// @2 counts the gold choice among the two highest-scoring hypotheses
// (ties by choice order). Fatal on any answer/question id mismatch.
AccuracyReport accuracy(const std::vector<ScoredAnswer>& answers,
                        const std::vector<QuestionRecord>& questions);

struct ExplanationMetrics {
    double precision = 0, recall = 0, f1 = 0;              // full predicted set
    double precision_unf = 0, recall_unf = 0, f1_unf = 0;  // unifications only
    double unification_accuracy = 0;  // top unification in the gold set
    size_t questions = 0;
    size_t excluded_empty_gold = 0;
    bool macro = false;
};

// Predicted set per question: top-K unifications of the chosen hypothesis
// plus their attached abstractive facts, compared against gold explanation
// ids. Micro-averaged by default.
ExplanationMetrics explanation_metrics(const std::vector<ScoredAnswer>& answers,
                                       const std::vector<QuestionRecord>& questions,
                                       const FactsKB& fkb, bool macro = false);

struct PredictionBreakdown {
    ExplanationMetrics correct, wrong;
    size_t n_correct = 0, n_wrong = 0;
};

PredictionBreakdown breakdown_by_correctness(const std::vector<ScoredAnswer>& answers,
                                             const std::vector<QuestionRecord>& questions,
                                             const FactsKB& fkb, bool macro = false);

struct BucketRow {
    std::string label;
    size_t count = 0;
    double accuracy_us = 0;
    double accuracy_no_us = 0;
};

struct ErrorBuckets {
    std::vector<BucketRow> overlap;        // mean pairwise Jaccard of choice concepts, 20% bands
    std::vector<BucketRow> stem_concepts;  // |CP(stem)| bands: <=5, (5,10], >10
};

// answers_us / answers_no_us: full runs with and without the unification
// score, over the same question list
ErrorBuckets error_buckets(const std::vector<ScoredAnswer>& answers_us,
                           const std::vector<ScoredAnswer>& answers_no_us,
                           const std::vector<QuestionRecord>& questions);

double mean_choice_overlap_percent(const QuestionRecord& q);

struct EvalReport {
    std::string split;
    nlohmann::json config;
    std::string config_fingerprint;
    AccuracyReport answer_accuracy;
    std::optional<ExplanationMetrics> explanation;
    std::optional<PredictionBreakdown> breakdown;
    std::optional<ErrorBuckets> buckets;

    nlohmann::json to_json() const;
    std::string pretty() const;
};

enum class AblationPreset { Ps, AbsPs, AbsPsRs, Full };
AblationPreset preset_from_string(std::string_view name);
std::string_view to_string(AblationPreset p);
PipelineConfig apply_preset(PipelineConfig base, AblationPreset p);

}  // namespace swcu
