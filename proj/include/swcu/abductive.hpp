#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "swcu/analogical.hpp"
#include "swcu/types.hpp"

namespace swcu {

// EXP(c_i): concepts reachable from hypothesis concept c_i through the
// candidate abstractive facts mentioning it, plus c_i itself (self-inclusion
// makes the one-hop |ABS|=0 case fall out of the same membership check).
struct ExpansionSets {
    std::vector<std::pair<std::string, ConceptSet>> sets;  // sorted by concept
    const ConceptSet* find(std::string_view cpt) const;
};

ExpansionSets expansion_sets(const ConceptSet& hypothesis_concepts,
                             const std::vector<ScoredFact>& cabs, const FactsKB& fkb);

struct ExplanationCandidate {
    FactIdx unification = -1;
    std::vector<FactIdx> abstractive;  // sorted by fact id
    ConceptSet covered;                // hypothesis concepts with EXP(c)∩CP(u) ≠ {}
    double relevance = 0.0;            // rs(h,u), carried for reporting
    double unification_power = 0.0;    // us(h,u), carried for reporting
    double analogical = 0.0;           // as(h,u)
    double plausibility = 0.0;         // ps(h,u) = |covered| / |CP(h)|
    double explanatory = 0.0;          // es(h,u), filled by score_explanations
};

// One candidate per unification fact whose CP intersects some expansion set;
// attaches every pool abstractive fact conceptually connected to both the
// hypothesis and the unification. Unification facts failing the check are
// discarded. Plausibility is filled here; explanatory is not.
std::vector<ExplanationCandidate> construct_explanations(const ConceptSet& hypothesis_concepts,
                                                         const CandidatePools& pools,
                                                         const FactsKB& fkb,
                                                         const ExpansionSets& expansions);

// |covered| / |CP(h)|; 0 when the hypothesis has no concepts (degenerate)
double plausibility_score(size_t covered, size_t hypothesis_concepts, bool* degenerate = nullptr);

// es = λ1·as + λ2·ps, negative lambdas rejected
double explanatory_score(double analogical, double plausibility, double lambda1, double lambda2);

// fills explanatory scores and sorts by (es desc, unification fact id asc)
void score_explanations(std::vector<ExplanationCandidate>& candidates, const FactsKB& fkb,
                        double lambda1, double lambda2, bool plausibility_enabled);

// hs = sum of the K largest explanatory scores (candidates need not be sorted)
double hypothesis_score(const std::vector<ExplanationCandidate>& candidates, size_t top_k);

struct ScoredAnswer {
    std::string question_id;
    std::string chosen_label;
    bool fallback = false;  // no hypothesis produced any candidate
    std::vector<std::pair<std::string, double>> hypothesis_scores;    // choice order
    std::vector<std::vector<ExplanationCandidate>> top_explanations;  // per choice, top K
};

// §2.1 structural constraints plus score sanity; returns human-readable
// violations (empty = sound)
std::vector<std::string> validate_candidate(const ConceptSet& hypothesis_concepts,
                                            const ExplanationCandidate& cand, const FactsKB& fkb,
                                            double lambda1, double lambda2);

}  // namespace swcu
