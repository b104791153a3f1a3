#include "swcu/abductive.hpp"

#include <algorithm>
#include <cmath>

#include "swcu/error.hpp"

namespace swcu {

const ConceptSet* ExpansionSets::find(std::string_view cpt) const {
    auto it = std::lower_bound(sets.begin(), sets.end(), cpt,
                               [](const auto& entry, std::string_view c) { return entry.first < c; });
    if (it == sets.end() || it->first != cpt) return nullptr;
    return &it->second;
}

ExpansionSets expansion_sets(const ConceptSet& hypothesis_concepts,
                             const std::vector<ScoredFact>& cabs, const FactsKB& fkb) {
    ExpansionSets out;
    out.sets.reserve(hypothesis_concepts.size());
    for (const auto& cpt : hypothesis_concepts) {
        ConceptSet expanded;
        expanded.insert(cpt);
        for (const auto& sf : cabs) {
            const Fact& a = fkb.at(sf.fact);
            if (a.concepts.contains(cpt)) expanded.merge(a.concepts);
        }
        out.sets.emplace_back(cpt, std::move(expanded));
    }
    return out;
}

std::vector<ExplanationCandidate> construct_explanations(const ConceptSet& hypothesis_concepts,
                                                         const CandidatePools& pools,
                                                         const FactsKB& fkb,
                                                         const ExpansionSets& expansions) {
    std::vector<ExplanationCandidate> out;
    if (hypothesis_concepts.empty()) return out;

    for (const auto& su : pools.cunf) {
        const Fact& u = fkb.at(su.fact);
        ConceptSet covered;
        for (const auto& [cpt, expanded] : expansions.sets)
            if (expanded.intersects(u.concepts)) covered.insert(cpt);
        if (covered.empty()) continue;  // unification fact discarded

        ExplanationCandidate cand;
        cand.unification = su.fact;
        cand.relevance = su.score.relevance;
        cand.unification_power = su.score.unification;
        cand.analogical = su.score.combined;
        for (const auto& sa : pools.cabs) {
            const Fact& a = fkb.at(sa.fact);
            if (conceptually_connected(a.concepts, hypothesis_concepts) &&
                conceptually_connected(a.concepts, u.concepts))
                cand.abstractive.push_back(sa.fact);
        }
        std::sort(cand.abstractive.begin(), cand.abstractive.end(),
                  [&](FactIdx x, FactIdx y) { return fkb.at(x).id < fkb.at(y).id; });
        cand.plausibility = plausibility_score(covered.size(), hypothesis_concepts.size());
        cand.covered = std::move(covered);
        out.push_back(std::move(cand));
    }
    return out;
}

double plausibility_score(size_t covered, size_t hypothesis_concepts, bool* degenerate) {
    if (degenerate) *degenerate = hypothesis_concepts == 0;
    if (hypothesis_concepts == 0) return 0.0;
    return static_cast<double>(covered) / static_cast<double>(hypothesis_concepts);
}

double explanatory_score(double analogical, double plausibility, double lambda1, double lambda2) {
    if (lambda1 < 0.0 || lambda2 < 0.0)
        throw ConfigError("explanatory score lambdas must be non-negative");
    return lambda1 * analogical + lambda2 * plausibility;
}

void score_explanations(std::vector<ExplanationCandidate>& candidates, const FactsKB& fkb,
                        double lambda1, double lambda2, bool plausibility_enabled) {
    const double l2 = plausibility_enabled ? lambda2 : 0.0;
    for (auto& c : candidates)
        c.explanatory = explanatory_score(c.analogical, c.plausibility, lambda1, l2);
    std::sort(candidates.begin(), candidates.end(),
              [&](const ExplanationCandidate& a, const ExplanationCandidate& b) {
                  if (a.explanatory != b.explanatory) return a.explanatory > b.explanatory;
                  return fkb.at(a.unification).id < fkb.at(b.unification).id;
              });
}

double hypothesis_score(const std::vector<ExplanationCandidate>& candidates, size_t top_k) {
    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (const auto& c : candidates) scores.push_back(c.explanatory);
    std::sort(scores.begin(), scores.end(), std::greater<>());
    double total = 0.0;
    for (size_t i = 0; i < scores.size() && i < top_k; ++i) total += scores[i];
    return total;
}

std::vector<std::string> validate_candidate(const ConceptSet& hypothesis_concepts,
                                            const ExplanationCandidate& cand, const FactsKB& fkb,
                                            double lambda1, double lambda2) {
    std::vector<std::string> violations;
    if (cand.unification < 0) {
        violations.push_back("missing unification fact");
        return violations;
    }
    const Fact& u = fkb.at(cand.unification);
    if (u.role != Role::Unification)
        violations.push_back("unification slot holds an abstractive fact: " + u.id);
    for (FactIdx ai : cand.abstractive) {
        const Fact& a = fkb.at(ai);
        if (a.role != Role::Abstractive)
            violations.push_back("abstractive slot holds a unification fact: " + a.id);
        if (!conceptually_connected(a.concepts, hypothesis_concepts))
            violations.push_back("abstractive fact not connected to hypothesis: " + a.id);
        if (!conceptually_connected(a.concepts, u.concepts))
            violations.push_back("abstractive fact not connected to unification: " + a.id);
    }
    if (cand.abstractive.empty() && !conceptually_connected(u.concepts, hypothesis_concepts))
        violations.push_back("empty abstraction but unification not connected to hypothesis: " +
                             u.id);
    for (const auto& c : cand.covered)
        if (!hypothesis_concepts.contains(c))
            violations.push_back("covered concept outside the hypothesis: " + c);
    if (cand.plausibility < 0.0 || cand.plausibility > 1.0)
        violations.push_back("plausibility out of range");
    const double expected = lambda1 * cand.analogical + lambda2 * cand.plausibility;
    if (std::abs(cand.explanatory - expected) > 1e-12)
        violations.push_back("explanatory score does not decompose");
    return violations;
}

}  // namespace swcu
