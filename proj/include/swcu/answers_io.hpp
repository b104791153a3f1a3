#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swcu/pipeline.hpp"
#include "swcu/types.hpp"

namespace swcu {

// answers.jsonl: meta line followed by one record per question
struct AnswersFile {
    nlohmann::json config;  // semantic config echo of the producing run
    std::string fingerprint;
    std::string split;
    std::vector<ScoredAnswer> answers;
};

void save_answers(const std::filesystem::path& path, const AnswersFile& file, const FactsKB& fkb);
AnswersFile load_answers(const std::filesystem::path& path, const FactsKB& fkb);

// Evidence handoff: one plain-text file per question, top-K unification
// facts first (rank order), then the attached abstractive facts.
void write_evidence_files(const std::filesystem::path& dir,
                          const std::vector<ScoredAnswer>& answers, const FactsKB& fkb);

// pool + candidate dump for `explain --dump-pools`
nlohmann::json evaluation_to_json(const HypothesisEvaluation& ev, const FactsKB& fkb);

}  // namespace swcu
