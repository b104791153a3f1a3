#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swcu/lexicon.hpp"
#include "swcu/types.hpp"

namespace swcu {

struct IngestStats {
    size_t tables = 0;
    size_t facts = 0;
    size_t skipped_rows = 0;        // rows with no content cells
    size_t duplicate_fact_ids = 0;  // later rows with an already-seen uid
    size_t questions = 0;
    size_t excluded_questions = 0;  // unresolvable answer key / missing choices
    size_t dangling_gold_ids = 0;   // gold explanation ids absent from the FKB
    size_t synthesized_facts = 0;   // ARC mode
    size_t dropped_abstractive = 0; // ARC mode: corpus abstractive facts replaced
    size_t ekb_entries = 0;
};

// Tables are TSV with a header row. Columns whose header starts with [SKIP]
// are annotation/metadata and excluded from the sentence; a [SKIP] column
// whose header mentions UID provides the row identifier. [FILL] columns hold
// filler words that belong to the sentence.
FactsKB load_facts(const std::filesystem::path& table_dir, IngestStats& stats);

// Delimited question file (TSV, or CSV when the extension says so) with the
// choices embedded in the stem as (A)..(E) / (1)..(5) markers or given in
// per-choice columns.
std::vector<QuestionRecord> load_questions(const std::filesystem::path& question_file,
                                           Split split, IngestStats& stats);

// One hypothesis per choice, text = choice ++ " " ++ stem.
std::vector<Hypothesis> build_hypotheses(const QuestionRecord& q);

// One entry per train question, correct-choice hypothesis only; dangling
// gold ids dropped and counted.
ExplanationsKB build_explanations_kb(const std::vector<QuestionRecord>& train,
                                     const FactsKB& fkb, IngestStats& stats);

// ARC mode: synthesizes "x is a kind of y" / "y is a kind of x" /
// "x is the opposite of y" facts from the lexicon's relation edges, one per
// edge, deduplicated, with table tag WORDNET.
std::vector<Fact> wordnet_abstractive_facts(const ConceptSet& concepts, const Lexicon& lexicon);

}  // namespace swcu
