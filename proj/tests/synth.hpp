#pragma once

// Deterministic synthetic corpus in the Worldtree file formats (tables,
// question files, WordNet dict). The generative story plants unification
// patterns: each question family is governed by one law fact that is reused
// across that family's gold explanations, bridged from concrete scenario
// words through KINDOF facts, with cross-family "trap" facts that lexically
// support the distractor answers. Test-only.

#include <cstdint>
#include <filesystem>

namespace synth {

struct Spec {
    size_t families = 12;
    size_t concretes_per_family = 6;
    size_t train_per_family = 5;
    size_t dev_per_family = 2;
    size_t test_per_family = 5;
    size_t filler_facts = 24;
    uint64_t seed = 20240901;
};

// Writes <root>/tables/*.tsv, <root>/questions/questions.{train,dev,test}.tsv
// and <root>/wordnet/{index.noun,data.noun}.
void write_corpus(const std::filesystem::path& root, const Spec& spec = {});

}  // namespace synth
