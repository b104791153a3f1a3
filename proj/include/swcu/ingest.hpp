#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "swcu/snapshot.hpp"

namespace swcu {

struct IngestOptions {
    std::filesystem::path tables_dir;
    std::filesystem::path questions_dir;
    std::filesystem::path wordnet_dir;
    std::filesystem::path stopwords_path;
    bool arc_mode = false;
    // warn-only validation against the expected release (train/dev/test);
    // zeros disable the check
    std::array<size_t, 3> expected_split_sizes{1190, 264, 1247};
};

// Full corpus ingestion: tables -> FKB, question files (names containing
// train/dev/test) -> records, WordNet lexicon -> concept annotation on every
// fact, stem, choice and hypothesis, EKB from the train split. In ARC mode
// the corpus abstractive facts are replaced by WordNet-synthesized ones
// covering the question concepts.
Snapshot ingest(const IngestOptions& opts, std::vector<std::string>* warnings = nullptr);

}  // namespace swcu
