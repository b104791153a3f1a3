#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swcu/bm25.hpp"
#include "swcu/corpus.hpp"
#include "swcu/types.hpp"

namespace swcu {

// Versioned, self-contained KB snapshot: line-delimited JSON (header line,
// then fact / question / ekb / index records). Saving and re-loading
// round-trips byte-identically.
struct Snapshot {
    static constexpr int kVersion = 1;

    std::string mode = "worldtree";
    nlohmann::json config;  // semantic config echo
    std::string fingerprint;
    IngestStats stats;
    std::vector<std::string> stopwords;

    FactsKB fkb;
    std::vector<QuestionRecord> questions;
    ExplanationsKB ekb;
    std::optional<Bm25Index> fact_index;
    std::optional<Bm25Index> ekb_index;

    std::vector<QuestionRecord> questions_for(Split split) const;
};

void save_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot load_snapshot(const std::filesystem::path& path);

}  // namespace swcu
