#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "swcu/pipeline.hpp"

namespace swcu {

// Resolved run configuration. Precedence: defaults < config file < env
// (SWCU_*) < command-line flags; resolution is handled by the CLI layer.
struct Config {
    // paths
    std::string tables_dir;
    std::string questions_dir;
    std::string wordnet_dir;
    std::string stopwords_path = "data/stopwords.txt";
    std::string snapshot_path;

    std::string mode = "worldtree";  // or "arc"
    int workers = 1;

    PipelineConfig pipeline;

    // canonical serialization of the semantic fields (paths and worker count
    // excluded: they do not affect outputs)
    nlohmann::json semantic_json() const;
    std::string fingerprint() const;  // fnv1a-64 hex of semantic_json dump
};

// applies the semantic fields from a parsed json object
void apply_semantic_json(Config& cfg, const nlohmann::json& j);

std::string fnv1a64_hex(std::string_view data);

}  // namespace swcu
