#include "swcu/config.hpp"

#include <nlohmann/json.hpp>

namespace swcu {

using nlohmann::json;

json Config::semantic_json() const {
    return json{
        {"mode", mode},
        {"k_neighbours", pipeline.k_neighbours},
        {"n_abs", pipeline.n_abs},
        {"n_unf", pipeline.n_unf},
        {"top_k_unifications", pipeline.top_k_unifications},
        {"lambda1_analogical", pipeline.lambda1_analogical},
        {"lambda2_analogical", pipeline.lambda2_analogical},
        {"lambda1_explanatory", pipeline.lambda1_explanatory},
        {"lambda2_explanatory", pipeline.lambda2_explanatory},
        {"bm25_k1", pipeline.bm25.k1},
        {"bm25_b", pipeline.bm25.b},
        {"abstraction", pipeline.abstraction},
        {"plausibility", pipeline.plausibility},
        {"relevance", pipeline.relevance},
        {"unification", pipeline.unification},
    };
}

std::string Config::fingerprint() const { return fnv1a64_hex(semantic_json().dump()); }

void apply_semantic_json(Config& cfg, const json& j) {
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("mode", cfg.mode);
    get("k_neighbours", cfg.pipeline.k_neighbours);
    get("n_abs", cfg.pipeline.n_abs);
    get("n_unf", cfg.pipeline.n_unf);
    get("top_k_unifications", cfg.pipeline.top_k_unifications);
    get("lambda1_analogical", cfg.pipeline.lambda1_analogical);
    get("lambda2_analogical", cfg.pipeline.lambda2_analogical);
    get("lambda1_explanatory", cfg.pipeline.lambda1_explanatory);
    get("lambda2_explanatory", cfg.pipeline.lambda2_explanatory);
    get("bm25_k1", cfg.pipeline.bm25.k1);
    get("bm25_b", cfg.pipeline.bm25.b);
    get("abstraction", cfg.pipeline.abstraction);
    get("plausibility", cfg.pipeline.plausibility);
    get("relevance", cfg.pipeline.relevance);
    get("unification", cfg.pipeline.unification);
}

std::string fnv1a64_hex(std::string_view data) {
    uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[hash & 0xf];
        hash >>= 4;
    }
    return out;
}

}  // namespace swcu
