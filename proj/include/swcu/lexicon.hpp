#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swcu/text.hpp"
#include "swcu/types.hpp"

namespace swcu {

enum class Relation : int { Hypernym = 0, Hyponym = 1, Antonym = 2, Synonym = 3 };
constexpr int kNumRelations = 4;

// (part of speech, byte offset) packed into one key; pos in {n,v,a,r}
using SynsetId = uint64_t;
SynsetId make_synset_id(char pos, uint64_t offset);
char synset_pos(SynsetId id);
uint64_t synset_offset(SynsetId id);

struct LexiconStats {
    size_t lemmas = 0;
    size_t synsets = 0;
    size_t relation_edges = 0;
    size_t skipped_lines = 0;   // unparseable index/data lines
    size_t dropped_edges = 0;   // edges whose endpoint is not in the universe
    size_t dropped_lemma_refs = 0;
};

// WordNet-style lexicon: normalized multi-word lemmas -> synsets, plus typed
// relation edges between synsets. Immutable after finalize().
class Lexicon {
public:
    // Canonical lemma form: tokenize (splits on '_', '-', punctuation) and
    // rejoin with single spaces. Idempotent.
    static std::string normalize_lemma(std::string_view raw);

    void add_synset(SynsetId id, std::string head_word);
    bool add_lemma(std::string_view raw_lemma, SynsetId synset);  // false if synset unknown
    void add_relation(Relation rel, SynsetId from, SynsetId to);
    void finalize(LexiconStats* stats = nullptr);

    bool has_lemma(std::string_view normalized) const;
    const std::vector<SynsetId>* synsets_of(std::string_view normalized) const;
    bool has_synset(SynsetId id) const;
    const std::string* head_word(SynsetId id) const;
    const std::vector<SynsetId>* related(SynsetId id, Relation rel) const;

    int max_lemma_len() const { return max_lemma_len_; }
    size_t lemma_count() const { return lemma_index_.size(); }
    size_t synset_count() const { return synsets_.size(); }

private:
    struct Synset {
        std::string head;
        std::array<std::vector<SynsetId>, kNumRelations> rel;
    };
    std::unordered_map<std::string, std::vector<SynsetId>> lemma_index_;
    std::unordered_map<SynsetId, Synset> synsets_;
    std::vector<std::tuple<Relation, SynsetId, SynsetId>> pending_edges_;
    int max_lemma_len_ = 0;
    bool finalized_ = false;
};

// Parses WordNet 3.x database files (index.<pos> / data.<pos>). At least one
// part-of-speech pair must be present; a pair with one file missing is fatal.
Lexicon load_lexicon(const std::filesystem::path& wordnet_dir, LexiconStats* stats = nullptr);

// Suffix-stripping fallback (-s/-es/-ed/-ing plus e-restoration and consonant
// de-doubling) against the lemma index; returns the matched lemma.
std::optional<std::string> morph_lookup(std::string_view token, const Lexicon& lex);

// Greedy leftmost-longest maximal-span extraction over valid lemmas.
// Stopwords cannot begin a concept; unmatched non-stopword tokens fall back
// to morph_lookup. Pure function of (text, lexicon, stopwords).
ConceptSet extract_concepts(std::string_view text, const Lexicon& lex, const Stopwords& stop);

}  // namespace swcu
