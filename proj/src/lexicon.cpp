#include "swcu/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "swcu/error.hpp"

namespace swcu {

namespace {

int pos_index(char pos) {
    switch (pos) {
        case 'n': return 0;
        case 'v': return 1;
        case 'a': case 's': return 2;  // satellites live in the adj files
        case 'r': return 3;
        default: return -1;
    }
}

constexpr char kPosLetters[4] = {'n', 'v', 'a', 'r'};

int count_tokens(std::string_view lemma) {
    int n = 0;
    for (size_t i = 0; i < lemma.size(); ++i)
        if (lemma[i] == ' ') ++n;
    return lemma.empty() ? 0 : n + 1;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) { out.push_back(std::move(cur)); cur.clear(); }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

bool parse_u64(const std::string& s, int base, uint64_t& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
    return ec == std::errc{} && p == s.data() + s.size();
}

// data-file words may carry syntactic markers, e.g. "galore(ip)"
std::string strip_marker(std::string word) {
    auto p = word.find('(');
    if (p != std::string::npos) word.resize(p);
    return word;
}

}  // namespace

SynsetId make_synset_id(char pos, uint64_t offset) {
    int idx = pos_index(pos);
    if (idx < 0) throw IngestError(std::string("bad part of speech: ") + pos);
    return (offset << 2) | static_cast<uint64_t>(idx);
}

char synset_pos(SynsetId id) { return kPosLetters[id & 3]; }
uint64_t synset_offset(SynsetId id) { return id >> 2; }

std::string Lexicon::normalize_lemma(std::string_view raw) {
    return join(tokenize(raw), " ");
}

void Lexicon::add_synset(SynsetId id, std::string head_word) {
    auto& s = synsets_[id];
    if (s.head.empty()) s.head = std::move(head_word);
}

bool Lexicon::add_lemma(std::string_view raw_lemma, SynsetId synset) {
    if (!synsets_.count(synset)) return false;
    std::string key = normalize_lemma(raw_lemma);
    if (key.empty()) return false;
    lemma_index_[key].push_back(synset);
    max_lemma_len_ = std::max(max_lemma_len_, count_tokens(key));
    return true;
}

void Lexicon::add_relation(Relation rel, SynsetId from, SynsetId to) {
    pending_edges_.emplace_back(rel, from, to);
}

void Lexicon::finalize(LexiconStats* stats) {
    size_t dropped = 0, kept = 0;
    for (const auto& [rel, from, to] : pending_edges_) {
        auto it = synsets_.find(from);
        if (it == synsets_.end() || !synsets_.count(to)) { ++dropped; continue; }
        it->second.rel[static_cast<int>(rel)].push_back(to);
        ++kept;
    }
    pending_edges_.clear();
    pending_edges_.shrink_to_fit();
    for (auto& [id, s] : synsets_) {
        (void)id;
        for (auto& v : s.rel) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }
    for (auto& [lemma, v] : lemma_index_) {
        (void)lemma;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    finalized_ = true;
    if (stats) {
        stats->lemmas = lemma_index_.size();
        stats->synsets = synsets_.size();
        stats->relation_edges = kept;
        stats->dropped_edges += dropped;
    }
}

bool Lexicon::has_lemma(std::string_view normalized) const {
    return lemma_index_.count(std::string(normalized)) > 0;
}

const std::vector<SynsetId>* Lexicon::synsets_of(std::string_view normalized) const {
    auto it = lemma_index_.find(std::string(normalized));
    return it == lemma_index_.end() ? nullptr : &it->second;
}

bool Lexicon::has_synset(SynsetId id) const { return synsets_.count(id) > 0; }

const std::string* Lexicon::head_word(SynsetId id) const {
    auto it = synsets_.find(id);
    return it == synsets_.end() ? nullptr : &it->second.head;
}

const std::vector<SynsetId>* Lexicon::related(SynsetId id, Relation rel) const {
    auto it = synsets_.find(id);
    return it == synsets_.end() ? nullptr : &it->second.rel[static_cast<int>(rel)];
}

namespace {

std::optional<Relation> relation_of(const std::string& symbol) {
    if (symbol == "@" || symbol == "@i") return Relation::Hypernym;
    if (symbol == "~" || symbol == "~i") return Relation::Hyponym;
    if (symbol == "!") return Relation::Antonym;
    if (symbol == "&" || symbol == "$") return Relation::Synonym;
    return std::nullopt;
}

void parse_data_file(const std::filesystem::path& file, char pos, Lexicon& lex,
                     LexiconStats& stats) {
    std::ifstream in(file);
    if (!in) throw IngestError("cannot open WordNet file: " + file.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == ' ') continue;  // license header
        auto bar = line.find('|');
        auto fields = split_fields(std::string_view(line).substr(0, bar));
        if (fields.size() < 6) { ++stats.skipped_lines; continue; }
        uint64_t offset = 0, w_cnt = 0;
        if (!parse_u64(fields[0], 10, offset) || !parse_u64(fields[3], 16, w_cnt) ||
            w_cnt == 0 || fields.size() < 4 + 2 * w_cnt + 1) {
            ++stats.skipped_lines;
            continue;
        }
        SynsetId id = make_synset_id(pos, offset);
        lex.add_synset(id, Lexicon::normalize_lemma(strip_marker(fields[4])));
        // words also register as lemmas of this synset; the index files cover
        // them too, but fixture dictionaries may ship data files alone
        for (uint64_t w = 0; w < w_cnt; ++w)
            lex.add_lemma(strip_marker(fields[4 + 2 * w]), id);

        size_t p_at = 4 + 2 * w_cnt;
        uint64_t p_cnt = 0;
        if (!parse_u64(fields[p_at], 10, p_cnt) ||
            fields.size() < p_at + 1 + 4 * p_cnt) {
            ++stats.skipped_lines;
            continue;
        }
        for (uint64_t p = 0; p < p_cnt; ++p) {
            const auto base = p_at + 1 + 4 * p;
            auto rel = relation_of(fields[base]);
            if (!rel) continue;
            uint64_t to_offset = 0;
            if (!parse_u64(fields[base + 1], 10, to_offset) || fields[base + 2].empty()) {
                ++stats.skipped_lines;
                break;
            }
            lex.add_relation(*rel, id, make_synset_id(fields[base + 2][0], to_offset));
        }
    }
}

void parse_index_file(const std::filesystem::path& file, char pos, Lexicon& lex,
                      LexiconStats& stats) {
    std::ifstream in(file);
    if (!in) throw IngestError("cannot open WordNet file: " + file.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == ' ') continue;
        auto fields = split_fields(line);
        if (fields.size() < 6) { ++stats.skipped_lines; continue; }
        uint64_t synset_cnt = 0, p_cnt = 0;
        if (!parse_u64(fields[2], 10, synset_cnt) || !parse_u64(fields[3], 10, p_cnt)) {
            ++stats.skipped_lines;
            continue;
        }
        size_t offsets_at = 4 + p_cnt + 2;  // past ptr symbols, sense_cnt, tagsense_cnt
        if (synset_cnt == 0 || fields.size() < offsets_at + synset_cnt) {
            ++stats.skipped_lines;
            continue;
        }
        for (uint64_t k = 0; k < synset_cnt; ++k) {
            uint64_t offset = 0;
            if (!parse_u64(fields[offsets_at + k], 10, offset)) { ++stats.skipped_lines; break; }
            if (!lex.add_lemma(fields[0], make_synset_id(pos, offset)))
                ++stats.dropped_lemma_refs;
        }
    }
}

}  // namespace

Lexicon load_lexicon(const std::filesystem::path& wordnet_dir, LexiconStats* stats) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(wordnet_dir))
        throw IngestError("WordNet directory not found: " + wordnet_dir.string());

    struct PosFiles { char pos; const char* index; const char* data; };
    static constexpr PosFiles kFiles[] = {
        {'n', "index.noun", "data.noun"},
        {'v', "index.verb", "data.verb"},
        {'a', "index.adj", "data.adj"},
        {'r', "index.adv", "data.adv"},
    };

    Lexicon lex;
    LexiconStats local;
    LexiconStats& st = stats ? *stats : local;
    int pairs_loaded = 0;
    for (const auto& pf : kFiles) {
        fs::path index_file = wordnet_dir / pf.index;
        fs::path data_file = wordnet_dir / pf.data;
        const bool has_index = fs::exists(index_file);
        const bool has_data = fs::exists(data_file);
        if (!has_index && !has_data) continue;
        if (!has_data) throw IngestError("missing WordNet file: " + data_file.string());
        if (!has_index) throw IngestError("missing WordNet file: " + index_file.string());
        parse_data_file(data_file, pf.pos, lex, st);
        parse_index_file(index_file, pf.pos, lex, st);
        ++pairs_loaded;
    }
    if (pairs_loaded == 0)
        throw IngestError("no WordNet database files found in " + wordnet_dir.string());
    lex.finalize(&st);
    return lex;
}

std::optional<std::string> morph_lookup(std::string_view token, const Lexicon& lex) {
    const std::string t(token);
    const size_t n = t.size();
    auto ends = [&](std::string_view suf) {
        return n >= suf.size() && t.compare(n - suf.size(), suf.size(), suf) == 0;
    };
    std::vector<std::string> candidates;
    auto undoubled = [](const std::string& stem) -> std::optional<std::string> {
        size_t m = stem.size();
        if (m >= 3 && stem[m - 1] == stem[m - 2]) return stem.substr(0, m - 1);
        return std::nullopt;
    };

    if (n >= 5 && (ends("ses") || ends("xes") || ends("zes"))) candidates.push_back(t.substr(0, n - 2));
    if (n >= 6 && (ends("ches") || ends("shes"))) candidates.push_back(t.substr(0, n - 2));
    if (n >= 5 && ends("ies")) candidates.push_back(t.substr(0, n - 3) + "y");
    if (n >= 4 && ends("es")) candidates.push_back(t.substr(0, n - 2));
    if (n >= 3 && ends("s") && !ends("ss")) candidates.push_back(t.substr(0, n - 1));
    if (n >= 5 && ends("ied")) candidates.push_back(t.substr(0, n - 3) + "y");
    if (n >= 4 && ends("ed")) {
        std::string stem = t.substr(0, n - 2);
        candidates.push_back(stem);
        candidates.push_back(stem + "e");
        if (auto u = undoubled(stem)) candidates.push_back(*u);
    }
    if (n >= 5 && ends("ing")) {
        std::string stem = t.substr(0, n - 3);
        candidates.push_back(stem);
        candidates.push_back(stem + "e");
        if (auto u = undoubled(stem)) candidates.push_back(*u);
    }
    for (const auto& c : candidates)
        if (c.size() >= 2 && lex.has_lemma(c)) return c;
    return std::nullopt;
}

ConceptSet extract_concepts(std::string_view text, const Lexicon& lex, const Stopwords& stop) {
    const auto tokens = tokenize(text);
    const size_t n = tokens.size();
    ConceptSet out;
    size_t i = 0;
    while (i < n) {
        if (stop.contains(tokens[i])) { ++i; continue; }
        const size_t max_len = std::min<size_t>(static_cast<size_t>(lex.max_lemma_len()), n - i);
        size_t matched = 0;
        std::string window;
        for (size_t len = max_len; len >= 1 && !matched; --len) {
            window = tokens[i];
            for (size_t k = 1; k < len; ++k) {
                window += ' ';
                window += tokens[i + k];
            }
            if (lex.has_lemma(window)) {
                out.insert(window);
                matched = len;
            }
        }
        if (matched) {
            i += matched;
        } else {
            if (auto lemma = morph_lookup(tokens[i], lex)) out.insert(std::move(*lemma));
            ++i;
        }
    }
    return out;
}

}  // namespace swcu
