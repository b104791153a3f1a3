#include "swcu/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "swcu/error.hpp"
#include "swcu/text.hpp"

namespace swcu {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_tsv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == '\t') { cells.push_back(std::move(cur)); cur.clear(); }
        else cur.push_back(c);
    }
    cells.push_back(std::move(cur));
    return cells;
}

// minimal RFC4180-style splitter for .csv question files
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur.push_back('"'); ++i; }
                else quoted = false;
            } else cur.push_back(c);
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else cur.push_back(c);
    }
    cells.push_back(std::move(cur));
    return cells;
}

std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

bool is_abstractive_table(const std::string& table) {
    std::string u = to_lower(table);
    return u == "kindof" || u == "synonymy" || u == "opposites";
}

bool starts_with_ci(const std::string& s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(s[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i]))) return false;
    return true;
}

// header key for column detection: lowercase alphanumerics only
std::string header_key(const std::string& h) {
    std::string out;
    for (unsigned char c : h)
        if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

}  // namespace

FactsKB load_facts(const fs::path& table_dir, IngestStats& stats) {
    if (!fs::is_directory(table_dir))
        throw IngestError("table directory not found: " + table_dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(table_dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = to_lower(entry.path().extension().string());
        if (ext == ".tsv" || ext == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    FactsKB kb;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw IngestError("cannot open table file: " + file.string());
        const std::string table = file.stem().string();
        const Role role = is_abstractive_table(table) ? Role::Abstractive : Role::Unification;

        std::string line;
        if (!std::getline(in, line)) continue;  // header-only or empty file
        auto headers = split_tsv(strip_cr(line));
        std::vector<bool> skip(headers.size(), false);
        int uid_col = -1;
        for (size_t i = 0; i < headers.size(); ++i) {
            std::string h = normalize_whitespace(headers[i]);
            if (starts_with_ci(h, "[skip]")) {
                skip[i] = true;
                if (uid_col < 0 && to_lower(h).find("uid") != std::string::npos)
                    uid_col = static_cast<int>(i);
            }
        }

        size_t row = 0;
        while (std::getline(in, line)) {
            ++row;
            line = strip_cr(line);
            if (line.empty()) continue;
            auto cells = split_tsv(line);
            std::string text;
            for (size_t i = 0; i < headers.size(); ++i) {
                if (skip[i] || i >= cells.size()) continue;
                if (cells[i].empty()) continue;
                if (!text.empty()) text.push_back(' ');
                text.append(cells[i]);
            }
            text = normalize_whitespace(text);
            if (text.empty()) { ++stats.skipped_rows; continue; }

            std::string id;
            if (uid_col >= 0 && static_cast<size_t>(uid_col) < cells.size())
                id = normalize_whitespace(cells[uid_col]);
            if (id.empty()) id = table + "#" + std::to_string(row);
            if (kb.find(id) >= 0) { ++stats.duplicate_fact_ids; continue; }

            kb.add(Fact{std::move(id), std::move(text), table, role, {}});
            ++stats.facts;
        }
        ++stats.tables;
    }
    if (kb.empty()) throw IngestError("no facts ingested from " + table_dir.string());
    return kb;
}

namespace {

struct Marker {
    size_t begin, end;
    std::string label;
    bool numeric;
};

std::vector<Marker> find_choice_markers(const std::string& s) {
    std::vector<Marker> out;
    for (size_t i = 0; i + 2 < s.size(); ++i) {
        if (s[i] != '(' || s[i + 2] != ')') continue;
        char c = s[i + 1];
        bool letter = (c >= 'A' && c <= 'E') || (c >= 'a' && c <= 'e');
        bool digit = c >= '1' && c <= '5';
        if (!letter && !digit) continue;
        char label = letter ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
        out.push_back({i, i + 3, std::string(1, label), digit});
    }
    if (out.empty()) return out;
    // keep markers of the same kind as the first one; mixed hits are noise
    bool numeric = out.front().numeric;
    std::vector<Marker> kept;
    for (auto& m : out)
        if (m.numeric == numeric) kept.push_back(std::move(m));
    return kept;
}

// explanation cell: whitespace-separated "UID|ROLE" entries; roles ignored
std::vector<std::string> tokenize_gold(const std::string& cell) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        auto bar = cur.find('|');
        std::string id = cur.substr(0, bar);
        if (!id.empty()) out.push_back(std::move(id));
        cur.clear();
    };
    for (char c : cell) {
        if (std::isspace(static_cast<unsigned char>(c))) flush();
        else cur.push_back(c);
    }
    flush();
    return out;
}

std::string resolve_answer_key(std::string key, const std::vector<Choice>& choices) {
    key = normalize_whitespace(key);
    // multiple annotated answers: keep the first
    for (char sep : {',', ';', ' '}) {
        auto p = key.find(sep);
        if (p != std::string::npos) key.resize(p);
    }
    if (key.empty()) return {};
    std::string upper = key;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const auto& c : choices)
        if (c.label == upper) return upper;
    // numeric key against letter labels (or vice versa): map by position
    if (key.size() == 1) {
        int pos = -1;
        if (key[0] >= '1' && key[0] <= '5') pos = key[0] - '1';
        else if (upper[0] >= 'A' && upper[0] <= 'E') pos = upper[0] - 'A';
        if (pos >= 0 && pos < static_cast<int>(choices.size())) return choices[pos].label;
    }
    // a key spelling out the full choice text
    for (const auto& c : choices)
        if (to_lower(c.text) == to_lower(key)) return c.label;
    return {};
}

}  // namespace

std::vector<QuestionRecord> load_questions(const fs::path& question_file, Split split,
                                           IngestStats& stats) {
    std::ifstream in(question_file);
    if (!in) throw IngestError("cannot open question file: " + question_file.string());
    const bool csv = to_lower(question_file.extension().string()) == ".csv";
    auto split_row = [&](const std::string& line) {
        return csv ? split_csv(line) : split_tsv(line);
    };

    std::string line;
    if (!std::getline(in, line))
        throw IngestError("empty question file: " + question_file.string());
    auto headers = split_row(strip_cr(line));

    int col_id = -1, col_question = -1, col_answer = -1, col_explanation = -1, col_difficulty = -1;
    std::vector<std::pair<int, std::string>> choice_cols;  // (column, label)
    for (size_t i = 0; i < headers.size(); ++i) {
        std::string k = header_key(headers[i]);
        int idx = static_cast<int>(i);
        if (col_id < 0 && (k == "questionid" || k == "qid" || k == "id")) col_id = idx;
        else if (col_question < 0 && k == "question") col_question = idx;
        else if (col_answer < 0 && (k == "answerkey" || k == "correctanswer" || k == "answer")) col_answer = idx;
        else if (col_explanation < 0 && k == "explanation") col_explanation = idx;
        else if (col_difficulty < 0 && (k == "arcset" || k == "difficulty" || k == "category" || k == "set")) col_difficulty = idx;
        else if (k.size() == 1 && k[0] >= 'a' && k[0] <= 'e')
            choice_cols.emplace_back(idx, std::string(1, static_cast<char>(std::toupper(k[0]))));
        else if (k.size() == 7 && k.rfind("choice", 0) == 0 && k[6] >= 'a' && k[6] <= 'e')
            choice_cols.emplace_back(idx, std::string(1, static_cast<char>(std::toupper(k[6]))));
    }
    if (col_question < 0)
        throw IngestError("no question column in " + question_file.string());
    if (col_answer < 0)
        throw IngestError("no answer-key column in " + question_file.string());

    std::vector<QuestionRecord> out;
    size_t row = 0;
    auto cell = [](const std::vector<std::string>& cells, int col) -> std::string {
        return (col >= 0 && static_cast<size_t>(col) < cells.size()) ? cells[col] : std::string();
    };

    while (std::getline(in, line)) {
        ++row;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cells = split_row(line);

        QuestionRecord q;
        q.split = split;
        q.id = normalize_whitespace(cell(cells, col_id));
        if (q.id.empty()) q.id = std::string(to_string(split)) + "#" + std::to_string(row);

        std::string raw_question = cell(cells, col_question);
        if (!choice_cols.empty()) {
            q.stem = normalize_whitespace(raw_question);
            for (const auto& [col, label] : choice_cols) {
                std::string text = normalize_whitespace(cell(cells, col));
                if (!text.empty()) q.choices.push_back({label, std::move(text), {}, {}});
            }
        } else {
            auto markers = find_choice_markers(raw_question);
            if (markers.size() >= 2) {
                q.stem = normalize_whitespace(raw_question.substr(0, markers.front().begin));
                for (size_t m = 0; m < markers.size(); ++m) {
                    size_t from = markers[m].end;
                    size_t to = (m + 1 < markers.size()) ? markers[m + 1].begin : raw_question.size();
                    std::string text = normalize_whitespace(raw_question.substr(from, to - from));
                    q.choices.push_back({markers[m].label, std::move(text), {}, {}});
                }
            }
        }
        if (q.choices.size() < 2 || q.choices.size() > 5 || q.stem.empty()) {
            ++stats.excluded_questions;
            continue;
        }

        q.correct_label = resolve_answer_key(cell(cells, col_answer), q.choices);
        if (q.correct_label.empty()) { ++stats.excluded_questions; continue; }

        std::string diff = to_lower(cell(cells, col_difficulty));
        q.difficulty = diff.find("challenge") != std::string::npos ? Difficulty::Challenge
                                                                   : Difficulty::Easy;

        for (const auto& tok : tokenize_gold(cell(cells, col_explanation)))
            q.gold_explanation.push_back(tok);
        std::sort(q.gold_explanation.begin(), q.gold_explanation.end());
        q.gold_explanation.erase(std::unique(q.gold_explanation.begin(), q.gold_explanation.end()),
                                 q.gold_explanation.end());

        out.push_back(std::move(q));
        ++stats.questions;
    }
    return out;
}

std::vector<Hypothesis> build_hypotheses(const QuestionRecord& q) {
    if (q.choices.size() < 2)
        throw Error("build_hypotheses: question " + q.id + " has fewer than 2 choices");
    std::vector<Hypothesis> out;
    out.reserve(q.choices.size());
    for (const auto& c : q.choices)
        out.push_back(Hypothesis{q.id, c.label, c.text + " " + q.stem, c.hypothesis_concepts});
    return out;
}

ExplanationsKB build_explanations_kb(const std::vector<QuestionRecord>& train,
                                     const FactsKB& fkb, IngestStats& stats) {
    ExplanationsKB ekb;
    for (const auto& q : train) {
        if (q.split != Split::Train) continue;
        const Choice* correct = q.find_choice(q.correct_label);
        if (!correct) continue;
        EkbEntry entry;
        entry.hypothesis = Hypothesis{q.id, correct->label, correct->text + " " + q.stem,
                                      correct->hypothesis_concepts};
        for (const auto& id : q.gold_explanation) {
            FactIdx idx = fkb.find(id);
            if (idx < 0) ++stats.dangling_gold_ids;
            else entry.gold.push_back(idx);
        }
        std::sort(entry.gold.begin(), entry.gold.end());
        entry.gold.erase(std::unique(entry.gold.begin(), entry.gold.end()), entry.gold.end());
        ekb.entries.push_back(std::move(entry));
    }
    stats.ekb_entries = ekb.entries.size();
    return ekb;
}

std::vector<Fact> wordnet_abstractive_facts(const ConceptSet& concepts, const Lexicon& lexicon) {
    std::vector<Fact> out;
    std::unordered_set<std::string> seen;
    auto underscore = [](std::string s) {
        std::replace(s.begin(), s.end(), ' ', '_');
        return s;
    };
    auto emit = [&](const std::string& text, const std::string& tag, const std::string& a,
                    const std::string& b) {
        if (!seen.insert(text).second) return;
        out.push_back(Fact{"wn:" + tag + ":" + underscore(a) + ":" + underscore(b), text,
                           "WORDNET", Role::Abstractive, {}});
    };
    for (const auto& cpt : concepts) {
        const auto* synsets = lexicon.synsets_of(cpt);
        if (!synsets) continue;
        for (SynsetId s : *synsets) {
            for (SynsetId t : *lexicon.related(s, Relation::Hypernym)) {
                const std::string& head = *lexicon.head_word(t);
                if (head.empty() || head == cpt) continue;
                emit(cpt + " is a kind of " + head, "kindof", cpt, head);
            }
            for (SynsetId t : *lexicon.related(s, Relation::Hyponym)) {
                const std::string& head = *lexicon.head_word(t);
                if (head.empty() || head == cpt) continue;
                emit(head + " is a kind of " + cpt, "kindof", head, cpt);
            }
            for (SynsetId t : *lexicon.related(s, Relation::Antonym)) {
                const std::string& head = *lexicon.head_word(t);
                if (head.empty() || head == cpt) continue;
                emit(cpt + " is the opposite of " + head, "opposite", cpt, head);
            }
        }
    }
    return out;
}

}  // namespace swcu
