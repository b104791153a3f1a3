#include "synth.hpp"

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace synth {

namespace {

std::string ans_word(size_t f) { return "ans" + std::to_string(f) + "x"; }
std::string abs_word(size_t f, char which) { return "abs" + std::to_string(f) + which; }
std::string con_word(size_t f, size_t i) {
    return "con" + std::to_string(f) + "q" + std::to_string(i);
}

struct Writer {
    std::ofstream out;
    explicit Writer(const std::filesystem::path& p) : out(p, std::ios::binary) {}
    void row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) out << '\t';
            out << c;
            first = false;
        }
        out << '\n';
    }
};

}  // namespace

void write_corpus(const std::filesystem::path& root, const Spec& spec) {
    namespace fs = std::filesystem;
    fs::create_directories(root / "tables");
    fs::create_directories(root / "questions");
    fs::create_directories(root / "wordnet");
    std::mt19937_64 rng(spec.seed);

    const size_t F = spec.families;
    const size_t C = spec.concretes_per_family;

    // ---- tables ----
    {
        Writer kindof(root / "tables" / "KINDOF.tsv");
        kindof.row({"[SKIP] UID", "[FILL] prefix", "HYPONYM", "[FILL] link", "HYPERNYM"});
        for (size_t f = 0; f < F; ++f)
            for (size_t i = 0; i < C; ++i)
                kindof.row({"K-" + std::to_string(f) + "-" + std::to_string(i), "a",
                            con_word(f, i), "is a kind of", abs_word(f, i % 2 ? 'b' : 'a')});

        Writer synonymy(root / "tables" / "SYNONYMY.tsv");
        synonymy.row({"[SKIP] UID", "WORD", "[FILL] link", "SYNONYM"});
        for (size_t f = 0; f < F; ++f)
            synonymy.row({"S-" + std::to_string(f), con_word(f, 0), "means", con_word(f, 1)});

        Writer opposites(root / "tables" / "OPPOSITES.tsv");
        opposites.row({"[SKIP] UID", "WORD", "[FILL] link", "ANTONYM"});
        for (size_t f = 0; f + 1 < F; f += 2)
            opposites.row({"O-" + std::to_string(f), abs_word(f, 'a'), "is the opposite of",
                           abs_word(f + 1, 'a')});

        Writer laws(root / "tables" / "LAWS.tsv");
        laws.row({"[SKIP] UID", "AGENT", "ACTION", "PATIENT"});
        for (size_t f = 0; f < F; ++f)
            laws.row({"L-" + std::to_string(f), ans_word(f), "causes changes in",
                      abs_word(f, 'a') + " and " + abs_word(f, 'b')});

        // traps: lexically strong support for a neighbouring family's answer
        // word, covering a triple of this family's concretes; mirrors the
        // distractor-supporting noise facts of a real corpus
        Writer traps(root / "tables" / "OBSERVATIONS.tsv");
        traps.row({"[SKIP] UID", "SUBJECT", "NOTE"});
        for (size_t f = 0; f < F; ++f) {
            for (size_t j = 0; 3 * j + 2 < C; ++j) {
                const size_t g = (f + 1 + j) % F;
                traps.row({"T-" + std::to_string(f) + "-" + std::to_string(j), ans_word(g),
                           "was seen near " + con_word(f, 3 * j) + " and " +
                               con_word(f, 3 * j + 1) + " and " + con_word(f, 3 * j + 2) +
                               " one morning"});
            }
        }

        Writer noise(root / "tables" / "NOISE.tsv");
        noise.row({"[SKIP] UID", "LEFT", "RIGHT"});
        for (size_t k = 0; k < spec.filler_facts; ++k) {
            const size_t f1 = rng() % F, f2 = rng() % F;
            noise.row({"N-" + std::to_string(k), abs_word(f1, 'a'),
                       "relates weakly to " + abs_word(f2, 'b')});
        }
    }

    // ---- questions ----
    {
        // Stems are assembled from rotating word pools so that two questions
        // rarely share much beyond their scenario words; recycling a handful
        // of fixed templates would make BM25 similarity between unrelated
        // families implausibly high.
        const std::vector<std::string> openers = {
            "When",        "Why would", "What happens when", "After", "Suppose",
            "Each spring", "At night",  "During a storm",    "Before sunrise"};
        const std::vector<std::string> verbs = {
            "touches",      "rests beside", "bumps into",    "drifts toward",
            "settles near", "rubs against", "presses on",    "slides past",
            "leans on",     "spins around", "floats above"};
        const std::vector<std::string> adverbs = {"slowly",   "overnight", "outside",
                                                  "suddenly", "gently",    "quietly",
                                                  "eventually", "repeatedly"};
        const std::vector<std::string> tails = {
            "what force matters most",      "which effect acts on it",
            "what causes the change",       "which influence wins",
            "what makes this happen",       "which process is responsible",
            "what drives the difference",   "which power is at work",
            "what best explains the shift", "which agent produced it"};

        auto write_split = [&](const char* name, size_t per_family, const char* prefix) {
            Writer w(root / "questions" / ("questions." + std::string(name) + ".tsv"));
            w.row({"QuestionID", "question", "AnswerKey", "arcset", "explanation"});
            for (size_t f = 0; f < F; ++f) {
                for (size_t i = 0; i < per_family; ++i) {
                    const size_t a = rng() % C;
                    size_t b = rng() % C;
                    if (b == a) b = (b + 1) % C;
                    std::vector<size_t> mentioned{a, b};
                    std::ostringstream sb;
                    sb << openers[rng() % openers.size()] << " a " << con_word(f, a) << " "
                       << verbs[rng() % verbs.size()] << " a " << con_word(f, b);
                    if (rng() % 2) {
                        size_t c = rng() % C;
                        if (c != a && c != b) {
                            sb << " near a " << con_word(f, c);
                            mentioned.push_back(c);
                        }
                    }
                    if (rng() % 2) sb << " " << adverbs[rng() % adverbs.size()];
                    sb << ", " << tails[rng() % tails.size()] << "?";
                    std::string stem = sb.str();

                    // distractor answers from three other families
                    std::vector<std::string> wrong;
                    std::set<size_t> used{f};
                    while (wrong.size() < 3) {
                        size_t g = rng() % F;
                        if (used.count(g)) continue;
                        used.insert(g);
                        wrong.push_back(ans_word(g));
                    }
                    const size_t correct_pos = rng() % 4;
                    static const char* kLabels[4] = {"A", "B", "C", "D"};
                    std::string correct_label;
                    std::ostringstream question;
                    question << stem;
                    size_t w_at = 0;
                    for (size_t pos = 0; pos < 4; ++pos) {
                        question << " (" << kLabels[pos] << ") ";
                        if (pos == correct_pos) {
                            question << ans_word(f);
                            correct_label = kLabels[pos];
                        } else {
                            question << wrong[w_at++];
                        }
                    }

                    std::string gold = "L-" + std::to_string(f) + "|CENTRAL";
                    for (size_t m : mentioned)
                        gold += " K-" + std::to_string(f) + "-" + std::to_string(m) +
                                "|GROUNDING";
                    const bool challenge = rng() % 10 < 3;
                    w.row({std::string(prefix) + std::to_string(f) + "-" + std::to_string(i),
                           question.str(), correct_label,
                           challenge ? "ARC-Challenge" : "ARC-Easy", gold});
                }
            }
        };
        write_split("train", spec.train_per_family, "SQTR-");
        write_split("dev", spec.dev_per_family, "SQDV-");
        write_split("test", spec.test_per_family, "SQTE-");
    }

    // ---- WordNet dict ----
    {
        // one synset per vocabulary word; concretes point @ their abstract
        struct Entry {
            std::string word;
            uint64_t offset;
            std::vector<uint64_t> hypernyms;
            std::vector<uint64_t> antonyms;
        };
        std::vector<Entry> entries;
        std::map<std::string, uint64_t> offset_of;
        uint64_t next = 10;
        auto add = [&](const std::string& word) {
            offset_of[word] = next;
            entries.push_back({word, next, {}, {}});
            next += 10;
            return entries.size() - 1;
        };
        for (size_t f = 0; f < F; ++f) {
            add(abs_word(f, 'a'));
            add(abs_word(f, 'b'));
        }
        for (size_t f = 0; f < F; ++f) add(ans_word(f));
        for (size_t f = 0; f < F; ++f)
            for (size_t i = 0; i < C; ++i) {
                size_t e = add(con_word(f, i));
                entries[e].hypernyms.push_back(offset_of[abs_word(f, i % 2 ? 'b' : 'a')]);
            }
        for (size_t f = 0; f + 1 < F; f += 2) {
            entries[2 * f].antonyms.push_back(offset_of[abs_word(f + 1, 'a')]);
            entries[2 * (f + 1)].antonyms.push_back(offset_of[abs_word(f, 'a')]);
        }

        std::ofstream data(root / "wordnet" / "data.noun", std::ios::binary);
        std::ofstream index(root / "wordnet" / "index.noun", std::ios::binary);
        char buf[16];
        auto off8 = [&](uint64_t o) {
            std::snprintf(buf, sizeof buf, "%08llu", static_cast<unsigned long long>(o));
            return std::string(buf);
        };
        for (const auto& e : entries) {
            const size_t p_cnt = e.hypernyms.size() + e.antonyms.size();
            data << off8(e.offset) << " 03 n 01 " << e.word << " 0 "
                 << (p_cnt < 100 ? (p_cnt < 10 ? "00" : "0") : "") << p_cnt;
            for (uint64_t h : e.hypernyms) data << " @ " << off8(h) << " n 0000";
            for (uint64_t a : e.antonyms) data << " ! " << off8(a) << " n 0101";
            data << " | synthetic\n";
            index << e.word << " n 1 " << (e.hypernyms.empty() ? 0 : 1)
                  << (e.hypernyms.empty() ? "" : " @") << " 1 0 " << off8(e.offset) << "\n";
        }
    }
}

}  // namespace synth
