#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace swcu {

enum class Role { Abstractive, Unification };
enum class Split { Train, Dev, Test };
enum class Difficulty { Easy, Challenge };

std::string_view to_string(Role r);
std::string_view to_string(Split s);
std::string_view to_string(Difficulty d);
Split split_from_string(std::string_view s);

// Set of normalized concept strings, kept sorted and deduplicated.
class ConceptSet {
public:
    ConceptSet() = default;
    explicit ConceptSet(std::vector<std::string> items);

    void insert(std::string cpt);
    void merge(const ConceptSet& other);
    bool contains(std::string_view cpt) const;
    bool intersects(const ConceptSet& other) const;
    size_t intersection_size(const ConceptSet& other) const;
    size_t union_size(const ConceptSet& other) const;

    size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const std::vector<std::string>& items() const { return items_; }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    bool operator==(const ConceptSet&) const = default;

private:
    std::vector<std::string> items_;  // sorted, unique
};

// CP(a) ∩ CP(b) != {}
inline bool conceptually_connected(const ConceptSet& a, const ConceptSet& b) {
    return a.intersects(b);
}

using FactIdx = int32_t;  // dense index into FactsKB

struct Fact {
    std::string id;     // stable across runs (corpus UID or synthetic tag)
    std::string text;   // whitespace-normalized original casing
    std::string table;  // source table name
    Role role = Role::Unification;
    ConceptSet concepts;
};

struct Choice {
    std::string label;
    std::string text;
    ConceptSet concepts;             // CP(choice text), for the overlap buckets
    ConceptSet hypothesis_concepts;  // CP(choice ++ " " ++ stem)
};

struct QuestionRecord {
    std::string id;
    std::string stem;  // stripped of choice text
    std::vector<Choice> choices;
    std::string correct_label;
    Difficulty difficulty = Difficulty::Easy;
    Split split = Split::Train;
    std::vector<std::string> gold_explanation;  // fact ids, sorted unique
    ConceptSet stem_concepts;

    const Choice* find_choice(std::string_view label) const;
};

struct Hypothesis {
    std::string question_id;
    std::string choice_label;
    std::string text;  // choice text ++ " " ++ stem
    ConceptSet concepts;
};

class FactsKB {
public:
    // rejects duplicate ids
    FactIdx add(Fact f);
    const Fact& at(FactIdx i) const { return facts_.at(static_cast<size_t>(i)); }
    Fact& at(FactIdx i) { return facts_.at(static_cast<size_t>(i)); }
    FactIdx find(std::string_view id) const;  // -1 when absent
    size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }
    const std::vector<Fact>& facts() const { return facts_; }

private:
    std::vector<Fact> facts_;
    std::unordered_map<std::string, FactIdx> by_id_;
};

struct EkbEntry {
    Hypothesis hypothesis;        // correct choice of a train question
    std::vector<FactIdx> gold;    // resolved against the FactsKB, sorted
};

struct ExplanationsKB {
    std::vector<EkbEntry> entries;
    size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

}  // namespace swcu
