#include "swcu/types.hpp"

#include <algorithm>

#include "swcu/error.hpp"

namespace swcu {

std::string_view to_string(Role r) {
    return r == Role::Abstractive ? "abstractive" : "unification";
}

std::string_view to_string(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Dev: return "dev";
        default: return "test";
    }
}

std::string_view to_string(Difficulty d) {
    return d == Difficulty::Easy ? "easy" : "challenge";
}

Split split_from_string(std::string_view s) {
    if (s == "train") return Split::Train;
    if (s == "dev") return Split::Dev;
    if (s == "test") return Split::Test;
    throw ConfigError("unknown split: " + std::string(s));
}

ConceptSet::ConceptSet(std::vector<std::string> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

void ConceptSet::insert(std::string cpt) {
    auto it = std::lower_bound(items_.begin(), items_.end(), cpt);
    if (it == items_.end() || *it != cpt) items_.insert(it, std::move(cpt));
}

void ConceptSet::merge(const ConceptSet& other) {
    if (other.empty()) return;
    std::vector<std::string> merged;
    merged.reserve(items_.size() + other.items_.size());
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(merged));
    items_ = std::move(merged);
}

bool ConceptSet::contains(std::string_view cpt) const {
    return std::binary_search(items_.begin(), items_.end(), cpt);
}

bool ConceptSet::intersects(const ConceptSet& other) const {
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a; else ++b;
    }
    return false;
}

size_t ConceptSet::intersection_size(const ConceptSet& other) const {
    size_t n = 0;
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
        if (*a == *b) { ++n; ++a; ++b; }
        else if (*a < *b) ++a;
        else ++b;
    }
    return n;
}

size_t ConceptSet::union_size(const ConceptSet& other) const {
    return size() + other.size() - intersection_size(other);
}

const Choice* QuestionRecord::find_choice(std::string_view label) const {
    for (const auto& c : choices)
        if (c.label == label) return &c;
    return nullptr;
}

FactIdx FactsKB::add(Fact f) {
    auto [it, inserted] = by_id_.emplace(f.id, static_cast<FactIdx>(facts_.size()));
    if (!inserted) throw IngestError("duplicate fact id: " + f.id);
    facts_.push_back(std::move(f));
    return it->second;
}

FactIdx FactsKB::find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? FactIdx{-1} : it->second;
}

}  // namespace swcu
