#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace swcu {

// Shared tokenizer for indexing and concept extraction: lowercase ASCII,
// split on any non-alphanumeric byte, drop empty tokens. Locale-independent.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower(std::string_view s);

// Collapse runs of whitespace to single spaces and trim the ends.
std::string normalize_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Fixed English function-word list, shipped as data/stopwords.txt.
class Stopwords {
public:
    Stopwords() = default;
    explicit Stopwords(std::vector<std::string> words);
    static Stopwords load(const std::filesystem::path& file);

    bool contains(std::string_view token) const;
    bool empty() const { return words_.empty(); }
    // sorted, for embedding into snapshots
    std::vector<std::string> sorted_words() const;

private:
    std::unordered_set<std::string> words_;
};

}  // namespace swcu
