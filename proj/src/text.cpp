#include "swcu/text.hpp"

#include <algorithm>
#include <fstream>

#include "swcu/error.hpp"

namespace swcu {

namespace {
inline bool is_alnum(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}
inline char lower_char(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}
}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (is_alnum(c)) {
            cur.push_back(lower_char(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return lower_char(c); });
    return out;
}

std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true;  // leading spaces dropped
    for (unsigned char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(static_cast<char>(c));
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

Stopwords::Stopwords(std::vector<std::string> words) {
    for (auto& w : words) words_.insert(to_lower(w));
}

Stopwords Stopwords::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IngestError("cannot open stopword list: " + file.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        auto tokens = tokenize(line);
        // one word per line; tolerate comments and blank lines
        if (!line.empty() && line[0] == '#') continue;
        for (auto& t : tokens) words.push_back(std::move(t));
    }
    return Stopwords(std::move(words));
}

bool Stopwords::contains(std::string_view token) const {
    return words_.count(std::string(token)) > 0;
}

std::vector<std::string> Stopwords::sorted_words() const {
    std::vector<std::string> out(words_.begin(), words_.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace swcu
