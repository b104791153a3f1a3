#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "swcu/lexicon.hpp"
#include "swcu/text.hpp"

#ifndef SWCU_FIXTURES_DIR
#define SWCU_FIXTURES_DIR "tests/fixtures"
#endif
#ifndef SWCU_DATA_DIR
#define SWCU_DATA_DIR "data"
#endif

namespace test {

inline std::filesystem::path fixtures() { return SWCU_FIXTURES_DIR; }
inline std::filesystem::path data_dir() { return SWCU_DATA_DIR; }

inline const swcu::Lexicon& mini_lexicon() {
    static swcu::Lexicon lex = swcu::load_lexicon(fixtures() / "wordnet_mini");
    return lex;
}

inline const swcu::Stopwords& stopwords() {
    static swcu::Stopwords sw = swcu::Stopwords::load(data_dir() / "stopwords.txt");
    return sw;
}

// scratch directory unique per test binary run
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("swcu_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace test
