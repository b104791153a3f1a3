#include "swcu/ingest.hpp"

#include <algorithm>

#include "swcu/error.hpp"
#include "swcu/text.hpp"

namespace swcu {

namespace fs = std::filesystem;

namespace {

Split split_of_filename(const std::string& name) {
    const std::string n = to_lower(name);
    if (n.find("train") != std::string::npos) return Split::Train;
    if (n.find("dev") != std::string::npos) return Split::Dev;
    if (n.find("test") != std::string::npos) return Split::Test;
    throw IngestError("cannot infer split from question file name: " + name);
}

void annotate_question(QuestionRecord& q, const Lexicon& lex, const Stopwords& stop) {
    q.stem_concepts = extract_concepts(q.stem, lex, stop);
    for (auto& c : q.choices) {
        c.concepts = extract_concepts(c.text, lex, stop);
        c.hypothesis_concepts = extract_concepts(c.text + " " + q.stem, lex, stop);
    }
}

}  // namespace

Snapshot ingest(const IngestOptions& opts, std::vector<std::string>* warnings) {
    auto warn = [&](std::string msg) {
        if (warnings) warnings->push_back(std::move(msg));
    };

    Snapshot snap;
    snap.mode = opts.arc_mode ? "arc" : "worldtree";
    const Stopwords stopwords = Stopwords::load(opts.stopwords_path);
    snap.stopwords = stopwords.sorted_words();

    LexiconStats lex_stats;
    const Lexicon lexicon = load_lexicon(opts.wordnet_dir, &lex_stats);
    if (lex_stats.skipped_lines > 0)
        warn("lexicon: skipped " + std::to_string(lex_stats.skipped_lines) + " unparseable lines");

    FactsKB corpus_facts = load_facts(opts.tables_dir, snap.stats);

    // question files, grouped per split, lexicographic order within a split
    if (!fs::is_directory(opts.questions_dir))
        throw IngestError("question directory not found: " + opts.questions_dir.string());
    std::vector<fs::path> qfiles;
    for (const auto& e : fs::directory_iterator(opts.questions_dir)) {
        if (!e.is_regular_file()) continue;
        auto ext = to_lower(e.path().extension().string());
        if (ext == ".tsv" || ext == ".csv" || ext == ".txt") qfiles.push_back(e.path());
    }
    std::sort(qfiles.begin(), qfiles.end());
    if (qfiles.empty())
        throw IngestError("no question files in " + opts.questions_dir.string());

    for (Split split : {Split::Train, Split::Dev, Split::Test}) {
        for (const auto& f : qfiles) {
            Split file_split;
            try {
                file_split = split_of_filename(f.filename().string());
            } catch (const IngestError&) {
                continue;
            }
            if (file_split != split) continue;
            auto records = load_questions(f, split, snap.stats);
            for (auto& q : records) snap.questions.push_back(std::move(q));
        }
    }

    std::array<size_t, 3> split_sizes{0, 0, 0};
    for (const auto& q : snap.questions) split_sizes[static_cast<size_t>(q.split)] += 1;
    for (size_t s = 0; s < 3; ++s) {
        if (opts.expected_split_sizes[s] != 0 && split_sizes[s] != opts.expected_split_sizes[s])
            warn(std::string(to_string(static_cast<Split>(s))) + " split has " +
                 std::to_string(split_sizes[s]) + " questions, expected " +
                 std::to_string(opts.expected_split_sizes[s]) +
                 " (different corpus release? absolute paper targets may not apply)");
    }

    for (auto& q : snap.questions) annotate_question(q, lexicon, stopwords);

    if (!opts.arc_mode) {
        snap.fkb = std::move(corpus_facts);
    } else {
        // keep unification facts, substitute the abstractive set with
        // WordNet relations over all question concepts
        ConceptSet question_concepts;
        for (const auto& q : snap.questions)
            for (const auto& c : q.choices) question_concepts.merge(c.hypothesis_concepts);
        auto synthesized = wordnet_abstractive_facts(question_concepts, lexicon);
        FactsKB arc_kb;
        for (const auto& f : corpus_facts.facts()) {
            if (f.role == Role::Abstractive) {
                ++snap.stats.dropped_abstractive;
                continue;
            }
            arc_kb.add(f);
        }
        for (auto& f : synthesized) {
            arc_kb.add(std::move(f));
            ++snap.stats.synthesized_facts;
        }
        snap.stats.facts = arc_kb.size();
        snap.fkb = std::move(arc_kb);
    }

    for (size_t i = 0; i < snap.fkb.size(); ++i) {
        Fact& f = snap.fkb.at(static_cast<FactIdx>(i));
        f.concepts = extract_concepts(f.text, lexicon, stopwords);
    }

    std::vector<QuestionRecord> train;
    for (const auto& q : snap.questions)
        if (q.split == Split::Train) train.push_back(q);
    snap.ekb = build_explanations_kb(train, snap.fkb, snap.stats);
    if (snap.stats.dangling_gold_ids > 0)
        warn("EKB: dropped " + std::to_string(snap.stats.dangling_gold_ids) +
             " gold fact ids not present in the facts KB");
    return snap;
}

}  // namespace swcu
