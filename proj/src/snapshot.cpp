#include "swcu/snapshot.hpp"

#include <fstream>

#include "swcu/error.hpp"

namespace swcu {

using nlohmann::json;

namespace {

json concepts_to_json(const ConceptSet& cs) { return json(cs.items()); }

ConceptSet concepts_from_json(const json& j) {
    return ConceptSet(j.get<std::vector<std::string>>());
}

json stats_to_json(const IngestStats& s) {
    return json{{"tables", s.tables},
                {"facts", s.facts},
                {"skipped_rows", s.skipped_rows},
                {"duplicate_fact_ids", s.duplicate_fact_ids},
                {"questions", s.questions},
                {"excluded_questions", s.excluded_questions},
                {"dangling_gold_ids", s.dangling_gold_ids},
                {"synthesized_facts", s.synthesized_facts},
                {"dropped_abstractive", s.dropped_abstractive},
                {"ekb_entries", s.ekb_entries}};
}

IngestStats stats_from_json(const json& j) {
    IngestStats s;
    auto get = [&](const char* k, size_t& field) {
        if (j.contains(k)) field = j.at(k).get<size_t>();
    };
    get("tables", s.tables);
    get("facts", s.facts);
    get("skipped_rows", s.skipped_rows);
    get("duplicate_fact_ids", s.duplicate_fact_ids);
    get("questions", s.questions);
    get("excluded_questions", s.excluded_questions);
    get("dangling_gold_ids", s.dangling_gold_ids);
    get("synthesized_facts", s.synthesized_facts);
    get("dropped_abstractive", s.dropped_abstractive);
    get("ekb_entries", s.ekb_entries);
    return s;
}

json index_to_json(const Bm25Index& idx, const std::string& which) {
    json vectors = json::array();
    for (const auto& v : idx.doc_vectors()) {
        json entries = json::array();
        for (const auto& [t, w] : v.entries) entries.push_back(json::array({t, w}));
        vectors.push_back(std::move(entries));
    }
    return json{{"t", "index"},
                {"which", which},
                {"k1", idx.params().k1},
                {"b", idx.params().b},
                {"terms", idx.terms()},
                {"df", idx.doc_freqs()},
                {"doc_lens", idx.doc_lens()},
                {"avg_doc_len", idx.avg_doc_len()},
                {"vectors", std::move(vectors)}};
}

Bm25Index index_from_json(const json& j) {
    std::vector<SparseVector> vectors;
    for (const auto& entries : j.at("vectors")) {
        SparseVector v;
        for (const auto& e : entries)
            v.entries.emplace_back(e.at(0).get<int32_t>(), e.at(1).get<double>());
        vectors.push_back(std::move(v));
    }
    return Bm25Index::from_parts(Bm25Params{j.at("k1").get<double>(), j.at("b").get<double>()},
                                 j.at("terms").get<std::vector<std::string>>(),
                                 j.at("df").get<std::vector<int64_t>>(),
                                 j.at("doc_lens").get<std::vector<double>>(),
                                 j.at("avg_doc_len").get<double>(), std::move(vectors));
}

json question_to_json(const QuestionRecord& q) {
    json choices = json::array();
    for (const auto& c : q.choices)
        choices.push_back(json{{"label", c.label},
                               {"text", c.text},
                               {"concepts", concepts_to_json(c.concepts)},
                               {"hyp_concepts", concepts_to_json(c.hypothesis_concepts)}});
    return json{{"t", "question"},
                {"id", q.id},
                {"stem", q.stem},
                {"choices", std::move(choices)},
                {"correct", q.correct_label},
                {"difficulty", std::string(to_string(q.difficulty))},
                {"split", std::string(to_string(q.split))},
                {"gold", q.gold_explanation},
                {"stem_concepts", concepts_to_json(q.stem_concepts)}};
}

QuestionRecord question_from_json(const json& j) {
    QuestionRecord q;
    q.id = j.at("id").get<std::string>();
    q.stem = j.at("stem").get<std::string>();
    for (const auto& c : j.at("choices")) {
        Choice ch;
        ch.label = c.at("label").get<std::string>();
        ch.text = c.at("text").get<std::string>();
        ch.concepts = concepts_from_json(c.at("concepts"));
        ch.hypothesis_concepts = concepts_from_json(c.at("hyp_concepts"));
        q.choices.push_back(std::move(ch));
    }
    q.correct_label = j.at("correct").get<std::string>();
    q.difficulty = j.at("difficulty").get<std::string>() == "challenge" ? Difficulty::Challenge
                                                                        : Difficulty::Easy;
    q.split = split_from_string(j.at("split").get<std::string>());
    q.gold_explanation = j.at("gold").get<std::vector<std::string>>();
    q.stem_concepts = concepts_from_json(j.at("stem_concepts"));
    return q;
}

}  // namespace

std::vector<QuestionRecord> Snapshot::questions_for(Split split) const {
    std::vector<QuestionRecord> out;
    for (const auto& q : questions)
        if (q.split == split) out.push_back(q);
    return out;
}

void save_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write snapshot: " + path.string());

    json header{{"format", "swcu-snapshot"},
                {"version", Snapshot::kVersion},
                {"mode", snap.mode},
                {"config", snap.config},
                {"fingerprint", snap.fingerprint},
                {"stats", stats_to_json(snap.stats)},
                {"stopwords", snap.stopwords}};
    out << header.dump() << '\n';

    for (const auto& f : snap.fkb.facts()) {
        json rec{{"t", "fact"},
                 {"id", f.id},
                 {"text", f.text},
                 {"table", f.table},
                 {"role", std::string(to_string(f.role))},
                 {"concepts", concepts_to_json(f.concepts)}};
        out << rec.dump() << '\n';
    }
    for (const auto& q : snap.questions) out << question_to_json(q).dump() << '\n';
    for (const auto& e : snap.ekb.entries) {
        json rec{{"t", "ekb"},
                 {"question_id", e.hypothesis.question_id},
                 {"label", e.hypothesis.choice_label},
                 {"text", e.hypothesis.text},
                 {"concepts", concepts_to_json(e.hypothesis.concepts)},
                 {"gold", e.gold}};
        out << rec.dump() << '\n';
    }
    if (snap.fact_index) out << index_to_json(*snap.fact_index, "fkb").dump() << '\n';
    if (snap.ekb_index) out << index_to_json(*snap.ekb_index, "ekb").dump() << '\n';
    if (!out) throw Error("failed while writing snapshot: " + path.string());
}

Snapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open snapshot: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty snapshot: " + path.string());
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || header.value("format", "") != "swcu-snapshot")
        throw FormatError("not a swcu snapshot: " + path.string());
    if (header.value("version", -1) != Snapshot::kVersion)
        throw FormatError("snapshot version mismatch in " + path.string() + " (expected " +
                          std::to_string(Snapshot::kVersion) + ")");

    Snapshot snap;
    snap.mode = header.value("mode", "worldtree");
    snap.config = header.value("config", json::object());
    snap.fingerprint = header.value("fingerprint", "");
    snap.stats = stats_from_json(header.value("stats", json::object()));
    snap.stopwords = header.value("stopwords", std::vector<std::string>{});

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded())
            throw FormatError("bad snapshot record at line " + std::to_string(line_no));
        const std::string t = rec.value("t", "");
        if (t == "fact") {
            Fact f;
            f.id = rec.at("id").get<std::string>();
            f.text = rec.at("text").get<std::string>();
            f.table = rec.at("table").get<std::string>();
            f.role = rec.at("role").get<std::string>() == "abstractive" ? Role::Abstractive
                                                                        : Role::Unification;
            f.concepts = concepts_from_json(rec.at("concepts"));
            snap.fkb.add(std::move(f));
        } else if (t == "question") {
            snap.questions.push_back(question_from_json(rec));
        } else if (t == "ekb") {
            EkbEntry e;
            e.hypothesis.question_id = rec.at("question_id").get<std::string>();
            e.hypothesis.choice_label = rec.at("label").get<std::string>();
            e.hypothesis.text = rec.at("text").get<std::string>();
            e.hypothesis.concepts = concepts_from_json(rec.at("concepts"));
            e.gold = rec.at("gold").get<std::vector<FactIdx>>();
            for (FactIdx g : e.gold)
                if (g < 0 || static_cast<size_t>(g) >= snap.fkb.size())
                    throw FormatError("ekb record references unknown fact index");
            snap.ekb.entries.push_back(std::move(e));
        } else if (t == "index") {
            const std::string which = rec.value("which", "");
            if (which == "fkb") snap.fact_index = index_from_json(rec);
            else if (which == "ekb") snap.ekb_index = index_from_json(rec);
            else throw FormatError("unknown index section: " + which);
        } else {
            throw FormatError("unknown snapshot record type at line " + std::to_string(line_no));
        }
    }
    return snap;
}

}  // namespace swcu
