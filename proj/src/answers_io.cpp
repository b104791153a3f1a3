#include "swcu/answers_io.hpp"

#include <fstream>

#include "swcu/error.hpp"

namespace swcu {

using nlohmann::json;

namespace {

json candidate_to_json(const ExplanationCandidate& c, const FactsKB& fkb) {
    json abstractive = json::array();
    for (FactIdx a : c.abstractive)
        abstractive.push_back(json{{"id", fkb.at(a).id}, {"text", fkb.at(a).text}});
    return json{{"unification", json{{"id", fkb.at(c.unification).id},
                                     {"text", fkb.at(c.unification).text}}},
                {"abstractive", std::move(abstractive)},
                {"covered_concepts", c.covered.items()},
                {"scores", json{{"relevance", c.relevance},
                                {"unification", c.unification_power},
                                {"analogical", c.analogical},
                                {"plausibility", c.plausibility},
                                {"explanatory", c.explanatory}}}};
}

ExplanationCandidate candidate_from_json(const json& j, const FactsKB& fkb) {
    ExplanationCandidate c;
    const std::string uid = j.at("unification").at("id").get<std::string>();
    c.unification = fkb.find(uid);
    if (c.unification < 0) throw FormatError("answers file references unknown fact: " + uid);
    for (const auto& a : j.at("abstractive")) {
        const std::string aid = a.at("id").get<std::string>();
        FactIdx idx = fkb.find(aid);
        if (idx < 0) throw FormatError("answers file references unknown fact: " + aid);
        c.abstractive.push_back(idx);
    }
    c.covered = ConceptSet(j.at("covered_concepts").get<std::vector<std::string>>());
    const auto& s = j.at("scores");
    c.relevance = s.at("relevance").get<double>();
    c.unification_power = s.at("unification").get<double>();
    c.analogical = s.at("analogical").get<double>();
    c.plausibility = s.at("plausibility").get<double>();
    c.explanatory = s.at("explanatory").get<double>();
    return c;
}

std::string safe_filename(const std::string& id) {
    std::string out;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? "question" : out;
}

}  // namespace

void save_answers(const std::filesystem::path& path, const AnswersFile& file, const FactsKB& fkb) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write answers file: " + path.string());
    json meta{{"t", "meta"},
              {"format", "swcu-answers"},
              {"version", 1},
              {"split", file.split},
              {"config", file.config},
              {"fingerprint", file.fingerprint}};
    out << meta.dump() << '\n';
    for (const auto& a : file.answers) {
        json scores = json::array();
        for (const auto& [label, score] : a.hypothesis_scores)
            scores.push_back(json{{"label", label}, {"score", score}});
        json expl = json::array();
        for (size_t j = 0; j < a.top_explanations.size(); ++j) {
            json cands = json::array();
            for (const auto& c : a.top_explanations[j]) cands.push_back(candidate_to_json(c, fkb));
            expl.push_back(json{{"label", a.hypothesis_scores[j].first},
                                {"candidates", std::move(cands)}});
        }
        json rec{{"t", "answer"},
                 {"question_id", a.question_id},
                 {"chosen", a.chosen_label},
                 {"fallback", a.fallback},
                 {"scores", std::move(scores)},
                 {"explanations", std::move(expl)}};
        out << rec.dump() << '\n';
    }
    if (!out) throw Error("failed while writing answers file: " + path.string());
}

AnswersFile load_answers(const std::filesystem::path& path, const FactsKB& fkb) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open answers file: " + path.string());
    AnswersFile out;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty answers file: " + path.string());
    json meta = json::parse(line, nullptr, false);
    if (meta.is_discarded() || meta.value("format", "") != "swcu-answers")
        throw FormatError("not a swcu answers file: " + path.string());
    if (meta.value("version", -1) != 1)
        throw FormatError("answers file version mismatch: " + path.string());
    out.config = meta.value("config", json::object());
    out.fingerprint = meta.value("fingerprint", "");
    out.split = meta.value("split", "");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || rec.value("t", "") != "answer")
            throw FormatError("bad record in answers file: " + path.string());
        ScoredAnswer a;
        a.question_id = rec.at("question_id").get<std::string>();
        a.chosen_label = rec.at("chosen").get<std::string>();
        a.fallback = rec.at("fallback").get<bool>();
        for (const auto& s : rec.at("scores"))
            a.hypothesis_scores.emplace_back(s.at("label").get<std::string>(),
                                             s.at("score").get<double>());
        for (const auto& e : rec.at("explanations")) {
            std::vector<ExplanationCandidate> cands;
            for (const auto& c : e.at("candidates")) cands.push_back(candidate_from_json(c, fkb));
            a.top_explanations.push_back(std::move(cands));
        }
        out.answers.push_back(std::move(a));
    }
    return out;
}

void write_evidence_files(const std::filesystem::path& dir,
                          const std::vector<ScoredAnswer>& answers, const FactsKB& fkb) {
    std::filesystem::create_directories(dir);
    for (const auto& a : answers) {
        const auto path = dir / (safe_filename(a.question_id) + ".txt");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write evidence file: " + path.string());
        // candidates of the chosen hypothesis
        const std::vector<ExplanationCandidate>* chosen = nullptr;
        for (size_t j = 0; j < a.hypothesis_scores.size(); ++j)
            if (a.hypothesis_scores[j].first == a.chosen_label) chosen = &a.top_explanations[j];
        if (!chosen) continue;
        for (const auto& c : *chosen) out << fkb.at(c.unification).text << '\n';
        std::vector<FactIdx> seen;
        for (const auto& c : *chosen)
            for (FactIdx ai : c.abstractive) {
                if (std::find(seen.begin(), seen.end(), ai) != seen.end()) continue;
                seen.push_back(ai);
                out << fkb.at(ai).text << '\n';
            }
    }
}

nlohmann::json evaluation_to_json(const HypothesisEvaluation& ev, const FactsKB& fkb) {
    auto pool_to_json = [&](const std::vector<ScoredFact>& pool) {
        json out = json::array();
        for (const auto& sf : pool)
            out.push_back(json{{"id", fkb.at(sf.fact).id},
                               {"text", fkb.at(sf.fact).text},
                               {"relevance", sf.score.relevance},
                               {"unification", sf.score.unification},
                               {"combined", sf.score.combined}});
        return out;
    };
    json cands = json::array();
    for (const auto& c : ev.candidates) cands.push_back(candidate_to_json(c, fkb));
    return json{{"hypothesis", json{{"question_id", ev.hypothesis.question_id},
                                    {"label", ev.hypothesis.choice_label},
                                    {"text", ev.hypothesis.text},
                                    {"concepts", ev.hypothesis.concepts.items()}}},
                {"cabs", pool_to_json(ev.pools.cabs)},
                {"cunf", pool_to_json(ev.pools.cunf)},
                {"candidates", std::move(cands)},
                {"score", ev.score},
                {"degenerate", ev.degenerate}};
}

}  // namespace swcu
