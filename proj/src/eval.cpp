#include "swcu/eval.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "swcu/error.hpp"

namespace swcu {

using nlohmann::json;

namespace {

double percent(size_t num, size_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

const QuestionRecord& question_for(const std::unordered_map<std::string, const QuestionRecord*>& by_id,
                                   const std::string& id) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("answer references unknown question id: " + id);
    return *it->second;
}

std::unordered_map<std::string, const QuestionRecord*> index_questions(
    const std::vector<QuestionRecord>& questions) {
    std::unordered_map<std::string, const QuestionRecord*> by_id;
    for (const auto& q : questions) by_id.emplace(q.id, &q);
    return by_id;
}

// labels of the two best hypotheses, score desc, choice order on ties
std::vector<std::string> top2_labels(const ScoredAnswer& a) {
    std::vector<size_t> order(a.hypothesis_scores.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        if (a.hypothesis_scores[x].second != a.hypothesis_scores[y].second)
            return a.hypothesis_scores[x].second > a.hypothesis_scores[y].second;
        return x < y;
    });
    std::vector<std::string> out;
    for (size_t i = 0; i < order.size() && i < 2; ++i)
        out.push_back(a.hypothesis_scores[order[i]].first);
    return out;
}

}  // namespace

AccuracyReport accuracy(const std::vector<ScoredAnswer>& answers,
                        const std::vector<QuestionRecord>& questions) {
    if (answers.size() != questions.size())
        throw Error("accuracy: answer/question count mismatch (" + std::to_string(answers.size()) +
                    " vs " + std::to_string(questions.size()) + ")");
    auto by_id = index_questions(questions);
    AccuracyReport r;
    r.n = answers.size();
    for (const auto& a : answers) {
        const QuestionRecord& q = question_for(by_id, a.question_id);
        const bool easy = q.difficulty == Difficulty::Easy;
        const bool correct = a.chosen_label == q.correct_label;
        (easy ? r.n_easy : r.n_challenge) += 1;
        if (correct) {
            ++r.correct;
            (easy ? r.correct_easy : r.correct_challenge) += 1;
        }
        auto top2 = top2_labels(a);
        if (std::find(top2.begin(), top2.end(), q.correct_label) != top2.end()) ++r.correct_at2;
        if (a.fallback) ++r.fallback_count;
    }
    r.overall = percent(r.correct, r.n);
    r.easy = percent(r.correct_easy, r.n_easy);
    r.challenge = percent(r.correct_challenge, r.n_challenge);
    r.at2 = percent(r.correct_at2, r.n);
    return r;
}

namespace {

struct PredictedSets {
    std::set<std::string> full;        // unifications + attached abstractive
    std::set<std::string> unf_only;
    std::string top_unification;       // empty when no candidate exists
};

PredictedSets predicted_sets(const ScoredAnswer& a, const FactsKB& fkb) {
    PredictedSets out;
    const std::vector<ExplanationCandidate>* chosen = nullptr;
    for (size_t j = 0; j < a.hypothesis_scores.size(); ++j)
        if (a.hypothesis_scores[j].first == a.chosen_label) chosen = &a.top_explanations[j];
    if (!chosen) return out;
    for (size_t r = 0; r < chosen->size(); ++r) {
        const auto& cand = (*chosen)[r];
        const std::string& uid = fkb.at(cand.unification).id;
        if (r == 0) out.top_unification = uid;
        out.full.insert(uid);
        out.unf_only.insert(uid);
        for (FactIdx ai : cand.abstractive) out.full.insert(fkb.at(ai).id);
    }
    return out;
}

size_t intersection_count(const std::set<std::string>& a, const std::vector<std::string>& b) {
    size_t n = 0;
    for (const auto& id : b)
        if (a.count(id)) ++n;
    return n;
}

double f1_of(double p, double r) { return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

ExplanationMetrics explanation_metrics(const std::vector<ScoredAnswer>& answers,
                                       const std::vector<QuestionRecord>& questions,
                                       const FactsKB& fkb, bool macro) {
    auto by_id = index_questions(questions);
    ExplanationMetrics m;
    m.macro = macro;
    size_t hit_full = 0, pred_full = 0, hit_unf = 0, pred_unf = 0, gold_total = 0;
    double macro_p_full = 0, macro_r_full = 0, macro_p_unf = 0, macro_r_unf = 0;
    size_t with_gold = 0, accurate_unf = 0;

    for (const auto& a : answers) {
        const QuestionRecord& q = question_for(by_id, a.question_id);
        const auto pred = predicted_sets(a, fkb);
        const size_t inter_full = intersection_count(pred.full, q.gold_explanation);
        const size_t inter_unf = intersection_count(pred.unf_only, q.gold_explanation);

        hit_full += inter_full;
        pred_full += pred.full.size();
        hit_unf += inter_unf;
        pred_unf += pred.unf_only.size();
        macro_p_full += pred.full.empty() ? 0.0 : static_cast<double>(inter_full) / pred.full.size();
        macro_p_unf += pred.unf_only.empty() ? 0.0
                                             : static_cast<double>(inter_unf) / pred.unf_only.size();

        if (q.gold_explanation.empty()) {
            ++m.excluded_empty_gold;
        } else {
            ++with_gold;
            gold_total += q.gold_explanation.size();
            macro_r_full += static_cast<double>(inter_full) / q.gold_explanation.size();
            macro_r_unf += static_cast<double>(inter_unf) / q.gold_explanation.size();
            if (!pred.top_unification.empty() &&
                std::find(q.gold_explanation.begin(), q.gold_explanation.end(),
                          pred.top_unification) != q.gold_explanation.end())
                ++accurate_unf;
        }
        ++m.questions;
    }

    if (macro) {
        m.precision = m.questions ? 100.0 * macro_p_full / m.questions : 0.0;
        m.recall = with_gold ? 100.0 * macro_r_full / with_gold : 0.0;
        m.precision_unf = m.questions ? 100.0 * macro_p_unf / m.questions : 0.0;
        m.recall_unf = with_gold ? 100.0 * macro_r_unf / with_gold : 0.0;
    } else {
        m.precision = percent(hit_full, pred_full);
        m.recall = percent(hit_full, gold_total);
        m.precision_unf = percent(hit_unf, pred_unf);
        m.recall_unf = percent(hit_unf, gold_total);
    }
    m.f1 = f1_of(m.precision, m.recall);
    m.f1_unf = f1_of(m.precision_unf, m.recall_unf);
    m.unification_accuracy = percent(accurate_unf, with_gold);
    return m;
}

PredictionBreakdown breakdown_by_correctness(const std::vector<ScoredAnswer>& answers,
                                             const std::vector<QuestionRecord>& questions,
                                             const FactsKB& fkb, bool macro) {
    auto by_id = index_questions(questions);
    std::vector<ScoredAnswer> right, wrong;
    std::vector<QuestionRecord> right_q, wrong_q;
    for (const auto& a : answers) {
        const QuestionRecord& q = question_for(by_id, a.question_id);
        if (a.chosen_label == q.correct_label) {
            right.push_back(a);
            right_q.push_back(q);
        } else {
            wrong.push_back(a);
            wrong_q.push_back(q);
        }
    }
    PredictionBreakdown b;
    b.n_correct = right.size();
    b.n_wrong = wrong.size();
    b.correct = explanation_metrics(right, right_q, fkb, macro);
    b.wrong = explanation_metrics(wrong, wrong_q, fkb, macro);
    return b;
}

double mean_choice_overlap_percent(const QuestionRecord& q) {
    const auto& ch = q.choices;
    if (ch.size() < 2) return 0.0;
    double total = 0.0;
    size_t pairs = 0;
    for (size_t i = 0; i < ch.size(); ++i) {
        for (size_t j = i + 1; j < ch.size(); ++j) {
            const size_t inter = ch[i].concepts.intersection_size(ch[j].concepts);
            const size_t uni = ch[i].concepts.union_size(ch[j].concepts);
            total += uni == 0 ? 0.0 : 100.0 * static_cast<double>(inter) / static_cast<double>(uni);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

ErrorBuckets error_buckets(const std::vector<ScoredAnswer>& answers_us,
                           const std::vector<ScoredAnswer>& answers_no_us,
                           const std::vector<QuestionRecord>& questions) {
    if (answers_us.size() != answers_no_us.size() || answers_us.size() != questions.size())
        throw Error("error_buckets: answer/question count mismatch");
    auto by_id = index_questions(questions);

    static const char* kOverlapLabels[5] = {"0-20%", "20-40%", "40-60%", "60-80%", "80-100%"};
    static const char* kConceptLabels[3] = {"1-5", "5-10", ">10"};
    struct Tally { size_t n = 0, us = 0, no_us = 0; };
    Tally overlap[5], concepts[3];

    for (size_t i = 0; i < answers_us.size(); ++i) {
        const auto& au = answers_us[i];
        const auto& an = answers_no_us[i];
        if (au.question_id != an.question_id)
            throw Error("error_buckets: run question order differs at " + au.question_id);
        const QuestionRecord& q = question_for(by_id, au.question_id);

        const double ov = mean_choice_overlap_percent(q);
        int band = std::min(4, static_cast<int>(ov / 20.0));
        overlap[band].n += 1;
        overlap[band].us += au.chosen_label == q.correct_label;
        overlap[band].no_us += an.chosen_label == q.correct_label;

        const size_t sc = q.stem_concepts.size();
        int cband = sc <= 5 ? 0 : (sc <= 10 ? 1 : 2);
        concepts[cband].n += 1;
        concepts[cband].us += au.chosen_label == q.correct_label;
        concepts[cband].no_us += an.chosen_label == q.correct_label;
    }

    ErrorBuckets out;
    for (int i = 0; i < 5; ++i)
        out.overlap.push_back({kOverlapLabels[i], overlap[i].n, percent(overlap[i].us, overlap[i].n),
                               percent(overlap[i].no_us, overlap[i].n)});
    for (int i = 0; i < 3; ++i)
        out.stem_concepts.push_back({kConceptLabels[i], concepts[i].n,
                                     percent(concepts[i].us, concepts[i].n),
                                     percent(concepts[i].no_us, concepts[i].n)});
    return out;
}

namespace {

json accuracy_to_json(const AccuracyReport& r) {
    return json{{"overall", r.overall}, {"easy", r.easy},
                {"challenge", r.challenge}, {"at2", r.at2},
                {"n", r.n}, {"n_easy", r.n_easy}, {"n_challenge", r.n_challenge},
                {"fallbacks", r.fallback_count}};
}

json metrics_to_json(const ExplanationMetrics& m) {
    return json{{"precision", m.precision},
                {"recall", m.recall},
                {"f1", m.f1},
                {"precision_unifications_only", m.precision_unf},
                {"recall_unifications_only", m.recall_unf},
                {"f1_unifications_only", m.f1_unf},
                {"unification_accuracy", m.unification_accuracy},
                {"questions", m.questions},
                {"excluded_empty_gold", m.excluded_empty_gold},
                {"averaging", m.macro ? "macro" : "micro"}};
}

json buckets_to_json(const std::vector<BucketRow>& rows) {
    json out = json::array();
    for (const auto& r : rows)
        out.push_back(json{{"band", r.label},
                           {"n", r.count},
                           {"accuracy_us", r.accuracy_us},
                           {"accuracy_no_us", r.accuracy_no_us}});
    return out;
}

}  // namespace

json EvalReport::to_json() const {
    json out{{"format", "swcu-report"},
             {"version", 1},
             {"split", split},
             {"config", config},
             {"fingerprint", config_fingerprint},
             {"answer_accuracy", accuracy_to_json(answer_accuracy)}};
    if (explanation) out["explanation"] = metrics_to_json(*explanation);
    if (breakdown)
        out["breakdown"] = json{{"correct", metrics_to_json(breakdown->correct)},
                                {"wrong", metrics_to_json(breakdown->wrong)},
                                {"n_correct", breakdown->n_correct},
                                {"n_wrong", breakdown->n_wrong}};
    if (buckets)
        out["buckets"] = json{{"choice_overlap", buckets_to_json(buckets->overlap)},
                              {"stem_concepts", buckets_to_json(buckets->stem_concepts)}};
    return out;
}

std::string EvalReport::pretty() const {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    const auto& a = answer_accuracy;
    os << "answer accuracy (" << split << ", n=" << a.n << ")\n";
    os << "  overall " << a.overall << "  easy " << a.easy << "  challenge " << a.challenge
       << "  @2 " << a.at2 << "  fallbacks " << a.fallback_count << "\n";
    if (explanation) {
        const auto& m = *explanation;
        os << "explanation quality (" << (m.macro ? "macro" : "micro") << ", n=" << m.questions
           << ", no-gold excluded from recall: " << m.excluded_empty_gold << ")\n";
        os << "  precision " << m.precision << "  recall " << m.recall << "  f1 " << m.f1
           << "  unf-acc " << m.unification_accuracy << "\n";
        os << "  unifications only: precision " << m.precision_unf << "  recall " << m.recall_unf
           << "  f1 " << m.f1_unf << "\n";
    }
    if (breakdown) {
        os << "prediction breakdown\n";
        auto row = [&](const char* name, const ExplanationMetrics& m, size_t n) {
            os << "  " << name << " (n=" << n << "): accurate-unf " << m.unification_accuracy
               << "  spurious-unf " << 100.0 - m.unification_accuracy << "  precision "
               << m.precision << "  recall " << m.recall << "  f1 " << m.f1 << "\n";
        };
        row("correct", breakdown->correct, breakdown->n_correct);
        row("wrong", breakdown->wrong, breakdown->n_wrong);
    }
    if (buckets) {
        os << "choice-overlap buckets (accuracy US / no-US)\n";
        for (const auto& r : buckets->overlap)
            os << "  " << r.label << " (n=" << r.count << "): " << r.accuracy_us << " / "
               << r.accuracy_no_us << "\n";
        os << "stem-concept buckets (accuracy US / no-US)\n";
        for (const auto& r : buckets->stem_concepts)
            os << "  " << r.label << " (n=" << r.count << "): " << r.accuracy_us << " / "
               << r.accuracy_no_us << "\n";
    }
    return os.str();
}

AblationPreset preset_from_string(std::string_view name) {
    if (name == "ps") return AblationPreset::Ps;
    if (name == "abs-ps") return AblationPreset::AbsPs;
    if (name == "abs-ps-rs") return AblationPreset::AbsPsRs;
    if (name == "full") return AblationPreset::Full;
    throw ConfigError("unknown ablation preset: " + std::string(name) +
                      " (expected ps|abs-ps|abs-ps-rs|full)");
}

std::string_view to_string(AblationPreset p) {
    switch (p) {
        case AblationPreset::Ps: return "ps";
        case AblationPreset::AbsPs: return "abs-ps";
        case AblationPreset::AbsPsRs: return "abs-ps-rs";
        default: return "full";
    }
}

PipelineConfig apply_preset(PipelineConfig base, AblationPreset p) {
    base.plausibility = true;
    base.abstraction = p != AblationPreset::Ps;
    base.relevance = p == AblationPreset::AbsPsRs || p == AblationPreset::Full;
    base.unification = p == AblationPreset::Full;
    return base;
}

}  // namespace swcu
