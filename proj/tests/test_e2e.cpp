#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "swcu/answers_io.hpp"
#include "swcu/error.hpp"
#include "swcu/eval.hpp"
#include "swcu/ingest.hpp"
#include "swcu/pipeline.hpp"
#include "swcu/snapshot.hpp"
#include "synth.hpp"

using namespace swcu;

namespace {

const std::filesystem::path& corpus_root() {
    static std::filesystem::path root = [] {
        auto dir = test::scratch_dir("synth_corpus");
        synth::write_corpus(dir);
        return dir;
    }();
    return root;
}

const Snapshot& synth_snapshot() {
    static Snapshot snap = [] {
        IngestOptions opts;
        opts.tables_dir = corpus_root() / "tables";
        opts.questions_dir = corpus_root() / "questions";
        opts.wordnet_dir = corpus_root() / "wordnet";
        opts.stopwords_path = test::data_dir() / "stopwords.txt";
        opts.expected_split_sizes = {0, 0, 0};
        return ingest(opts);
    }();
    return snap;
}

double run_accuracy(const Snapshot& snap, const PipelineConfig& cfg, Split split) {
    Engine engine(snap.fkb, snap.ekb, cfg);
    auto questions = snap.questions_for(split);
    auto answers = engine.answer_all(questions, 2);
    return accuracy(answers, questions).overall;
}

}  // namespace

TEST_CASE("synthetic corpus ingests with expected shape") {
    const Snapshot& snap = synth_snapshot();
    // 12 families: 72 kindof + 12 synonymy + 6 opposites + 12 laws + 12 traps + 24 noise
    CHECK(snap.fkb.size() == 138);
    CHECK(snap.questions.size() == 12 * (5 + 2 + 5));
    CHECK(snap.ekb.size() == 60);
    CHECK(snap.stats.dangling_gold_ids == 0);

    size_t abstractive = 0;
    for (const auto& f : snap.fkb.facts()) abstractive += f.role == Role::Abstractive;
    CHECK(abstractive == 72 + 12 + 6);

    for (const auto& q : snap.questions) {
        CHECK(q.choices.size() == 4);
        CHECK(q.find_choice(q.correct_label) != nullptr);
        CHECK(!q.stem_concepts.empty());
    }
}

TEST_CASE("full model answers the synthetic test split well above chance") {
    const Snapshot& snap = synth_snapshot();
    PipelineConfig cfg;
    cfg.validate = true;
    const double acc = run_accuracy(snap, cfg, Split::Test);
    MESSAGE("full-model synthetic test accuracy: ", acc);
    CHECK(acc > 60.0);  // 4 choices, chance = 25
}

TEST_CASE("unification score lifts accuracy on the planted patterns") {
    const Snapshot& snap = synth_snapshot();
    PipelineConfig full;
    PipelineConfig no_us = full;
    no_us.unification = false;
    const double with_us = run_accuracy(snap, full, Split::Test);
    const double without_us = run_accuracy(snap, no_us, Split::Test);
    MESSAGE("US on: ", with_us, "  US off: ", without_us);
    CHECK(with_us > without_us);
}

TEST_CASE("abstraction step lifts the plausibility-only model") {
    const Snapshot& snap = synth_snapshot();
    PipelineConfig base;
    const double ps_only = run_accuracy(snap, apply_preset(base, AblationPreset::Ps), Split::Test);
    const double abs_ps = run_accuracy(snap, apply_preset(base, AblationPreset::AbsPs), Split::Test);
    const double abs_ps_rs =
        run_accuracy(snap, apply_preset(base, AblationPreset::AbsPsRs), Split::Test);
    const double full = run_accuracy(snap, apply_preset(base, AblationPreset::Full), Split::Test);
    MESSAGE("ps: ", ps_only, " abs+ps: ", abs_ps, " abs+ps+rs: ", abs_ps_rs, " full: ", full);
    CHECK(abs_ps > ps_only);
    CHECK(full >= abs_ps_rs);
    CHECK(full > ps_only);
}

TEST_CASE("answers.jsonl is byte-identical across worker counts") {
    const Snapshot& snap = synth_snapshot();
    auto dir = test::scratch_dir("determinism");
    PipelineConfig cfg;
    Engine engine(snap.fkb, snap.ekb, cfg);
    auto questions = snap.questions_for(Split::Test);

    AnswersFile one, four;
    one.split = four.split = "test";
    one.config = four.config = nlohmann::json{{"workers", "independent"}};
    one.answers = engine.answer_all(questions, 1);
    four.answers = engine.answer_all(questions, 4);
    save_answers(dir / "w1.jsonl", one, snap.fkb);
    save_answers(dir / "w4.jsonl", four, snap.fkb);
    CHECK(test::read_file(dir / "w1.jsonl") == test::read_file(dir / "w4.jsonl"));
}

TEST_CASE("snapshot round-trip preserves the full synthetic run") {
    const Snapshot& snap = synth_snapshot();
    auto dir = test::scratch_dir("synth_snapshot");
    Snapshot with_index = snap;
    with_index.fact_index = Engine::build_fact_index(snap.fkb, {});
    with_index.ekb_index = Engine::build_ekb_index(snap.ekb, {});
    save_snapshot(dir / "snap.jsonl", with_index);
    Snapshot loaded = load_snapshot(dir / "snap.jsonl");
    save_snapshot(dir / "snap2.jsonl", loaded);
    CHECK(test::read_file(dir / "snap.jsonl") == test::read_file(dir / "snap2.jsonl"));

    PipelineConfig cfg;
    Engine a(snap.fkb, snap.ekb, cfg);
    Engine b(loaded.fkb, loaded.ekb, cfg, *loaded.fact_index, loaded.ekb_index);
    auto questions = snap.questions_for(Split::Dev);
    auto ra = a.answer_all(questions, 1);
    auto rb = b.answer_all(questions, 1);
    for (size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].chosen_label == rb[i].chosen_label);
        for (size_t j = 0; j < ra[i].hypothesis_scores.size(); ++j)
            CHECK(ra[i].hypothesis_scores[j].second == rb[i].hypothesis_scores[j].second);
    }
}

TEST_CASE("dev-split explanation metrics are populated and sane") {
    const Snapshot& snap = synth_snapshot();
    PipelineConfig cfg;
    Engine engine(snap.fkb, snap.ekb, cfg);
    auto questions = snap.questions_for(Split::Dev);
    auto answers = engine.answer_all(questions, 2);
    auto m = explanation_metrics(answers, questions, snap.fkb);
    MESSAGE("dev precision ", m.precision, " recall ", m.recall, " unf-acc ",
            m.unification_accuracy);
    CHECK(m.questions == questions.size());
    CHECK(m.precision >= 0.0);
    CHECK(m.precision <= 100.0);
    CHECK(m.unification_accuracy > 0.0);
    CHECK(m.f1 >= std::min(m.precision, m.recall));
    CHECK(m.f1 <= std::max(m.precision, m.recall));

    auto b = breakdown_by_correctness(answers, questions, snap.fkb);
    CHECK(b.n_correct + b.n_wrong == questions.size());
}

TEST_CASE("hypothesis score is monotone in K across the dev split") {
    const Snapshot& snap = synth_snapshot();
    std::vector<double> prev;
    for (size_t k = 1; k <= 3; ++k) {
        PipelineConfig cfg;
        cfg.top_k_unifications = k;
        Engine engine(snap.fkb, snap.ekb, cfg);
        std::vector<double> scores;
        for (const auto& q : snap.questions_for(Split::Dev))
            for (const auto& h : build_hypotheses(q))
                scores.push_back(engine.evaluate_hypothesis(h).score);
        if (!prev.empty()) {
            REQUIRE(scores.size() == prev.size());
            for (size_t i = 0; i < scores.size(); ++i) CHECK(scores[i] >= prev[i] - 1e-12);
        }
        prev = std::move(scores);
    }
}

TEST_CASE("ARC mode: WordNet-synthesized abstraction replaces the corpus tables") {
    IngestOptions opts;
    opts.tables_dir = corpus_root() / "tables";
    opts.questions_dir = corpus_root() / "questions";
    opts.wordnet_dir = corpus_root() / "wordnet";
    opts.stopwords_path = test::data_dir() / "stopwords.txt";
    opts.expected_split_sizes = {0, 0, 0};
    opts.arc_mode = true;
    Snapshot arc = ingest(opts);

    CHECK(arc.mode == "arc");
    CHECK(arc.stats.dropped_abstractive == 72 + 12 + 6);
    CHECK(arc.stats.synthesized_facts > 0);
    for (const auto& f : arc.fkb.facts())
        if (f.role == Role::Abstractive) CHECK(f.table == "WORDNET");
    // gold ids referencing dropped abstractive facts were pruned
    CHECK(arc.stats.dangling_gold_ids > 0);

    PipelineConfig cfg;
    const double acc = run_accuracy(arc, cfg, Split::Test);
    MESSAGE("ARC-mode synthetic accuracy: ", acc);
    CHECK(acc > 40.0);  // abstraction from WordNet relations still works
}

TEST_CASE("error buckets populate and partition the synthetic test split") {
    const Snapshot& snap = synth_snapshot();
    PipelineConfig full;
    PipelineConfig no_us = full;
    no_us.unification = false;
    Engine e_us(snap.fkb, snap.ekb, full);
    Engine e_no(snap.fkb, snap.ekb, no_us);
    auto questions = snap.questions_for(Split::Test);
    auto us_run = e_us.answer_all(questions, 2);
    auto no_run = e_no.answer_all(questions, 2);
    auto buckets = error_buckets(us_run, no_run, questions);
    size_t total = 0;
    for (const auto& row : buckets.overlap) total += row.count;
    CHECK(total == questions.size());
    size_t total2 = 0;
    for (const auto& row : buckets.stem_concepts) total2 += row.count;
    CHECK(total2 == questions.size());
}
