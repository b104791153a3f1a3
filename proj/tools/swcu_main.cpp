// swcu: step-wise conceptual unification engine for multiple-choice science QA.
// Subcommands: ingest, index, answer, explain, evaluate, ablate.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "swcu/answers_io.hpp"
#include "swcu/config.hpp"
#include "swcu/error.hpp"
#include "swcu/eval.hpp"
#include "swcu/ingest.hpp"
#include "swcu/pipeline.hpp"
#include "swcu/snapshot.hpp"

using namespace swcu;
using nlohmann::json;

namespace {

void add_pipeline_flags(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--k-neighbours", cfg.pipeline.k_neighbours,
                    "kNN size over the explanations KB")
        ->envname("SWCU_K_NEIGHBOURS")
        ->capture_default_str();
    cmd->add_option("--n-abs", cfg.pipeline.n_abs, "candidate abstractive pool size")
        ->envname("SWCU_N_ABS")
        ->capture_default_str();
    cmd->add_option("--n-unf", cfg.pipeline.n_unf, "candidate unification pool size")
        ->envname("SWCU_N_UNF")
        ->capture_default_str();
    cmd->add_option("-K,--k-unifications", cfg.pipeline.top_k_unifications,
                    "top unifications summed into the hypothesis score")
        ->envname("SWCU_K_UNIFICATIONS")
        ->capture_default_str();
    cmd->add_option("--lambda1-analogical", cfg.pipeline.lambda1_analogical,
                    "relevance weight in the analogical score")
        ->envname("SWCU_LAMBDA1_ANALOGICAL")
        ->capture_default_str();
    cmd->add_option("--lambda2-analogical", cfg.pipeline.lambda2_analogical,
                    "unification weight in the analogical score")
        ->envname("SWCU_LAMBDA2_ANALOGICAL")
        ->capture_default_str();
    cmd->add_option("--lambda1-explanatory", cfg.pipeline.lambda1_explanatory,
                    "analogical weight in the explanatory score")
        ->envname("SWCU_LAMBDA1_EXPLANATORY")
        ->capture_default_str();
    cmd->add_option("--lambda2-explanatory", cfg.pipeline.lambda2_explanatory,
                    "plausibility weight in the explanatory score")
        ->envname("SWCU_LAMBDA2_EXPLANATORY")
        ->capture_default_str();
    cmd->add_option("--bm25-k1", cfg.pipeline.bm25.k1, "BM25 k1")
        ->envname("SWCU_BM25_K1")
        ->capture_default_str();
    cmd->add_option("--bm25-b", cfg.pipeline.bm25.b, "BM25 b")
        ->envname("SWCU_BM25_B")
        ->capture_default_str();
    cmd->add_flag("--disable-abs{false}", cfg.pipeline.abstraction, "ablate the abstraction step");
    cmd->add_flag("--disable-ps{false}", cfg.pipeline.plausibility, "ablate the plausibility score");
    cmd->add_flag("--disable-rs{false}", cfg.pipeline.relevance, "ablate the relevance score");
    cmd->add_flag("--disable-us{false}", cfg.pipeline.unification, "ablate the unification score");
    cmd->add_flag("--validate", cfg.pipeline.validate,
                  "check structural constraints on every emitted explanation");
    cmd->add_option("--workers", cfg.workers, "parallel question workers")
        ->envname("SWCU_WORKERS")
        ->capture_default_str();
}

// Engine holds references into the snapshot; keep both together.
struct LoadedEngine {
    std::unique_ptr<Snapshot> snapshot;
    std::unique_ptr<Engine> engine;
};

LoadedEngine make_engine(const std::string& snapshot_path, const Config& cfg) {
    LoadedEngine le;
    le.snapshot = std::make_unique<Snapshot>(load_snapshot(snapshot_path));
    Snapshot& snap = *le.snapshot;
    const bool reuse = snap.fact_index && snap.fact_index->params() == cfg.pipeline.bm25 &&
                       snap.fact_index->num_docs() == snap.fkb.size() &&
                       (snap.ekb.empty() ||
                        (snap.ekb_index && snap.ekb_index->params() == cfg.pipeline.bm25 &&
                         snap.ekb_index->num_docs() == snap.ekb.size()));
    if (reuse) {
        le.engine = std::make_unique<Engine>(snap.fkb, snap.ekb, cfg.pipeline, *snap.fact_index,
                                             snap.ekb_index);
    } else {
        le.engine = std::make_unique<Engine>(snap.fkb, snap.ekb, cfg.pipeline);
    }
    return le;
}

std::vector<QuestionRecord> split_questions(const Snapshot& snap, const std::string& split_name) {
    auto qs = snap.questions_for(split_from_string(split_name));
    if (qs.empty()) throw ConfigError("snapshot has no questions for split '" + split_name + "'");
    return qs;
}

AnswersFile run_answers(const Engine& engine, const std::vector<QuestionRecord>& questions,
                        const Config& cfg, const std::string& split_name) {
    AnswersFile out;
    out.config = cfg.semantic_json();
    out.fingerprint = cfg.fingerprint();
    out.split = split_name;
    out.answers = engine.answer_all(questions, cfg.workers);
    return out;
}

EvalReport build_report(const Snapshot& snap, const std::vector<QuestionRecord>& questions,
                        const AnswersFile& answers, const Config& cfg, bool macro,
                        bool with_buckets) {
    EvalReport report;
    report.split = answers.split;
    report.config = answers.config;
    report.config_fingerprint = answers.fingerprint;
    report.answer_accuracy = accuracy(answers.answers, questions);

    const bool any_gold =
        std::any_of(questions.begin(), questions.end(),
                    [](const QuestionRecord& q) { return !q.gold_explanation.empty(); });
    if (any_gold) {
        report.explanation = explanation_metrics(answers.answers, questions, snap.fkb, macro);
        report.breakdown = breakdown_by_correctness(answers.answers, questions, snap.fkb, macro);
    }
    if (with_buckets) {
        // counterpart run with the unification score toggled
        Config other = cfg;
        apply_semantic_json(other, answers.config);
        const bool us_was_on = other.pipeline.unification;
        other.pipeline.unification = !us_was_on;
        Engine counterpart(snap.fkb, snap.ekb, other.pipeline);
        auto other_answers = counterpart.answer_all(questions, cfg.workers);
        const auto& us_run = us_was_on ? answers.answers : other_answers;
        const auto& no_us_run = us_was_on ? other_answers : answers.answers;
        report.buckets = error_buckets(us_run, no_us_run, questions);
    }
    return report;
}

void write_report(const std::string& path, const json& body) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write report: " + path);
    out << body.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"step-wise conceptual unification engine"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    Config cfg;

    auto* cmd_ingest = app.add_subcommand("ingest", "parse corpus + lexicon into a snapshot");
    std::string out_path;
    bool arc_mode = false, no_expected_splits = false;
    cmd_ingest->add_option("--tables", cfg.tables_dir, "fact table directory (TSV)")
        ->envname("SWCU_TABLES")
        ->required();
    cmd_ingest->add_option("--questions", cfg.questions_dir, "question file directory")
        ->envname("SWCU_QUESTIONS")
        ->required();
    cmd_ingest->add_option("--wordnet", cfg.wordnet_dir, "WordNet 3.x database directory")
        ->envname("SWCU_WORDNET")
        ->required();
    cmd_ingest->add_option("--stopwords", cfg.stopwords_path, "stopword list")
        ->envname("SWCU_STOPWORDS")
        ->capture_default_str();
    cmd_ingest->add_option("--out", out_path, "snapshot output path")->required();
    cmd_ingest->add_flag("--arc-mode", arc_mode,
                         "substitute abstractive facts with WordNet relations");
    cmd_ingest->add_flag("--no-expected-splits", no_expected_splits,
                         "skip the 1190/264/1247 split-size check");

    auto* cmd_index = app.add_subcommand("index", "(re)build BM25 indexes inside a snapshot");
    std::string index_out;
    cmd_index->add_option("--snapshot", cfg.snapshot_path, "snapshot path")->required();
    cmd_index->add_option("--out", index_out, "output path (default: rewrite in place)");
    cmd_index->add_option("--bm25-k1", cfg.pipeline.bm25.k1, "BM25 k1")->capture_default_str();
    cmd_index->add_option("--bm25-b", cfg.pipeline.bm25.b, "BM25 b")->capture_default_str();

    auto* cmd_answer = app.add_subcommand("answer", "run the pipeline over a question split");
    std::string split_name = "test";
    std::string answers_path;
    cmd_answer->add_option("--snapshot", cfg.snapshot_path, "snapshot path")
        ->envname("SWCU_SNAPSHOT")
        ->required();
    cmd_answer->add_option("--split", split_name, "train|dev|test")->capture_default_str();
    cmd_answer->add_option("--out", answers_path, "answers.jsonl output")->required();
    add_pipeline_flags(cmd_answer, cfg);

    auto* cmd_explain = app.add_subcommand("explain", "export evidence files or dump pools");
    std::string explain_qid, evidence_dir, explain_split = "test";
    bool dump_pools = false;
    cmd_explain->add_option("--snapshot", cfg.snapshot_path, "snapshot path")
        ->envname("SWCU_SNAPSHOT")
        ->required();
    cmd_explain->add_option("--split", explain_split, "split to export")->capture_default_str();
    cmd_explain->add_option("--question-id", explain_qid, "single question to inspect");
    cmd_explain->add_flag("--dump-pools", dump_pools,
                          "emit candidate pools with score breakdowns (JSONL)");
    cmd_explain->add_option("--out-dir", evidence_dir, "evidence file directory");
    add_pipeline_flags(cmd_explain, cfg);

    auto* cmd_eval = app.add_subcommand("evaluate", "score an answers file (or run an ablation)");
    std::string eval_answers, eval_report, eval_ablation, eval_split = "test";
    bool macro = false, no_buckets = false;
    cmd_eval->add_option("--snapshot", cfg.snapshot_path, "snapshot path")
        ->envname("SWCU_SNAPSHOT")
        ->required();
    cmd_eval->add_option("--answers", eval_answers, "answers.jsonl to evaluate");
    cmd_eval->add_option("--ablation", eval_ablation,
                         "run a preset instead: ps|abs-ps|abs-ps-rs|full");
    cmd_eval->add_option("--split", eval_split, "split (for --ablation runs)")
        ->capture_default_str();
    cmd_eval->add_option("--report", eval_report, "report.json output");
    cmd_eval->add_flag("--macro", macro, "macro-average explanation metrics");
    cmd_eval->add_flag("--no-buckets", no_buckets, "skip the error-analysis buckets");
    add_pipeline_flags(cmd_eval, cfg);

    auto* cmd_ablate = app.add_subcommand("ablate", "run all four ablation presets");
    std::string ablate_report, ablate_split = "test";
    cmd_ablate->add_option("--snapshot", cfg.snapshot_path, "snapshot path")
        ->envname("SWCU_SNAPSHOT")
        ->required();
    cmd_ablate->add_option("--split", ablate_split, "split")->capture_default_str();
    cmd_ablate->add_option("--report", ablate_report, "combined report.json output");
    add_pipeline_flags(cmd_ablate, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_ingest) {
            IngestOptions opts;
            opts.tables_dir = cfg.tables_dir;
            opts.questions_dir = cfg.questions_dir;
            opts.wordnet_dir = cfg.wordnet_dir;
            opts.stopwords_path = cfg.stopwords_path;
            opts.arc_mode = arc_mode;
            if (no_expected_splits) opts.expected_split_sizes = {0, 0, 0};
            cfg.mode = opts.arc_mode ? "arc" : "worldtree";

            std::vector<std::string> warnings;
            Snapshot snap = ingest(opts, &warnings);
            snap.config = cfg.semantic_json();
            snap.fingerprint = cfg.fingerprint();
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
            save_snapshot(out_path, snap);
            std::cout << "snapshot written: " << out_path << " (" << snap.fkb.size() << " facts, "
                      << snap.questions.size() << " questions, " << snap.ekb.size()
                      << " EKB entries)\n";
        } else if (*cmd_index) {
            Snapshot snap = load_snapshot(cfg.snapshot_path);
            snap.fact_index = Engine::build_fact_index(snap.fkb, cfg.pipeline.bm25);
            snap.ekb_index = Engine::build_ekb_index(snap.ekb, cfg.pipeline.bm25);
            const std::string target = index_out.empty() ? cfg.snapshot_path : index_out;
            save_snapshot(target, snap);
            std::cout << "indexes embedded: " << target << " (vocab "
                      << snap.fact_index->vocab_size() << " terms, "
                      << (snap.ekb_index ? snap.ekb_index->num_docs() : 0) << " EKB docs)\n";
        } else if (*cmd_answer) {
            auto le = make_engine(cfg.snapshot_path, cfg);
            auto questions = split_questions(*le.snapshot, split_name);
            AnswersFile answers = run_answers(*le.engine, questions, cfg, split_name);
            save_answers(answers_path, answers, le.snapshot->fkb);
            size_t correct = 0;
            for (size_t i = 0; i < questions.size(); ++i)
                correct += answers.answers[i].chosen_label == questions[i].correct_label;
            std::cout << "answered " << questions.size() << " questions -> " << answers_path
                      << " (correct: " << correct << ")\n";
        } else if (*cmd_explain) {
            auto le = make_engine(cfg.snapshot_path, cfg);
            if (!explain_qid.empty()) {
                const QuestionRecord* q = nullptr;
                for (const auto& cand : le.snapshot->questions)
                    if (cand.id == explain_qid) q = &cand;
                if (!q) throw ConfigError("unknown question id: " + explain_qid);
                if (dump_pools) {
                    for (const auto& h : build_hypotheses(*q)) {
                        auto ev = le.engine->evaluate_hypothesis(h);
                        std::cout << evaluation_to_json(ev, le.snapshot->fkb).dump() << "\n";
                    }
                } else {
                    if (evidence_dir.empty()) throw ConfigError("--out-dir required");
                    std::vector<ScoredAnswer> one{le.engine->answer(*q)};
                    write_evidence_files(evidence_dir, one, le.snapshot->fkb);
                    std::cout << "evidence written for " << explain_qid << "\n";
                }
            } else {
                if (evidence_dir.empty()) throw ConfigError("--out-dir required");
                auto questions = split_questions(*le.snapshot, explain_split);
                auto answers = le.engine->answer_all(questions, cfg.workers);
                write_evidence_files(evidence_dir, answers, le.snapshot->fkb);
                std::cout << "evidence files for " << answers.size() << " questions -> "
                          << evidence_dir << "\n";
            }
        } else if (*cmd_eval) {
            if (eval_answers.empty() == eval_ablation.empty())
                throw ConfigError("evaluate needs exactly one of --answers or --ablation");
            auto le = make_engine(cfg.snapshot_path, cfg);

            AnswersFile answers;
            if (!eval_answers.empty()) {
                answers = load_answers(eval_answers, le.snapshot->fkb);
                Config echoed = cfg;
                apply_semantic_json(echoed, answers.config);
                if (echoed.fingerprint() != answers.fingerprint)
                    std::cerr
                        << "warning: answers file fingerprint does not match its config echo\n";
                cfg = echoed;
            } else {
                cfg.pipeline = apply_preset(cfg.pipeline, preset_from_string(eval_ablation));
                Engine engine(le.snapshot->fkb, le.snapshot->ekb, cfg.pipeline);
                answers =
                    run_answers(engine, split_questions(*le.snapshot, eval_split), cfg, eval_split);
            }
            auto questions = split_questions(*le.snapshot, answers.split);
            EvalReport report =
                build_report(*le.snapshot, questions, answers, cfg, macro, !no_buckets);
            std::cout << report.pretty();
            write_report(eval_report, report.to_json());
            if (!eval_report.empty()) std::cout << "report written: " << eval_report << "\n";
        } else if (*cmd_ablate) {
            auto le = make_engine(cfg.snapshot_path, cfg);
            auto questions = split_questions(*le.snapshot, ablate_split);
            json combined{{"format", "swcu-ablation-report"},
                          {"version", 1},
                          {"split", ablate_split},
                          {"presets", json::object()}};
            std::printf("%-12s %8s %8s %10s %8s\n", "preset", "overall", "easy", "challenge",
                        "@2");
            for (auto preset : {AblationPreset::Ps, AblationPreset::AbsPs, AblationPreset::AbsPsRs,
                                AblationPreset::Full}) {
                Config preset_cfg = cfg;
                preset_cfg.pipeline = apply_preset(cfg.pipeline, preset);
                Engine engine(le.snapshot->fkb, le.snapshot->ekb, preset_cfg.pipeline);
                AnswersFile answers = run_answers(engine, questions, preset_cfg, ablate_split);
                EvalReport report =
                    build_report(*le.snapshot, questions, answers, preset_cfg, macro, false);
                const auto& a = report.answer_accuracy;
                std::printf("%-12s %8.2f %8.2f %10.2f %8.2f\n",
                            std::string(to_string(preset)).c_str(), a.overall, a.easy, a.challenge,
                            a.at2);
                combined["presets"][std::string(to_string(preset))] = report.to_json();
            }
            write_report(ablate_report, combined);
            if (!ablate_report.empty()) std::cout << "report written: " << ablate_report << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
