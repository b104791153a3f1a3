#include "swcu/pipeline.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "swcu/error.hpp"

namespace swcu {

void PipelineConfig::check() const {
    if (lambda1_analogical < 0.0 || lambda2_analogical < 0.0 || lambda1_explanatory < 0.0 ||
        lambda2_explanatory < 0.0)
        throw ConfigError("lambdas must be non-negative");
    if (top_k_unifications == 0) throw ConfigError("K (top unifications) must be >= 1");
    if (bm25.k1 < 0.0 || bm25.b < 0.0 || bm25.b > 1.0)
        throw ConfigError("BM25 parameters out of range (k1 >= 0, 0 <= b <= 1)");
}

Bm25Index Engine::build_fact_index(const FactsKB& fkb, Bm25Params params) {
    std::vector<std::string> docs;
    docs.reserve(fkb.size());
    for (const auto& f : fkb.facts()) docs.push_back(f.text);
    return Bm25Index::build(docs, params);
}

std::optional<Bm25Index> Engine::build_ekb_index(const ExplanationsKB& ekb, Bm25Params params) {
    if (ekb.empty()) return std::nullopt;
    std::vector<std::string> docs;
    docs.reserve(ekb.size());
    for (const auto& e : ekb.entries) docs.push_back(e.hypothesis.text);
    return Bm25Index::build(docs, params);
}

Engine::Engine(const FactsKB& fkb, const ExplanationsKB& ekb, PipelineConfig cfg)
    : Engine(fkb, ekb, cfg, build_fact_index(fkb, cfg.bm25), build_ekb_index(ekb, cfg.bm25)) {}

Engine::Engine(const FactsKB& fkb, const ExplanationsKB& ekb, PipelineConfig cfg,
               Bm25Index fact_index, std::optional<Bm25Index> ekb_index)
    : fkb_(fkb), ekb_(ekb), cfg_(cfg), fact_index_(std::move(fact_index)),
      ekb_index_(std::move(ekb_index)) {
    cfg_.check();
    if (fkb_.empty()) throw Error("engine requires a non-empty facts KB");
    if (fact_index_.num_docs() != fkb_.size())
        throw FormatError("fact index size does not match the facts KB");
    if (ekb_index_ && ekb_index_->num_docs() != ekb_.size())
        throw FormatError("EKB index size does not match the explanations KB");
}

HypothesisEvaluation Engine::evaluate_hypothesis(const Hypothesis& h) const {
    HypothesisEvaluation ev;
    ev.hypothesis = h;
    ev.degenerate = h.concepts.empty();

    const SparseVector query = fact_index_.vectorize_query(h.text);
    const std::vector<double> rs_all = fact_index_.cosine_all(query);

    std::vector<double> us_all(fkb_.size(), 0.0);
    if (cfg_.unification && ekb_index_) {
        auto neighbours = knn_hypotheses(ekb_index_->vectorize_query(h.text), *ekb_index_,
                                         cfg_.k_neighbours);
        us_all = unification_scores(neighbours, ekb_, fkb_.size());
    }

    PoolParams pp;
    pp.n_abs = cfg_.abstraction ? cfg_.n_abs : 0;
    pp.n_unf = cfg_.n_unf;
    pp.lambda1 = cfg_.lambda1_analogical;
    pp.lambda2 = cfg_.lambda2_analogical;
    pp.rs_scored = cfg_.relevance;
    pp.us_enabled = cfg_.unification;
    ev.pools = candidate_pools(rs_all, us_all, fkb_, pp);

    const ExpansionSets exp = expansion_sets(h.concepts, ev.pools.cabs, fkb_);
    ev.candidates = construct_explanations(h.concepts, ev.pools, fkb_, exp);
    score_explanations(ev.candidates, fkb_, cfg_.lambda1_explanatory, cfg_.lambda2_explanatory,
                       cfg_.plausibility);
    ev.score = hypothesis_score(ev.candidates, cfg_.top_k_unifications);

    if (cfg_.validate) {
        for (const auto& cand : ev.candidates) {
            auto violations =
                validate_candidate(h.concepts, cand, fkb_, cfg_.lambda1_explanatory,
                                   cfg_.plausibility ? cfg_.lambda2_explanatory : 0.0);
            if (!violations.empty())
                throw Error("structural violation for hypothesis '" + h.text +
                            "': " + violations.front());
        }
    }
    return ev;
}

ScoredAnswer Engine::answer(const QuestionRecord& q) const {
    const auto hypotheses = build_hypotheses(q);
    ScoredAnswer out;
    out.question_id = q.id;
    out.fallback = true;
    size_t best = 0;
    double best_score = -1.0;
    for (size_t j = 0; j < hypotheses.size(); ++j) {
        HypothesisEvaluation ev = evaluate_hypothesis(hypotheses[j]);
        if (!ev.candidates.empty()) out.fallback = false;
        if (ev.score > best_score) {
            best_score = ev.score;
            best = j;
        }
        out.hypothesis_scores.emplace_back(hypotheses[j].choice_label, ev.score);
        if (ev.candidates.size() > cfg_.top_k_unifications)
            ev.candidates.resize(cfg_.top_k_unifications);
        out.top_explanations.push_back(std::move(ev.candidates));
    }
    out.chosen_label = q.choices[best].label;
    return out;
}

std::vector<ScoredAnswer> Engine::answer_all(const std::vector<QuestionRecord>& questions,
                                             int workers) const {
    std::vector<ScoredAnswer> out(questions.size());
    if (questions.empty()) return out;
    const size_t n_threads =
        std::min<size_t>(std::max(workers, 1), questions.size());

    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= questions.size()) return;
            try {
                out[i] = answer(questions[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (n_threads == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace swcu
