#include "oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace oracle {

int Lexicon::max_len() const {
    int best = 0;
    for (const auto& l : lemmas) {
        int words = 1 + static_cast<int>(std::count(l.begin(), l.end(), ' '));
        best = std::max(best, words);
    }
    return best;
}

std::vector<std::string> tokens(const std::string& text) {
    std::string lowered;
    for (char c : text)
        lowered.push_back(std::isalnum(static_cast<unsigned char>(c))
                              ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                              : ' ');
    std::istringstream is(lowered);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::optional<std::string> morph(const std::string& t, const Lexicon& lex) {
    const size_t n = t.size();
    auto ends = [&](const std::string& suf) {
        return n >= suf.size() && t.compare(n - suf.size(), suf.size(), suf) == 0;
    };
    std::vector<std::string> cands;
    if (n >= 5 && (ends("ses") || ends("xes") || ends("zes"))) cands.push_back(t.substr(0, n - 2));
    if (n >= 6 && (ends("ches") || ends("shes"))) cands.push_back(t.substr(0, n - 2));
    if (n >= 5 && ends("ies")) cands.push_back(t.substr(0, n - 3) + "y");
    if (n >= 4 && ends("es")) cands.push_back(t.substr(0, n - 2));
    if (n >= 3 && ends("s") && !ends("ss")) cands.push_back(t.substr(0, n - 1));
    if (n >= 5 && ends("ied")) cands.push_back(t.substr(0, n - 3) + "y");
    if (n >= 4 && ends("ed")) {
        std::string stem = t.substr(0, n - 2);
        cands.push_back(stem);
        cands.push_back(stem + "e");
        if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2])
            cands.push_back(stem.substr(0, stem.size() - 1));
    }
    if (n >= 5 && ends("ing")) {
        std::string stem = t.substr(0, n - 3);
        cands.push_back(stem);
        cands.push_back(stem + "e");
        if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2])
            cands.push_back(stem.substr(0, stem.size() - 1));
    }
    for (const auto& c : cands)
        if (c.size() >= 2 && lex.lemmas.count(c)) return c;
    return std::nullopt;
}

std::set<std::string> concepts(const std::string& text, const Lexicon& lex) {
    const auto toks = tokens(text);
    const int max_len = lex.max_len();
    std::set<std::string> out;
    size_t i = 0;
    while (i < toks.size()) {
        if (lex.stopwords.count(toks[i])) { ++i; continue; }
        size_t matched = 0;
        for (size_t len = std::min<size_t>(max_len, toks.size() - i); len >= 1; --len) {
            std::string window = toks[i];
            for (size_t k = 1; k < len; ++k) window += " " + toks[i + k];
            if (lex.lemmas.count(window)) {
                out.insert(window);
                matched = len;
                break;
            }
        }
        if (matched) {
            i += matched;
        } else {
            if (auto m = morph(toks[i], lex)) out.insert(*m);
            ++i;
        }
    }
    return out;
}

Bm25 Bm25::build(const std::vector<std::string>& docs, double k1, double b) {
    Bm25 idx;
    idx.k1 = k1;
    idx.b = b;
    size_t total = 0;
    for (const auto& d : docs) {
        auto toks = tokens(d);
        idx.len.push_back(toks.size());
        total += toks.size();
        std::map<std::string, int> tf;
        for (const auto& t : toks) ++tf[t];
        for (const auto& [t, c] : tf) {
            (void)c;
            ++idx.df[t];
        }
        idx.tf.push_back(std::move(tf));
    }
    idx.avg = docs.empty() ? 0.0 : static_cast<double>(total) / docs.size();
    return idx;
}

double Bm25::idf(const std::string& term) const {
    auto it = df.find(term);
    if (it == df.end()) return 0.0;
    const double n = static_cast<double>(tf.size());
    const double d = static_cast<double>(it->second);
    return std::log((n - d + 0.5) / (d + 0.5) + 1.0);
}

namespace {
double bm25_weight(double idf, double tf, double k1, double b, double len, double avg) {
    return idf * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * len / avg));
}
}  // namespace

std::map<std::string, double> Bm25::doc_weights(size_t doc) const {
    std::map<std::string, double> out;
    for (const auto& [term, cnt] : tf[doc]) {
        double w = bm25_weight(idf(term), cnt, k1, b, static_cast<double>(len[doc]), avg);
        if (w > 0) out[term] = w;
    }
    return out;
}

std::map<std::string, double> Bm25::query_weights(const std::string& text) const {
    auto toks = tokens(text);
    std::map<std::string, int> qtf;
    for (const auto& t : toks)
        if (df.count(t)) ++qtf[t];
    std::map<std::string, double> out;
    for (const auto& [term, cnt] : qtf) {
        double w = bm25_weight(idf(term), cnt, k1, b, static_cast<double>(toks.size()), avg);
        if (w > 0) out[term] = w;
    }
    return out;
}

double cosine(const std::map<std::string, double>& u, const std::map<std::string, double>& v) {
    double d = 0, nu = 0, nv = 0;
    for (const auto& [t, w] : u) {
        nu += w * w;
        auto it = v.find(t);
        if (it != v.end()) d += w * it->second;
    }
    for (const auto& [t, w] : v) {
        (void)t;
        nv += w * w;
    }
    if (nu == 0 || nv == 0) return 0.0;
    double c = d / (std::sqrt(nu) * std::sqrt(nv));
    return std::min(1.0, std::max(0.0, c));
}

HypResult evaluate(const Pipeline& p, const std::string& hypothesis_text) {
    const Params& prm = p.params;
    HypResult out;
    const auto hyp_concepts = concepts(hypothesis_text, p.lex);

    std::vector<std::string> fact_texts;
    for (const auto& f : p.facts) fact_texts.push_back(f.text);
    Bm25 fact_idx = Bm25::build(fact_texts, prm.bm25_k1, prm.bm25_b);
    const auto qw = fact_idx.query_weights(hypothesis_text);
    std::vector<double> rs(p.facts.size(), 0.0);
    for (size_t i = 0; i < p.facts.size(); ++i) rs[i] = cosine(qw, fact_idx.doc_weights(i));

    std::vector<double> us(p.facts.size(), 0.0);
    if (prm.us_on && !p.ekb.empty()) {
        std::vector<std::string> ekb_texts;
        for (const auto& e : p.ekb) ekb_texts.push_back(e.text);
        Bm25 ekb_idx = Bm25::build(ekb_texts, prm.bm25_k1, prm.bm25_b);
        const auto hq = ekb_idx.query_weights(hypothesis_text);
        std::vector<std::pair<size_t, double>> sims;
        for (size_t z = 0; z < p.ekb.size(); ++z)
            sims.emplace_back(z, cosine(hq, ekb_idx.doc_weights(z)));
        std::stable_sort(sims.begin(), sims.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        sims.resize(std::min(sims.size(), prm.k_neighbours));
        for (const auto& [z, sim] : sims) {
            if (sim == 0.0) continue;
            for (size_t i = 0; i < p.facts.size(); ++i)
                if (p.ekb[z].gold.count(p.facts[i].id)) us[i] += sim;
        }
    }

    struct Pooled {
        std::string id;
        size_t idx;
        double retrieval, as;
    };
    std::vector<Pooled> abs_pool, unf_pool;
    for (size_t i = 0; i < p.facts.size(); ++i) {
        const double u = prm.us_on ? us[i] : 0.0;
        const double retrieval = prm.l1a * rs[i] + prm.l2a * u;
        if (retrieval <= 0.0) continue;
        const double as = (prm.rs_on ? prm.l1a * rs[i] : 0.0) + prm.l2a * u;
        Pooled pd{p.facts[i].id, i, retrieval, as};
        if (p.facts[i].abstractive) {
            if (prm.abs_on) abs_pool.push_back(pd);
        } else {
            unf_pool.push_back(pd);
        }
    }
    auto rank = [](std::vector<Pooled>& pool, size_t cap) {
        std::sort(pool.begin(), pool.end(), [](const Pooled& a, const Pooled& b) {
            if (a.retrieval != b.retrieval) return a.retrieval > b.retrieval;
            return a.id < b.id;
        });
        if (pool.size() > cap) pool.resize(cap);
    };
    rank(abs_pool, prm.abs_on ? prm.n_abs : 0);
    rank(unf_pool, prm.n_unf);
    for (const auto& f : abs_pool) out.pool_abs.emplace_back(f.id, f.retrieval);
    for (const auto& f : unf_pool) out.pool_unf.emplace_back(f.id, f.retrieval);

    std::map<std::string, std::set<std::string>> fact_concepts;
    for (const auto& f : p.facts) fact_concepts[f.id] = concepts(f.text, p.lex);

    // EXP(c) = {c} ∪ union of concepts of pool abstractive facts mentioning c
    std::map<std::string, std::set<std::string>> exp;
    for (const auto& c : hyp_concepts) {
        exp[c] = {c};
        for (const auto& a : abs_pool)
            if (fact_concepts[a.id].count(c))
                exp[c].insert(fact_concepts[a.id].begin(), fact_concepts[a.id].end());
    }

    auto intersects = [](const std::set<std::string>& a, const std::set<std::string>& b) {
        for (const auto& x : a)
            if (b.count(x)) return true;
        return false;
    };

    for (const auto& u : unf_pool) {
        const auto& ucp = fact_concepts[u.id];
        std::set<std::string> covered;
        for (const auto& c : hyp_concepts)
            if (intersects(exp[c], ucp)) covered.insert(c);
        if (covered.empty()) continue;
        Candidate cand;
        cand.unification = u.id;
        cand.covered = covered;
        cand.rs = rs[u.idx];
        cand.us = prm.us_on ? us[u.idx] : 0.0;
        cand.as = u.as;
        for (const auto& a : abs_pool)
            if (intersects(fact_concepts[a.id], hyp_concepts) && intersects(fact_concepts[a.id], ucp))
                cand.abstractive.insert(a.id);
        cand.ps = hyp_concepts.empty()
                      ? 0.0
                      : static_cast<double>(covered.size()) / static_cast<double>(hyp_concepts.size());
        cand.es = prm.l1e * cand.as + (prm.ps_on ? prm.l2e : 0.0) * cand.ps;
        out.candidates.push_back(std::move(cand));
    }
    std::sort(out.candidates.begin(), out.candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.es != b.es) return a.es > b.es;
        return a.unification < b.unification;
    });
    for (size_t i = 0; i < out.candidates.size() && i < prm.top_k; ++i)
        out.score += out.candidates[i].es;
    return out;
}

AnswerResult answer(const Pipeline& p, const Question& q) {
    AnswerResult out;
    out.fallback = true;
    double best = -1.0;
    size_t best_j = 0;
    for (size_t j = 0; j < q.choices.size(); ++j) {
        HypResult hr = evaluate(p, q.choices[j].second + " " + q.stem);
        if (!hr.candidates.empty()) out.fallback = false;
        out.scores.push_back(hr.score);
        if (hr.score > best) {
            best = hr.score;
            best_j = j;
        }
    }
    out.chosen = q.choices[best_j].first;
    return out;
}

}  // namespace oracle
