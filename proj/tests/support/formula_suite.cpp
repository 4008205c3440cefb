#include "formula_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

#include "oracles.hpp"
#include "phrasecom/baselines.hpp"
#include "phrasecom/compare.hpp"
#include "phrasecom/config.hpp"
#include "phrasecom/corpus.hpp"
#include "phrasecom/error.hpp"
#include "phrasecom/eval.hpp"
#include "phrasecom/graph.hpp"
#include "phrasecom/measures.hpp"
#include "phrasecom/persist.hpp"
#include "phrasecom/salience.hpp"
#include "phrasecom/solver.hpp"

#ifndef PHRASECOM_FIXTURE_DIR
#define PHRASECOM_FIXTURE_DIR "fixtures"
#endif

namespace phrasecom::testing {

std::string fixture_dir() { return PHRASECOM_FIXTURE_DIR; }

IndexBundle bridge_bundle() {
    RunConfig config;
    apply_config_file(config, fixture_dir() + "/bridge.conf");
    const auto docs = make_documents(read_corpus(fixture_dir() + "/bridge.jsonl"));
    return build_bundle(docs, config.corpus, {}, config.bm25);
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Suite {
public:
    void expect(const std::string& name, bool ok, const std::string& detail = {}) {
        checks_.push_back({name, ok, detail});
    }

    /// Implementation vs oracle at 1e-9 relative, and the oracle vs the value
    /// quoted to four decimals.
    void value(const std::string& name, double got, double want, double quoted) {
        const bool ok = oracle::close(got, want) && std::fabs(want - quoted) <= 5e-5 * std::max(1.0, std::fabs(quoted));
        expect(name, ok, "got " + fmt(got) + ", oracle " + fmt(want) + ", quoted " + fmt(quoted));
    }

    void run(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            expect(name, false, std::string("threw: ") + e.what());
        }
    }

    std::vector<Check> take() { return std::move(checks_); }

private:
    std::vector<Check> checks_;
};

std::vector<Document> docs_of(const std::vector<std::pair<std::string, std::string>>& raw) {
    std::vector<Document> out;
    for (const auto& [id, text] : raw) out.push_back(make_document(id, text));
    return out;
}

std::set<std::string> texts(const std::vector<ScoredPhrase>& phrases) {
    std::set<std::string> out;
    for (const auto& p : phrases) out.insert(p.text);
    return out;
}

// --- corpus ---------------------------------------------------------------

void mining(Suite& s) {
    s.run("mining: twelve-document support count", [&] {
        std::vector<std::pair<std::string, std::string>> raw;
        for (int i = 0; i < 12; ++i)
            raw.push_back({"d" + std::to_string(i), "Crawlers explore the web graph " +
                                                        std::string(i % 2 ? "daily." : "weekly.")});
        const auto docs = docs_of(raw);
        std::size_t support = 0;
        for (const auto& d : docs)
            for (std::size_t i = 0; i + 1 < d.lemmas.size(); ++i)
                if (d.lemmas[i] == "web" && d.lemmas[i + 1] == "graph") ++support;

        const auto found = mine_frequent_patterns(docs, 5, 10);
        auto it = std::find_if(found.begin(), found.end(),
                               [](const PhraseCandidate& c) { return c.text() == "web graph"; });
        s.expect("mining: twelve-document support count",
                 it != found.end() && it->support == support && support == 12,
                 "support " + std::to_string(it == found.end() ? 0 : it->support) + ", oracle " +
                     std::to_string(support));
    });

    s.run("quality: cohesive pair beats independent pair", [&] {
        // "solar wind" always together; "data" and "model" mostly apart.
        std::vector<std::pair<std::string, std::string>> raw;
        for (int i = 0; i < 10; ++i) {
            raw.push_back({"s" + std::to_string(i), "Solar wind reaches the probe."});
            raw.push_back({"m" + std::to_string(i), "Data flows in. Model drifts. Data model works."});
        }
        const auto docs = docs_of(raw);
        const auto counts = count_ngrams(docs, 5);

        // NPMI of the only split, from counts taken by hand.
        auto npmi = [&](const std::string& a, const std::string& b) {
            double total = 0, na = 0, nb = 0, nab = 0;
            for (const auto& d : docs) {
                total += static_cast<double>(d.lemmas.size());
                std::size_t start = 0;
                for (auto end : d.sentence_ends) {
                    for (std::size_t i = start; i < end; ++i) {
                        na += d.lemmas[i] == a;
                        nb += d.lemmas[i] == b;
                        if (i + 1 < end && d.lemmas[i] == a && d.lemmas[i + 1] == b) ++nab;
                    }
                    start = end;
                }
            }
            const double pmi = std::log(nab * total / (na * nb));
            return std::clamp(pmi / -std::log(nab / total), 0.0, 1.0);
        };
        const CorpusConfig config;
        const auto solar = make_document("q", "solar wind").lemmas;
        const auto data = make_document("q", "data model").lemmas;
        const double q_solar = score_phrase_quality(solar, counts, {}, config);
        const double q_data = score_phrase_quality(data, counts, {}, config);
        const double want_solar = 0.7 * npmi(solar[0], solar[1]);
        const double want_data = 0.7 * npmi(data[0], data[1]);
        s.expect("quality: cohesive pair beats independent pair",
                 oracle::close(q_solar, want_solar) && oracle::close(q_data, want_data) &&
                     q_solar >= q_data,
                 "solar " + fmt(q_solar) + "/" + fmt(want_solar) + ", data " + fmt(q_data) + "/" +
                     fmt(want_data));
    });
}

// Exhaustive segmentation: best score, then fewer segments, then the
// lexicographically larger list of segment lengths.
std::vector<std::size_t> best_segmentation(const std::vector<std::string>& words,
                                           const QualityTable& table, std::size_t max_len,
                                           double prior) {
    std::vector<std::size_t> best, current;
    double best_score = -INFINITY;
    std::function<void(std::size_t, double)> go = [&](std::size_t pos, double score) {
        if (pos == words.size()) {
            const bool better =
                score > best_score + 1e-12 ||
                (std::fabs(score - best_score) <= 1e-12 &&
                 (current.size() < best.size() || (current.size() == best.size() && current > best)));
            if (best.empty() || better) {
                best = current;
                best_score = score;
            }
            return;
        }
        for (std::size_t len = 1; len <= max_len && pos + len <= words.size(); ++len) {
            double add = std::log(prior);
            if (len > 1) {
                std::string key = words[pos];
                for (std::size_t k = 1; k < len; ++k) key += " " + words[pos + k];
                auto it = table.find(key);
                if (it == table.end() || it->second <= 0) continue;
                add = std::log(it->second);
            }
            current.push_back(len);
            go(pos + len, score + add);
            current.pop_back();
        }
    };
    go(0, 0.0);
    return best;
}

std::vector<std::size_t> lengths(const std::vector<Segment>& segs) {
    std::vector<std::size_t> out;
    for (const auto& s : segs) out.push_back(s.length);
    return out;
}

void segmentation(Suite& s) {
    auto compare = [&](const std::string& name, const std::vector<std::string>& words,
                       const QualityTable& table, const std::vector<std::size_t>& quoted) {
        s.run(name, [&] {
            const auto got = lengths(segment_sentence(words, table, 5, 0.5));
            const auto want = best_segmentation(words, table, 5, 0.5);
            s.expect(name, got == want && want == quoted);
        });
    };
    compare("segmentation: three-word candidate kept whole", {"personalize", "web", "search"},
            {{"personalize web search", 0.8}, {"web search", 0.9}}, {3});
    compare("segmentation: higher-scoring overlap wins", {"a", "b", "c"},
            {{"a b", 0.6}, {"b c", 0.9}}, {1, 2});
    compare("segmentation: equal overlap goes leftmost-longest", {"a", "b", "c"},
            {{"a b", 0.7}, {"b c", 0.7}}, {2, 1});
}

void pairs(Suite& s) {
    auto occurrences = [](int groups) {
        std::vector<PhraseOccurrence> out;
        for (int g = 0; g < groups; ++g) {
            const auto base = static_cast<std::uint32_t>(20 * g);
            out.push_back({"web graph", base, 2});
            out.push_back({"web page", base + 3, 2});
        }
        return out;
    };
    auto brute = [](const std::vector<PhraseOccurrence>& occ, std::size_t window) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < occ.size(); ++i)
            for (std::size_t j = i + 1; j < occ.size(); ++j) {
                if (occ[i].text == occ[j].text) continue;
                const auto lo = std::min(occ[i].start, occ[j].start);
                const auto hi = std::max(occ[i].start + occ[i].length, occ[j].start + occ[j].length);
                if (hi - lo <= window) ++n;
            }
        return n;
    };
    s.run("pairs: four co-occurrences emit a pair", [&] {
        const auto occ = occurrences(4);
        const auto got = detect_phrase_pairs(occ, 10, 3);
        s.expect("pairs: four co-occurrences emit a pair",
                 brute(occ, 10) == 4 && got.size() == 1 && got[0].count == 4);
    });
    s.run("pairs: three co-occurrences emit none", [&] {
        const auto occ = occurrences(3);
        s.expect("pairs: three co-occurrences emit none",
                 brute(occ, 10) == 3 && detect_phrase_pairs(occ, 10, 3).empty());
    });
}

// --- salience -------------------------------------------------------------

void salience(Suite& s) {
    s.value("interestingness: top-frequency phrase", interestingness(4, 4, 100, 10),
            oracle::interestingness(4, 4, 100, 10), 2.3026);
    s.value("interestingness: half-frequency phrase", interestingness(2, 4, 100, 10),
            oracle::interestingness(2, 4, 100, 10), 1.2952);
    s.value("interestingness: phrase pair", pair_interestingness(3, 50, 5, 6, 100, 2),
            oracle::pair_interestingness(3, 50, 5, 6, 100, 2), 19.560);

    s.run("normalize: two-point range", [&] {
        const std::vector<double> raw{0.0, 2.3026};
        const auto got = normalize_interestingness(raw);
        const double lo = 1e-6, hi = 1 - 1e-6;
        auto map = [&](double x) { return lo + (hi - lo) * (x - raw[0]) / (raw[1] - raw[0]); };
        s.expect("normalize: two-point range",
                 got.size() == 2 && oracle::close(got[0], map(raw[0])) &&
                     oracle::close(got[1], map(raw[1])) && oracle::close(got[0], 1e-6) &&
                     oracle::close(got[1], 1 - 1e-6));
    });

    s.value("levenshtein: one substitution", levenshtein_similarity("cat", "cut"),
            oracle::edit_similarity("cat", "cut"), 0.6667);
    s.value("levenshtein: full rewrite", levenshtein_similarity("ab", "xyz"),
            oracle::edit_similarity("ab", "xyz"), 0.0);

    s.run("diverse selection: duplicate pair vs brute force", [&] {
        const std::vector<std::string> names{"web graph", "web graph", "solar wind"};
        const std::vector<double> r{0.9, 0.9, 0.5};
        const std::vector<PhraseId> ids{0, 1, 2};
        oracle::Dense m(3, std::vector<double>(3));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) m[a][b] = oracle::edit_similarity(names[a], names[b]);
        std::vector<double> q(3, 0.0);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) q[a] += m[a][b] * r[b];
        std::string detail;
        bool ok = true;
        // At mu = 3 the interestingness term outweighs the duplicate penalty;
        // at mu = 1.5 the penalty wins and one twin is dropped.
        for (double mu : {3.0, 1.5}) {
            auto h = [&](std::vector<int> set) {
                double v = 0;
                for (int a : set) v += mu * q[a] * r[a];
                for (int a : set)
                    for (int b : set) v -= r[a] * m[a][b] * r[b];
                return v;
            };
            const std::vector<std::vector<int>> pairs{{0, 1}, {0, 2}, {1, 2}};
            std::set<std::size_t> best;
            double best_h = -1e300;
            for (const auto& pr : pairs)
                if (h(pr) > best_h + 1e-12) {
                    best_h = h(pr);
                    best = {static_cast<std::size_t>(pr[0]), static_cast<std::size_t>(pr[1])};
                }
            const auto sel = select_diverse(r, similarity_matrix(names), ids, 2, mu);
            std::set<std::size_t> picked(sel.order.begin(), sel.order.end());
            const bool twins = best == std::set<std::size_t>{0, 1};
            ok = ok && picked == best && twins == (mu == 3.0);
            detail += "mu " + fmt(mu) + ": H(twins) " + fmt(h({0, 1})) + ", H(mixed) " +
                      fmt(std::max(h({0, 2}), h({1, 2}))) + "; ";
        }
        s.expect("diverse selection: duplicate pair vs brute force", ok, detail);
    });

    s.run("diverse selection: single candidate follows its gain", [&] {
        const std::vector<std::string> names{"solar wind"};
        const std::vector<double> r{0.4};
        const std::vector<PhraseId> ids{0};
        bool ok = true;
        for (double mu : {3.0, 1.0, 0.5}) {
            const double gain = mu * (1.0 * r[0]) * r[0] - r[0] * r[0];
            const auto sel = select_diverse(r, similarity_matrix(names), ids, 1, mu);
            ok = ok && (sel.order.size() == 1) == (gain > 0);
        }
        s.expect("diverse selection: single candidate follows its gain", ok);
    });
}

// --- graph ----------------------------------------------------------------

void graph(Suite& s) {
    s.value("bm25: average-length document", bm25_weight(3, 2, 4, 10, 10),
            oracle::bm25(3, 2, 4, 10, 10), 1.0892);  // ln 2 * 6.6 / 4.2 = 1.089231

    s.run("graph: link count equals incidences", [&] {
        const auto docs = docs_of({{"d1", "Web graph. Web graph. Page rank."},
                                   {"d2", "Page rank. Page rank. Link spam."},
                                   {"d3", "Link spam. Web graph."}});
        CorpusConfig config;
        config.min_support = 2;
        const auto bundle = build_bundle(docs, config);
        std::size_t incidences = 0;
        for (const auto& d : bundle.index.documents()) {
            std::set<PhraseId> seen;
            for (const auto& seg : d.segments)
                if (seg.phrase != kNoPhrase) seen.insert(seg.phrase);
            for (const auto& p : d.postings)
                if (bundle.index.phrase(p.phrase).kind == PhraseKind::pair) seen.insert(p.phrase);
            incidences += seen.size();
        }
        s.expect("graph: link count equals incidences",
                 bundle.graph.weights.nnz() == incidences && incidences > 0,
                 std::to_string(bundle.graph.weights.nnz()) + " links, " +
                     std::to_string(incidences) + " incidences");
    });

    s.run("graph: normalized 2x2 example", [&] {
        const auto w = SparseMatrix::from_triplets(2, 2, {{0, 0, 2}, {1, 0, 1}, {1, 1, 1}});
        const auto got = oracle::to_dense(normalize(graph_from_weights(w, {})).matrix);
        const auto want = oracle::normalize(oracle::to_dense(w));
        const double quoted[2][2] = {{0.8165, 0}, {0.4082, 0.7071}};
        bool ok = true;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                ok = ok && oracle::close(got[i][j], want[i][j]) &&
                     std::fabs(want[i][j] - quoted[i][j]) < 5e-5;
        s.expect("graph: normalized 2x2 example", ok);
    });
}

// --- measures -------------------------------------------------------------

void measures(Suite& s) {
    s.value("commonality: balanced", commonality({0.5, 0.5}), oracle::commonality(0.5, 0.5), 0.2231);
    s.value("commonality: lopsided", commonality({0.1, 0.9}), oracle::commonality(0.1, 0.9), 0.0862);
    s.expect("commonality: balanced beats lopsided",
             commonality({0.5, 0.5}) > commonality({0.1, 0.9}));
    s.value("distinction: exclusive", distinction({1, 0}), oracle::distinction(1, 0, 1), 0.6931);
    s.value("distinction: against", distinction({0.2, 0.9}), oracle::distinction(0.2, 0.9, 1),
            -0.4595);
    s.expect("additive commonality: both contrast cases score 1",
             oracle::close(alt_commonality_sum({0.5, 0.5}), 1.0) &&
                 oracle::close(alt_commonality_sum({0.1, 0.9}), 1.0));
}

// --- solver ---------------------------------------------------------------

void solver(Suite& s) {
    SolverConfig c;
    c.lambda = 0.09;
    s.value("bound: default parameters", lambda_bound(c), std::min(0.25, 100.0 * 0.1 / 101.0),
            0.09901);
    s.run("bound: 0.09 accepted, 0.1 rejected", [&] {
        bool accepted = true, rejected = false;
        try {
            validate_params(c);
        } catch (const ParameterError&) {
            accepted = false;
        }
        SolverConfig over = c;
        over.lambda = 0.1;
        try {
            validate_params(over);
        } catch (const ParameterError&) {
            rejected = true;
        }
        s.expect("bound: 0.09 accepted, 0.1 rejected", accepted && rejected);
    });

    s.value("common update: selected", common_f_update(0.4, 0.5, 0.1, true),
            oracle::common_f(0.4, 0.5, 0.1, 1), 0.4410);
    s.value("common update: unselected", common_f_update(0.4, 0.5, 0.1, false),
            oracle::common_f(0.4, 0.5, 0.1, 0), 0.4);
    s.value("g update: target document", g_update(0.5, 100, 1.1), oracle::g_update(0.5, 100, 1.1),
            1.0941);
    s.value("g update: other document", g_update(0.5, 100, 0.1), oracle::g_update(0.5, 100, 0.1),
            0.10396);
    s.value("distinct update: selected here", distinct_f_update(0.4, 1, 0.1, 1),
            oracle::distinct_f(0.4, 1, 0.1, 1), 0.4681);
    s.value("distinct update: selected there", distinct_f_update(0.4, 1, 0.1, -1),
            oracle::distinct_f(0.4, 1, 0.1, -1), 0.3245);

    s.run("common indicator: two mean constraints", [&] {
        const std::vector<double> phi{0.9, 0.5, 0.1, 0.6, 0.2};
        const std::vector<PhraseId> a{0, 1, 2}, b{3, 4};
        const double mean_a = (0.9 + 0.5 + 0.1) / 3, mean_b = (0.6 + 0.2) / 2;
        const auto y = update_common_indicator(phi, a, b);
        bool ok = true;
        for (std::size_t i = 0; i < phi.size(); ++i)
            ok = ok && (y[i] == 1) == (phi[i] >= mean_a - 1e-15 && phi[i] >= mean_b);
        const std::vector<std::uint8_t> quoted{1, 1, 0, 1, 0};
        s.expect("common indicator: two mean constraints", ok && y == quoted);
    });

    s.run("distinct indicator: mean threshold", [&] {
        const std::vector<double> pi_a{0.7, 0.1, -0.2, 0.0}, pi_b{0, 0, 0, 0.3};
        const std::vector<PhraseId> a{0, 1, 2}, b{3};
        const std::vector<std::uint8_t> none(4, 0);
        const auto got = update_distinct_indicator(pi_a, pi_b, a, b, none);
        const double mean = (0.7 + 0.1 - 0.2) / 3;
        bool ok = true;
        for (PhraseId i : a) ok = ok && (got.y[i] == 1) == (pi_a[i] >= mean && pi_a[i] > 0);
        s.expect("distinct indicator: mean threshold",
                 ok && got.y == std::vector<std::uint8_t>{1, 0, 0, 0} && got.yp[3] == 1);
    });
}

// --- comparisons on constructed corpora -----------------------------------

void fig4(Suite& s) {
    s.run("bridge corpus: semantic common phrase", [&] {
        const auto bundle = bridge_bundle();
        const Comparator cmp(bundle.index, bundle.graph);
        const auto cda = cmp.compare(Method::cda, "doc_a", "doc_b");
        const auto nograph = cmp.compare(Method::nograph, "doc_a", "doc_b");
        const auto p = bundle.index.find_phrase("web graph");
        const auto a = bundle.index.require_document("doc_a");
        const bool absent = p && bundle.index.count(*p, a) == 0;
        const bool reached = p && cda.common_relevance.f[*p] > 0;
        const bool in_c = texts(cda.common).contains("web graph");
        const bool missed = !texts(nograph.common).contains("web graph");
        const bool exclusive = !cda.distinct_a.empty();
        s.expect("bridge corpus: semantic common phrase",
                 absent && reached && in_c && missed && exclusive);
    });
}

void constructed(Suite& s) {
    s.run("disjoint pair: C is the constrained optimum, Q non-empty", [&] {
        std::string bakery;
        for (int i = 0; i < 8; ++i) bakery += "Bread dough. ";
        for (int i = 0; i < 4; ++i) bakery += "Flour. ";
        for (int i = 0; i < 3; ++i) bakery += "Oven. ";
        bakery += "Yeast. Yeast. Salt. Water. Crust. Honey. Butter. Sugar.";
        const auto docs = docs_of(
            {{"x", "Solar wind strikes the magnetosphere. Solar flares heat the corona. Solar wind slows "
                   "near comets. Solar flares fade. Magnetosphere storms end. Auroras glow above polar "
                   "caps. Ions drift along field lines. Satellites log particle counts. Plasma waves "
                   "ripple outward."},
             {"y", bakery}});
        CorpusConfig config;
        config.min_support = 2;
        const auto bundle = build_bundle(docs, config);
        const auto r = compare_documents(bundle.index, bundle.graph, "x", "y");
        std::vector<PhraseId> sa, sb;
        for (const auto& p : salient_phrases(bundle.index, 0, {}).phrases) sa.push_back(p.id);
        for (const auto& p : salient_phrases(bundle.index, 1, {}).phrases) sb.push_back(p.id);
        // Enumerate the first term of the common problem over S u S' at the
        // final relevance scores.
        std::vector<PhraseId> u = sa;
        u.insert(u.end(), sb.begin(), sb.end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        const auto& f = r.common_relevance.f;
        const auto& fp = r.common_relevance.fp;
        auto phi = [&](PhraseId p) { return oracle::commonality(f[p], fp[p]); };
        auto mean = [&](const std::vector<PhraseId>& v) {
            double t = 0;
            for (auto p : v) t += phi(p);
            return t / static_cast<double>(v.size());
        };
        const double ma = mean(sa), mb = mean(sb);
        // Separable objective: the widest optimum takes every feasible phrase
        // with non-negative score.
        std::set<std::string> want;
        for (auto p : u)
            if (phi(p) >= 0 && phi(p) >= ma - 1e-12 * std::max(1.0, ma) &&
                phi(p) >= mb - 1e-12 * std::max(1.0, mb))
                want.insert(bundle.index.phrase(p).text);
        // The argmax of phi always meets both mean constraints, so C cannot be
        // empty; here it holds only phrases of y.
        bool none_of_x = true;
        for (const auto& c : r.common) none_of_x = none_of_x && bundle.index.count(c.id, 0) == 0;
        s.expect("disjoint pair: C is the constrained optimum, Q non-empty",
                 texts(r.common) == want && none_of_x && !r.distinct_a.empty(),
                 "|C| " + std::to_string(r.common.size()) + ", oracle " + std::to_string(want.size()));
    });

    s.run("date sets: planted phrases recovered", [&] {
        // Only the planted phrases recur verbatim across copies.
        const char* hit[] = {"hit", "lashed", "battered"};
        const char* held[] = {"held", "creaked", "rattled"};
        const char* spread[] = {"spread", "lingered", "returned"};
        const char* place[] = {"coast", "harbor", "estuary"};
        std::vector<std::pair<std::string, std::string>> raw;
        for (int i = 0; i < 3; ++i) {
            const std::string n = std::to_string(i);
            raw.push_back({"jan" + n, std::string("Storm surge ") + hit[i] + " the " + place[i] +
                                          ". Flood barrier " + held[i] +
                                          " overnight. Flood barrier crews watched. Storm surge "
                                          "warnings followed."});
            raw.push_back({"feb" + n, std::string("Storm surge ") + hit[(i + 1) % 3] + " the " +
                                          place[(i + 2) % 3] + ". Power outage " + spread[i] +
                                          " inland. Power outage crews worked. Storm surge sirens "
                                          "sounded."});
            raw.push_back({"bg" + n, std::string("Markets opened ") + place[i] + ". Harvest festival " +
                                         hit[i] + " early."});
        }
        CorpusConfig config;
        config.min_support = 3;
        const auto bundle = build_bundle(docs_of(raw), config);
        const std::vector<std::string> a{"jan0", "jan1", "jan2"}, b{"feb0", "feb1", "feb2"};
        const auto r = compare_document_sets(bundle.index, bundle.graph, a, b);
        s.expect("date sets: planted phrases recovered",
                 texts(r.common).contains("storm surge") &&
                     texts(r.distinct_a).contains("flood barrier") &&
                     texts(r.distinct_b).contains("power outage"));
    });

    s.run("bridge-free corpus: two-step equals full solver on C", [&] {
        const auto docs = docs_of(
            {{"x", "Web graph analysis. Link spam detection. Web graph crawling. Page rank."},
             {"y", "Web graph mining. Page rank scores. Query logs. Page rank updates."}});
        CorpusConfig config;
        config.min_support = 2;
        const auto bundle = build_bundle(docs, config);
        const Comparator cmp(bundle.index, bundle.graph);
        const auto full = cmp.compare(Method::cda, "x", "y");
        const auto two = cmp.compare(Method::twostep, "x", "y");
        s.expect("bridge-free corpus: two-step equals full solver on C",
                 texts(full.common) == texts(two.common) && !full.common.empty());
    });

    s.run("context vectors: own document closer", [&] {
        const auto docs = docs_of({{"x", "quantum. qubit. lattice. solar. flux. entangle. qubit."},
                                   {"y", "bread. flour. dough. yeast. oven. crust."},
                                   {"z", "river. delta. silt."}});
        CorpusConfig config;
        config.min_support = 1;
        const auto bundle = build_bundle(docs, config);
        const auto& index = bundle.index;
        const auto df = word_document_frequencies(index);
        const auto p = index.find_phrase("solar").value();
        const auto x = index.require_document("x"), y = index.require_document("y");
        const auto ctx = tfidf_vector(index, df, phrase_context(index, p, 10));
        const double cx = cosine(ctx, tfidf_vector(index, df, index.document(x).lemmas));
        const double cy = cosine(ctx, tfidf_vector(index, df, index.document(y).lemmas));

        // By hand: context of "solar" is every other word of x; weights tf*ln(3/1).
        const double idf = std::log(3.0);
        std::map<std::string, double> vc, vx;
        for (auto w : index.document(x).lemmas) vx[index.words()[w]] += idf;
        for (const auto& [w, v] : vx)
            if (w != "solar") vc[w] = v;
        double dotp = 0, nc = 0, nx = 0;
        for (const auto& [w, v] : vc) {
            dotp += v * vx[w];
            nc += v * v;
        }
        for (const auto& [w, v] : vx) nx += v * v;
        const double want = dotp / std::sqrt(nc * nx);
        s.expect("context vectors: own document closer",
                 oracle::close(cx, want) && cy == 0.0 && cx > cy,
                 "cos(x) " + fmt(cx) + " oracle " + fmt(want) + ", cos(y) " + fmt(cy));
    });

    s.expect("additive measure ties the contrast pair",
             alt_commonality_sum({0.5, 0.5}) == alt_commonality_sum({0.1, 0.9}) &&
                 commonality({0.5, 0.5}) > commonality({0.1, 0.9}));
}

// --- eval -----------------------------------------------------------------

void evaluation(Suite& s) {
    const std::set<std::string> system{"a", "b", "c"}, gold{"b", "c", "d"};
    const auto got = prf(system, gold);
    std::size_t hit = 0;
    for (const auto& x : system) hit += gold.contains(x);
    const double p = static_cast<double>(hit) / system.size(), r = static_cast<double>(hit) / gold.size();
    const double f1 = 2 * p * r / (p + r);
    s.value("prf: precision", got.precision, p, 0.6667);
    s.value("prf: recall", got.recall, r, 0.6667);
    s.value("prf: f1", got.f1, f1, 0.6667);
}

}  // namespace

std::vector<Check> formula_suite() {
    Suite s;
    mining(s);
    segmentation(s);
    pairs(s);
    salience(s);
    graph(s);
    measures(s);
    solver(s);
    fig4(s);
    constructed(s);
    evaluation(s);
    return s.take();
}

}  // namespace phrasecom::testing
