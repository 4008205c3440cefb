#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "oracles.hpp"
#include "phrasecom/corpus.hpp"
#include "phrasecom/error.hpp"
#include "phrasecom/index.hpp"

using namespace phrasecom;

namespace {

std::vector<Document> docs(const std::vector<std::pair<std::string, std::string>>& raw) {
    std::vector<Document> out;
    for (const auto& [id, text] : raw) out.push_back(make_document(id, text));
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "phrasecom_unit";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("make_document keeps tokens and lemmas aligned") {
    const auto d = make_document("x", "Graphs were mined. Quickly!");
    CHECK(d.tokens.size() == d.lemmas.size());
    CHECK(d.lemmas[0] == "graph");
    CHECK(d.sentence_ends == std::vector<std::size_t>{3, 4});
}

TEST_CASE("n-gram counts stop at sentence boundaries") {
    const auto corpus = docs({{"a", "web graph. graph web"}, {"b", "web graph"}});
    const auto counts = count_ngrams(corpus, 3);
    CHECK(counts.support("web graph") == 2);
    CHECK(counts.support("graph web") == 1);
    CHECK(counts.support("graph graph") == 0);
    CHECK(counts.total_lemmas == 6);
}

TEST_CASE("mining drops stopword-bounded n-grams and short support") {
    std::vector<std::pair<std::string, std::string>> raw;
    for (int i = 0; i < 4; ++i) raw.push_back({"d" + std::to_string(i), "the web graph of the page"});
    const auto corpus = docs(raw);
    const auto mined = mine_frequent_patterns(corpus, 5, 4);
    std::map<std::string, std::uint32_t> got;
    for (const auto& c : mined) got[c.text()] = c.support;
    CHECK(got.at("web graph") == 4);
    CHECK(got.count("the web") == 0);
    CHECK(got.count("the") == 0);
    CHECK(got.count("of the page") == 0);
    CHECK(got.count("web graph of the page") == 1);  // interior stopwords are fine
    CHECK(got.count("web graph of the") == 0);
    CHECK(mine_frequent_patterns(corpus, 5, 5).empty());
    for (const auto& c : mined) {
        CHECK(c.quality >= 0.0);
        CHECK(c.quality <= 1.0);
        CHECK(c.lemmas.size() <= 5);
    }
}

TEST_CASE("mining output is sorted by text") {
    std::vector<std::pair<std::string, std::string>> raw;
    for (int i = 0; i < 3; ++i) raw.push_back({"d" + std::to_string(i), "solar wind and data model"});
    const auto mined = mine_frequent_patterns(docs(raw), 5, 3);
    for (std::size_t i = 1; i < mined.size(); ++i) CHECK(mined[i - 1].text() < mined[i].text());
}

TEST_CASE("unigrams score one and positives never lower quality") {
    std::vector<std::pair<std::string, std::string>> raw;
    for (int i = 0; i < 5; ++i) raw.push_back({"d" + std::to_string(i), "solar wind. solar panel. wind farm."});
    const auto corpus = docs(raw);
    const auto counts = count_ngrams(corpus, 5);
    const CorpusConfig config;
    const std::vector<std::string> uni{"solar"}, bi{"solar", "wind"};
    CHECK(score_phrase_quality(uni, counts, {}, config) == 1.0);
    const double plain = score_phrase_quality(bi, counts, {}, config);
    const double listed = score_phrase_quality(bi, counts, {"solar wind"}, config);
    CHECK(listed >= plain);
    CHECK(listed <= 1.0);
}

TEST_CASE("segmentation falls back to unigrams without candidates") {
    const std::vector<std::string> s{"a", "b", "c"};
    const auto seg = segment_sentence(s, {}, 5, 0.5);
    REQUIRE(seg.size() == 3);
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(seg[i] == Segment{i, 1});
}

TEST_CASE("segmentation matches exhaustive enumeration on random tables") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    const std::vector<std::string> words{"a", "b", "c", "d", "e", "f"};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<std::string> s(words.begin(), words.begin() + static_cast<std::ptrdiff_t>(n));
        QualityTable table;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t len = 2; i + len <= n && len <= 3; ++len)
                if (rng() % 2) {
                    std::vector<std::string> w(s.begin() + static_cast<std::ptrdiff_t>(i),
                                               s.begin() + static_cast<std::ptrdiff_t>(i + len));
                    table[join_words(w)] = u(rng);
                }
        // Enumerate every composition of n.
        double best = -1e300;
        for (std::uint32_t cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
            double score = 0;
            std::size_t start = 0;
            bool ok = true;
            for (std::size_t i = 1; i <= n; ++i) {
                if (i < n && !(cuts >> (i - 1) & 1u)) continue;
                const std::size_t len = i - start;
                if (len == 1) {
                    score += std::log(0.5);
                } else {
                    std::vector<std::string> w(s.begin() + static_cast<std::ptrdiff_t>(start),
                                               s.begin() + static_cast<std::ptrdiff_t>(i));
                    auto it = table.find(join_words(w));
                    if (it == table.end()) ok = false;
                    else score += std::log(it->second);
                }
                start = i;
            }
            if (ok) best = std::max(best, score);
        }
        const auto seg = segment_sentence(s, table, 5, 0.5);
        double got = 0;
        std::uint32_t covered = 0;
        for (const auto& g : seg) {
            CHECK(g.start == covered);
            covered = g.end();
            if (g.length == 1) {
                got += std::log(0.5);
            } else {
                std::vector<std::string> w(s.begin() + g.start, s.begin() + g.end());
                got += std::log(table.at(join_words(w)));
            }
        }
        CHECK(covered == n);
        CHECK(oracle::close(got, best, 1e-12));
    }
}

TEST_CASE("pair detection needs more than the threshold in window") {
    std::vector<PhraseOccurrence> occ;
    for (std::uint32_t i = 0; i < 4; ++i) {
        occ.push_back({"web graph", i * 20, 2});
        occ.push_back({"page rank", i * 20 + 3, 2});
    }
    auto pairs = detect_phrase_pairs(occ, 10, 3);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].first == "page rank");
    CHECK(pairs[0].second == "web graph");
    CHECK(pairs[0].count == 4);
    occ.pop_back();
    occ.pop_back();
    CHECK(detect_phrase_pairs(occ, 10, 3).empty());
}

TEST_CASE("pair detection respects the window width") {
    std::vector<PhraseOccurrence> occ;
    for (std::uint32_t i = 0; i < 5; ++i) {
        occ.push_back({"web graph", i * 40, 2});
        occ.push_back({"page rank", i * 40 + 9, 2});  // joint extent 11 words
    }
    CHECK(detect_phrase_pairs(occ, 10, 3).empty());
    CHECK(detect_phrase_pairs(occ, 11, 3).size() == 1);
}

TEST_CASE("build_index rejects bad corpora") {
    CHECK_THROWS_AS(build_index({}), InputError);
    const auto dup = docs({{"a", "x"}, {"a", "y"}});
    CHECK_THROWS_WITH_AS(build_index(dup), doctest::Contains("'a'"), InputError);
    const auto empty_id = docs({{"", "x"}});
    CHECK_THROWS_AS(build_index(empty_id), InputError);
}

TEST_CASE("index counts agree with segments") {
    const auto corpus = docs({{"a", "web graph. web graph. page rank."},
                              {"b", "web graph here. page rank there. page rank."}});
    CorpusConfig config;
    config.min_support = 2;
    const auto index = build_index(corpus, config);
    const auto p = index.find_phrase("web graph");
    REQUIRE(p);
    CHECK(index.count(*p, index.require_document("a")) == 2);
    CHECK(index.count(*p, index.require_document("b")) == 1);
    CHECK(index.doc_frequency(*p) == 2);
    for (DocIndex d = 0; d < index.num_documents(); ++d) {
        const auto& doc = index.document(d);
        std::uint32_t segments = 0;
        for (const auto& s : doc.segments) {
            CHECK(s.start + s.length <= doc.lemmas.size());
            if (s.phrase != kNoPhrase) ++segments;
        }
        CHECK(doc.length == segments);
    }
    CHECK_THROWS_AS(index.require_document("zzz"), LookupError);
    CHECK_THROWS_AS(index.phrase(static_cast<PhraseId>(index.num_phrases())), LookupError);
}

TEST_CASE("corpus readers") {
    const auto jsonl = scratch("c.jsonl");
    {
        std::ofstream out(jsonl);
        out << R"({"id": "a", "text": "web graph"})" << "\n\n" << R"({"id": "b", "text": "page rank"})" << "\n";
    }
    const auto raw = read_corpus(jsonl);
    REQUIRE(raw.size() == 2);
    CHECK(raw[1].id == "b");

    const auto bad = scratch("bad.jsonl");
    {
        std::ofstream out(bad);
        out << R"({"id": "a", "text": "x"})" << "\n" << R"({"id": 3})" << "\n";
    }
    CHECK_THROWS_WITH_AS(read_corpus(bad), doctest::Contains(":2"), InputError);

    const auto dir = scratch("txt");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "z.txt") << "zeta";
    std::ofstream(dir / "m.txt") << "mu";
    std::ofstream(dir / "skip.md") << "no";
    const auto txt = read_corpus(dir);
    REQUIRE(txt.size() == 2);
    CHECK(txt[0].id == "m");
    CHECK(txt[1].text == "zeta");

    CHECK_THROWS_AS(read_corpus(scratch("missing.jsonl")), InputError);
}

TEST_CASE("positive list is lemmatized line by line") {
    const auto path = scratch("pos.txt");
    std::ofstream(path) << "web graph\n\nSearch Engines\n";
    const auto pos = read_positive_list(path);
    CHECK(pos.contains("web graph"));
    CHECK(pos.contains("search engine"));
    CHECK(pos.size() == 2);
}
