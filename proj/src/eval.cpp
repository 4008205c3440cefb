#include "phrasecom/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "phrasecom/baselines.hpp"
#include "phrasecom/error.hpp"
#include "phrasecom/text.hpp"

namespace phrasecom {

Prf prf(const std::set<std::string>& system, const std::set<std::string>& gold) {
    if (gold.empty()) throw Error("empty gold set: recall is undefined");
    std::size_t hits = 0;
    for (const auto& s : system) hits += gold.contains(s);
    Prf out;
    out.precision = system.empty() ? 0.0 : static_cast<double>(hits) / system.size();
    out.recall = static_cast<double>(hits) / gold.size();
    const double sum = out.precision + out.recall;
    out.f1 = sum > 0 ? 2.0 * out.precision * out.recall / sum : 0.0;
    return out;
}

Role parse_role(std::string_view name) {
    if (name == "common") return Role::common;
    if (name == "distinct_a") return Role::distinct_a;
    if (name == "distinct_b") return Role::distinct_b;
    throw InputError("unknown role '" + std::string(name) + "'");
}

std::string_view role_name(Role role) {
    switch (role) {
        case Role::common: return "common";
        case Role::distinct_a: return "distinct_a";
        case Role::distinct_b: return "distinct_b";
    }
    return "unknown";
}

Judgment parse_judgment(std::string_view name) {
    if (name == "perfect") return Judgment::perfect;
    if (name == "good") return Judgment::good;
    if (name == "fair") return Judgment::fair;
    if (name == "bad") return Judgment::bad;
    throw InputError("unknown label '" + std::string(name) + "'");
}

namespace {

std::string normalize_single(std::string_view text) {
    const auto tokens = tokenize(text).tokens;
    const auto lemmas = lemmatize(tokens);
    std::string out;
    for (const auto& l : lemmas) {
        if (!out.empty()) out += ' ';
        out += l;
    }
    return out;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto content = trim(line);
        if (!content.empty() && content.front() != '#') fn(line, line_no);
        start = end + 1;
    }
}

std::string where(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line) + ": ";
}

}  // namespace

std::string normalize_phrase_text(std::string_view text) {
    const auto at = text.find("@@");
    if (at == std::string_view::npos) return normalize_single(text);
    auto a = normalize_single(text.substr(0, at));
    auto b = normalize_single(text.substr(at + 2));
    if (b < a) std::swap(a, b);
    return a + "@@" + b;
}

GoldLabels parse_gold(std::string_view text, bool perfect_only, std::string_view source) {
    GoldLabels gold;
    // Every labelled phrase (positive or not) per pair, to detect role clashes.
    std::map<std::string, std::map<std::string, Role>> seen;
    for_each_line(text, [&](std::string_view line, std::size_t no) {
        const auto fields = split(line, '\t');
        if (fields.size() != 4)
            throw InputError(where(source, no) + "expected 4 tab-separated fields, got " +
                             std::to_string(fields.size()));
        const auto pair_id = trim(fields[0]);
        if (pair_id.empty()) throw InputError(where(source, no) + "empty pair id");
        Role role;
        Judgment label;
        try {
            role = parse_role(trim(fields[1]));
            label = parse_judgment(trim(fields[3]));
        } catch (const InputError& e) {
            throw InputError(where(source, no) + e.what());
        }
        const auto phrase = normalize_phrase_text(fields[2]);
        if (phrase.empty()) throw InputError(where(source, no) + "empty phrase");
        auto [it, fresh] = seen[pair_id].emplace(phrase, role);
        if (!fresh && it->second != role)
            throw InputError(where(source, no) + "phrase '" + phrase + "' labelled under both " +
                             std::string(role_name(it->second)) + " and " +
                             std::string(role_name(role)));
        auto& pair = gold.pairs[pair_id];
        const bool positive =
            label == Judgment::perfect || (!perfect_only && label == Judgment::good);
        if (!positive) return;
        switch (role) {
            case Role::common: pair.common.insert(phrase); break;
            case Role::distinct_a: pair.distinct_a.insert(phrase); break;
            case Role::distinct_b: pair.distinct_b.insert(phrase); break;
        }
    });
    return gold;
}

GoldLabels read_gold(const std::filesystem::path& path, bool perfect_only) {
    return parse_gold(slurp(path), perfect_only, path.string());
}

std::vector<PairSpec> parse_pairs(std::string_view text, std::string_view source) {
    std::vector<PairSpec> out;
    std::set<std::string> ids;
    for_each_line(text, [&](std::string_view line, std::size_t no) {
        const auto fields = split(line, '\t');
        if (fields.size() != 3)
            throw InputError(where(source, no) + "expected 3 tab-separated fields, got " +
                             std::to_string(fields.size()));
        PairSpec spec;
        spec.pair_id = trim(fields[0]);
        if (spec.pair_id.empty()) throw InputError(where(source, no) + "empty pair id");
        if (!ids.insert(spec.pair_id).second)
            throw InputError(where(source, no) + "duplicate pair id '" + spec.pair_id + "'");
        for (int side = 1; side <= 2; ++side) {
            auto& list = side == 1 ? spec.ids_a : spec.ids_b;
            for (const auto& id : split(fields[side], ',')) {
                auto t = trim(id);
                if (t.empty()) throw InputError(where(source, no) + "empty document id");
                list.push_back(std::move(t));
            }
        }
        out.push_back(std::move(spec));
    });
    return out;
}

std::vector<PairSpec> read_pairs(const std::filesystem::path& path) {
    return parse_pairs(slurp(path), path.string());
}

Prf macro_average(std::span<const Prf> scores) {
    Prf out;
    if (scores.empty()) return out;
    for (const auto& s : scores) {
        out.precision += s.precision;
        out.recall += s.recall;
        out.f1 += s.f1;
    }
    const double n = static_cast<double>(scores.size());
    out.precision /= n;
    out.recall /= n;
    out.f1 /= n;
    return out;
}

EvalReport evaluate_pairs(std::span<const std::pair<std::string, ComparisonResult>> results,
                          const GoldLabels& gold) {
    EvalReport report;
    if (!results.empty()) report.method = std::string(method_name(results.front().second.method));
    for (const auto& [pair_id, result] : results) {
        auto it = gold.pairs.find(pair_id);
        if (it == gold.pairs.end()) throw LookupError("no gold labels for pair '" + pair_id + "'");
        const auto& g = it->second;

        std::set<std::string> common;
        for (const auto& p : result.common) common.insert(p.text);
        std::set<std::string> distinct;
        for (const auto& p : result.distinct_a) distinct.insert("a\t" + p.text);
        for (const auto& p : result.distinct_b) distinct.insert("b\t" + p.text);
        std::set<std::string> gold_distinct;
        for (const auto& p : g.distinct_a) gold_distinct.insert("a\t" + p);
        for (const auto& p : g.distinct_b) gold_distinct.insert("b\t" + p);

        if (g.common.empty() || gold_distinct.empty())
            throw Error("pair '" + pair_id + "' has no positive gold phrase for the " +
                        (g.common.empty() ? "common" : "distinct") + " role");
        report.pairs.push_back({pair_id, prf(common, g.common), prf(distinct, gold_distinct)});
    }
    std::sort(report.pairs.begin(), report.pairs.end(),
              [](const PairScore& a, const PairScore& b) { return a.pair_id < b.pair_id; });
    std::vector<Prf> c, d;
    for (const auto& p : report.pairs) {
        c.push_back(p.common);
        d.push_back(p.distinct);
    }
    report.common = macro_average(c);
    report.distinct = macro_average(d);
    return report;
}

double document_cosine(const CorpusIndex& index, DocIndex a, DocIndex b) {
    const auto df = word_document_frequencies(index);
    return cosine(tfidf_vector(index, df, index.document(a).lemmas),
                  tfidf_vector(index, df, index.document(b).lemmas));
}

PairSample sample_pairs(const CorpusIndex& index, const SampleRequest& request) {
    const auto df = word_document_frequencies(index);
    std::vector<TermVector> vectors;
    for (DocIndex d = 0; d < index.num_documents(); ++d)
        vectors.push_back(tfidf_vector(index, df, index.document(d).lemmas));

    std::vector<SampledPair> high, low, rest;
    for (DocIndex a = 0; a < vectors.size(); ++a) {
        for (DocIndex b = a + 1; b < vectors.size(); ++b) {
            const double c = cosine(vectors[a], vectors[b]);
            if (c > request.high_cut)
                high.push_back({a, b, c, "high"});
            else if (c > request.low_min && c < request.low_max)
                low.push_back({a, b, c, "low"});
            else
                rest.push_back({a, b, c, "random"});
        }
    }

    std::mt19937_64 rng(request.seed);
    PairSample out;
    auto take = [&](std::vector<SampledPair>& pool, std::size_t n) {
        std::shuffle(pool.begin(), pool.end(), rng);
        if (pool.size() < n) out.short_supply = true;
        const std::size_t k = std::min(n, pool.size());
        out.pairs.insert(out.pairs.end(), pool.begin(), pool.begin() + k);
        pool.erase(pool.begin(), pool.begin() + k);
    };
    take(high, request.n_high);
    take(low, request.n_low);
    // The random stratum draws from every pair not yet sampled.
    rest.insert(rest.end(), high.begin(), high.end());
    rest.insert(rest.end(), low.begin(), low.end());
    std::sort(rest.begin(), rest.end(), [](const SampledPair& x, const SampledPair& y) {
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    for (auto& p : rest) p.stratum = "random";
    take(rest, request.n_random);
    return out;
}

}  // namespace phrasecom
