#include "phrasecom/salience.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "phrasecom/error.hpp"

namespace phrasecom {

namespace {
constexpr double kNormalizationMargin = 1e-6;
}

double interestingness(double count_in_doc, double max_count_in_doc, double num_docs,
                       double doc_frequency) {
    const double tf = 0.5 + 0.5 * count_in_doc / max_count_in_doc;
    return tf * tf * std::log(num_docs / doc_frequency);
}

double pair_interestingness(double pair_count, double doc_length, double first_count,
                            double second_count, double num_docs, double pair_doc_frequency) {
    if (first_count <= 0 || second_count <= 0)
        throw Error("phrase pair member does not occur in the document");
    const double pmi = pair_count * doc_length / (first_count * second_count);
    return pmi * std::log(num_docs / pair_doc_frequency);
}

double interestingness(const CorpusIndex& index, PhraseId p, DocIndex d) {
    const auto& phrase = index.phrase(p);
    const auto& doc = index.document(d);
    const double n = static_cast<double>(index.num_documents());
    if (phrase.kind == PhraseKind::pair) {
        return pair_interestingness(index.count(p, d), doc.length, index.count(phrase.first, d),
                                    index.count(phrase.second, d), n, phrase.doc_frequency);
    }
    std::uint32_t max_count = 0;
    for (const auto& post : doc.postings) max_count = std::max(max_count, post.count);
    if (max_count == 0) return 0.0;
    return interestingness(index.count(p, d), max_count, n, phrase.doc_frequency);
}

std::vector<double> normalize_interestingness(std::span<const double> raw) {
    std::vector<double> out(raw.size(), 0.5);
    if (raw.empty()) return out;
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    if (!(*hi > *lo)) return out;
    const double range = *hi - *lo;
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = kNormalizationMargin +
                 (1.0 - 2.0 * kNormalizationMargin) * (raw[i] - *lo) / range;
    return out;
}

std::size_t levenshtein_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double levenshtein_similarity(std::string_view a, std::string_view b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(levenshtein_distance(a, b)) / static_cast<double>(longest);
}

SimilarityMatrix similarity_matrix(std::span<const std::string> texts) {
    SimilarityMatrix m(texts.size());
    for (std::size_t a = 0; a < texts.size(); ++a) {
        m(a, a) = 1.0;
        for (std::size_t b = a + 1; b < texts.size(); ++b) {
            const double s = levenshtein_similarity(texts[a], texts[b]);
            m(a, b) = s;
            m(b, a) = s;
        }
    }
    return m;
}

DiverseSelection select_diverse(std::span<const double> r, const SimilarityMatrix& similarity,
                                std::span<const PhraseId> ids, std::size_t k, double mu) {
    const std::size_t n = r.size();
    DiverseSelection out;
    if (n == 0 || k == 0) return out;

    // q = M r.
    std::vector<double> importance(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        double acc = 0.0;
        for (std::size_t b = 0; b < n; ++b) acc += similarity(a, b) * r[b];
        importance[a] = acc;
    }
    out.operations += n * n;

    // penalty[a] = sum_{b in S} M_ab r_b for the current selection S.
    std::vector<double> penalty(n, 0.0);
    std::vector<bool> taken(n, false);
    const std::size_t picks = std::min(k, n);
    for (std::size_t step = 0; step < picks; ++step) {
        std::size_t best = n;
        double best_gain = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            if (taken[a]) continue;
            const double gain =
                mu * importance[a] * r[a] - r[a] * similarity(a, a) * r[a] - 2.0 * r[a] * penalty[a];
            bool better = best == n || gain > best_gain;
            if (!better && gain == best_gain)
                better = r[a] > r[best] || (r[a] == r[best] && ids[a] < ids[best]);
            if (better) {
                best = a;
                best_gain = gain;
            }
        }
        out.operations += n;
        if (best == n || !(best_gain > 0)) break;
        taken[best] = true;
        out.order.push_back(best);
        for (std::size_t a = 0; a < n; ++a) penalty[a] += similarity(a, best) * r[best];
        out.operations += n;
    }
    return out;
}

SalientPhraseSet salient_phrases(const CorpusIndex& index, DocIndex d, const SalienceConfig& config) {
    const auto& doc = index.document(d);
    SalientPhraseSet out;
    out.doc_id = doc.id;
    if (doc.postings.empty()) return out;

    std::vector<PhraseId> ids;
    std::vector<double> raw;
    std::vector<std::string> texts;
    for (const auto& post : doc.postings) {
        ids.push_back(post.phrase);
        raw.push_back(interestingness(index, post.phrase, d));
        texts.push_back(index.phrase(post.phrase).text);
    }
    const auto r = normalize_interestingness(raw);
    const auto selection = select_diverse(r, similarity_matrix(texts), ids, config.k, config.mu);

    std::set<PhraseId> members;
    for (auto pos : selection.order) {
        const auto& p = index.phrase(ids[pos]);
        if (p.kind == PhraseKind::pair) {
            members.insert(p.first);
            members.insert(p.second);
        }
    }
    for (auto pos : selection.order) {
        if (members.contains(ids[pos])) continue;
        out.phrases.push_back({ids[pos], texts[pos], r[pos]});
    }
    return out;
}

}  // namespace phrasecom
