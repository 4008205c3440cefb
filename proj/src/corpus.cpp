#include "phrasecom/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "phrasecom/text.hpp"

namespace phrasecom {

std::string join_words(std::span<const std::string> words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out.push_back(' ');
        out += words[i];
    }
    return out;
}

std::string PhraseCandidate::text() const { return join_words(lemmas); }

Document make_document(std::string id, std::string text) {
    Document doc;
    doc.id = std::move(id);
    auto tokenized = tokenize(text);
    doc.text = std::move(text);
    doc.tokens = std::move(tokenized.tokens);
    doc.sentence_ends = std::move(tokenized.sentence_ends);
    doc.lemmas = lemmatize(doc.tokens);
    return doc;
}

namespace {

template <typename Fn>
void for_each_sentence(const Document& doc, Fn&& fn) {
    std::size_t begin = 0;
    for (std::size_t end : doc.sentence_ends) {
        fn(std::span<const std::string>(doc.lemmas).subspan(begin, end - begin), begin);
        begin = end;
    }
}

bool is_candidate_shape(std::span<const std::string> lemmas) {
    if (lemmas.empty()) return false;
    return !is_stopword(lemmas.front()) && !is_stopword(lemmas.back());
}

}  // namespace

NgramCounts count_ngrams(std::span<const Document> corpus, std::size_t max_len) {
    NgramCounts out;
    for (const auto& doc : corpus) {
        out.total_lemmas += doc.lemmas.size();
        for_each_sentence(doc, [&](std::span<const std::string> sentence, std::size_t) {
            for (std::size_t i = 0; i < sentence.size(); ++i) {
                std::string key;
                for (std::size_t n = 1; n <= max_len && i + n <= sentence.size(); ++n) {
                    if (n > 1) key.push_back(' ');
                    key += sentence[i + n - 1];
                    ++out.counts[key];
                }
            }
        });
    }
    return out;
}

double score_phrase_quality(std::span<const std::string> lemmas, const NgramCounts& stats,
                            const PositiveList& positives, const CorpusConfig& config) {
    if (lemmas.size() <= 1) return 1.0;

    const double total = static_cast<double>(std::max<std::uint64_t>(stats.total_lemmas, 1));
    const double joint = stats.support(join_words(lemmas));

    double base = 0.0;
    if (joint > 0) {
        double min_pmi = INFINITY;
        for (std::size_t cut = 1; cut < lemmas.size(); ++cut) {
            const double left = stats.support(join_words(lemmas.first(cut)));
            const double right = stats.support(join_words(lemmas.subspan(cut)));
            if (left <= 0 || right <= 0) continue;
            min_pmi = std::min(min_pmi, std::log(joint * total / (left * right)));
        }
        if (std::isfinite(min_pmi)) {
            const double self_info = -std::log(joint / total);
            const double npmi = self_info > 0 ? min_pmi / self_info : 1.0;
            // Splits at or below independence contribute nothing.
            base = std::clamp(npmi, 0.0, 1.0);
        }
    }

    double listing = 0.0;
    if (!positives.empty()) {
        if (positives.contains(join_words(lemmas))) {
            listing = 1.0;
        } else {
            for (std::size_t n = 1; n < lemmas.size() && listing == 0.0; ++n) {
                if (positives.contains(join_words(lemmas.first(n))) ||
                    positives.contains(join_words(lemmas.last(n))))
                    listing = 0.5;
            }
        }
    }
    const double beta = std::clamp(config.positive_bonus, 0.0, 1.0);
    return std::clamp((1.0 - beta) * base + beta * listing, 0.0, 1.0);
}

std::vector<PhraseCandidate> mine_frequent_patterns(const NgramCounts& counts,
                                                    std::size_t max_len, std::size_t min_support,
                                                    const PositiveList& positives,
                                                    const CorpusConfig& config) {
    std::vector<PhraseCandidate> out;
    for (const auto& [key, support] : counts.counts) {
        if (support < min_support) continue;
        PhraseCandidate c;
        std::size_t begin = 0;
        while (begin <= key.size()) {
            std::size_t space = key.find(' ', begin);
            if (space == std::string::npos) space = key.size();
            c.lemmas.push_back(key.substr(begin, space - begin));
            begin = space + 1;
        }
        if (c.lemmas.size() > max_len || !is_candidate_shape(c.lemmas)) continue;
        c.support = support;
        c.quality = score_phrase_quality(c.lemmas, counts, positives, config);
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const PhraseCandidate& a, const PhraseCandidate& b) { return a.lemmas < b.lemmas; });
    return out;
}

std::vector<PhraseCandidate> mine_frequent_patterns(std::span<const Document> corpus,
                                                    std::size_t max_len, std::size_t min_support,
                                                    const PositiveList& positives,
                                                    const CorpusConfig& config) {
    return mine_frequent_patterns(count_ngrams(corpus, max_len), max_len, min_support, positives,
                                  config);
}

QualityTable make_quality_table(std::span<const PhraseCandidate> candidates) {
    QualityTable table;
    for (const auto& c : candidates)
        if (c.lemmas.size() > 1 && c.quality > 0) table.emplace(c.text(), c.quality);
    return table;
}

namespace {

template <typename Lookup>
std::vector<Segment> segment_with(std::span<const std::string> lemmas, Lookup&& quality_of,
                                  std::size_t max_len, double unigram_prior) {
    const std::size_t n = lemmas.size();
    if (n == 0) return {};
    const double unigram_score = std::log(unigram_prior);

    // best[i]: optimal segmentation of the suffix starting at i.
    std::vector<double> score(n + 1, 0.0);
    std::vector<std::uint32_t> count(n + 1, 0);
    std::vector<std::uint32_t> choice(n + 1, 1);

    for (std::size_t i = n; i-- > 0;) {
        bool have = false;
        std::string key;
        for (std::size_t len = 1; len <= max_len && i + len <= n; ++len) {
            if (len > 1) key.push_back(' ');
            key += lemmas[i + len - 1];
            double seg;
            if (len == 1) {
                seg = unigram_score;
            } else {
                const double q = quality_of(key);
                if (!(q > 0)) continue;
                seg = std::log(q);
            }
            const double total = seg + score[i + len];
            const std::uint32_t segs = count[i + len] + 1;
            bool better = !have;
            if (have) {
                const double tol = 1e-12 * std::max(1.0, std::fabs(total));
                if (total > score[i] + tol) {
                    better = true;
                } else if (std::fabs(total - score[i]) <= tol) {
                    better = segs < count[i] || (segs == count[i] && len > choice[i]);
                }
            }
            if (better) {
                have = true;
                score[i] = total;
                count[i] = segs;
                choice[i] = static_cast<std::uint32_t>(len);
            }
        }
    }

    std::vector<Segment> out;
    for (std::size_t i = 0; i < n; i += choice[i])
        out.push_back({static_cast<std::uint32_t>(i), choice[i]});
    return out;
}

double single_word_fraction(std::span<const std::string> lemmas, std::span<const Segment> segs) {
    std::size_t content = 0;
    std::size_t single = 0;
    for (const auto& s : segs) {
        for (std::uint32_t k = s.start; k < s.end(); ++k) {
            if (is_stopword(lemmas[k])) continue;
            ++content;
            if (s.length == 1) ++single;
        }
    }
    return content == 0 ? 0.0 : static_cast<double>(single) / static_cast<double>(content);
}

}  // namespace

std::vector<Segment> segment_sentence(std::span<const std::string> lemmas,
                                      const QualityTable& qualities, std::size_t max_len,
                                      double unigram_prior) {
    return segment_with(
        lemmas,
        [&](const std::string& key) {
            auto it = qualities.find(key);
            return it == qualities.end() ? 0.0 : it->second;
        },
        max_len, unigram_prior);
}

std::vector<Segment> segment_document(const Document& doc, const QualityTable& candidates,
                                      const QualityTable& expanded, const CorpusConfig& config) {
    std::vector<Segment> out;
    for_each_sentence(doc, [&](std::span<const std::string> sentence, std::size_t offset) {
        auto segs = segment_sentence(sentence, candidates, config.max_len, config.unigram_prior);
        if (!expanded.empty() &&
            single_word_fraction(sentence, segs) > config.non_segmented_ratio) {
            segs = segment_with(
                sentence,
                [&](const std::string& key) {
                    if (auto it = candidates.find(key); it != candidates.end()) return it->second;
                    auto it = expanded.find(key);
                    return it == expanded.end() ? 0.0 : it->second;
                },
                config.max_len, config.unigram_prior);
        }
        for (auto s : segs) {
            s.start += static_cast<std::uint32_t>(offset);
            out.push_back(s);
        }
    });
    return out;
}

std::vector<Segment> segment_document(const Document& doc, const QualityTable& candidates,
                                      const CorpusConfig& config) {
    return segment_document(doc, candidates, QualityTable{}, config);
}

std::vector<PhrasePairCount> detect_phrase_pairs(std::span<const PhraseOccurrence> occurrences,
                                                 std::size_t window,
                                                 std::size_t min_cooccurrence) {
    std::vector<const PhraseOccurrence*> sorted;
    sorted.reserve(occurrences.size());
    for (const auto& o : occurrences) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        return a->start != b->start ? a->start < b->start : a->length < b->length;
    });

    std::map<std::pair<std::string, std::string>, std::uint32_t> counts;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const auto& a = *sorted[i];
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const auto& b = *sorted[j];
            if (b.start >= a.start + window) break;
            const std::uint32_t extent = std::max(a.start + a.length, b.start + b.length) - a.start;
            if (extent > window || a.text == b.text) continue;
            if (a.text < b.text)
                ++counts[{a.text, b.text}];
            else
                ++counts[{b.text, a.text}];
        }
    }

    std::vector<PhrasePairCount> out;
    for (const auto& [key, count] : counts)
        if (count > min_cooccurrence) out.push_back({key.first, key.second, count});
    return out;
}

}  // namespace phrasecom
