#include "phrasecom/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "phrasecom/error.hpp"
#include "phrasecom/text.hpp"

namespace phrasecom {

CorpusIndex::CorpusIndex(CorpusConfig config, std::vector<std::string> words,
                         std::vector<Phrase> phrases, std::vector<IndexedDocument> docs,
                         BuildStats stats)
    : config_(std::move(config)),
      words_(std::move(words)),
      phrases_(std::move(phrases)),
      docs_(std::move(docs)),
      stats_(stats) {}

const Phrase& CorpusIndex::phrase(PhraseId p) const {
    if (p >= phrases_.size()) throw LookupError("unknown phrase id " + std::to_string(p));
    return phrases_[p];
}

std::optional<DocIndex> CorpusIndex::find_document(std::string_view id) const {
    for (DocIndex d = 0; d < docs_.size(); ++d)
        if (docs_[d].id == id) return d;
    return std::nullopt;
}

DocIndex CorpusIndex::require_document(std::string_view id) const {
    auto d = find_document(id);
    if (!d) throw LookupError("unknown document id '" + std::string(id) + "'");
    return *d;
}

std::optional<PhraseId> CorpusIndex::find_phrase(std::string_view text) const {
    for (const auto& p : phrases_)
        if (p.text == text) return p.id;
    return std::nullopt;
}

std::uint32_t CorpusIndex::count(PhraseId p, DocIndex d) const {
    const auto& postings = document(d).postings;
    auto it = std::lower_bound(postings.begin(), postings.end(), p,
                               [](const Posting& x, PhraseId id) { return x.phrase < id; });
    return (it != postings.end() && it->phrase == p) ? it->count : 0;
}

double CorpusIndex::average_length() const {
    if (docs_.empty()) return 0.0;
    double total = 0.0;
    for (const auto& d : docs_) total += d.length;
    return total / static_cast<double>(docs_.size());
}

std::vector<std::string> CorpusIndex::lemma_text(DocIndex d) const {
    std::vector<std::string> out;
    for (auto w : document(d).lemmas) out.push_back(words_.at(w));
    return out;
}

CorpusIndex build_index(std::span<const Document> corpus, const CorpusConfig& config,
                        const PositiveList& positives) {
    if (corpus.empty()) throw InputError("empty corpus");
    {
        std::set<std::string_view> seen;
        for (const auto& doc : corpus) {
            if (doc.id.empty()) throw InputError("document with empty id");
            if (!seen.insert(doc.id).second)
                throw InputError("duplicate document id '" + doc.id + "'");
        }
    }

    BuildStats stats;
    const NgramCounts counts = count_ngrams(corpus, config.max_len);
    stats.total_lemmas = counts.total_lemmas;

    const auto candidates =
        mine_frequent_patterns(counts, config.max_len, config.min_support, positives, config);
    stats.candidate_phrases = candidates.size();
    const QualityTable primary = make_quality_table(candidates);

    QualityTable expanded;
    // A pattern seen once carries no co-occurrence evidence, so the relaxed
    // pass never goes below a support of two.
    const std::size_t relaxed = std::max<std::size_t>(2, (config.min_support + 1) / 2);
    if (relaxed < config.min_support) {
        auto extra = mine_frequent_patterns(counts, config.max_len, relaxed, positives, config);
        std::erase_if(extra, [&](const PhraseCandidate& c) { return c.support >= config.min_support; });
        stats.expanded_candidates = extra.size();
        expanded = make_quality_table(extra);
    }

    std::vector<std::vector<Segment>> segmentations;
    segmentations.reserve(corpus.size());
    std::set<std::string> single_texts;
    std::set<std::string> word_set;
    for (const auto& doc : corpus) {
        segmentations.push_back(segment_document(doc, primary, expanded, config));
        for (const auto& s : segmentations.back()) {
            auto span = std::span<const std::string>(doc.lemmas).subspan(s.start, s.length);
            if (s.length == 1 && is_stopword(span[0])) continue;
            single_texts.insert(join_words(span));
        }
        word_set.insert(doc.lemmas.begin(), doc.lemmas.end());
    }

    std::vector<std::string> words(word_set.begin(), word_set.end());
    std::unordered_map<std::string, std::uint32_t> word_ids;
    for (std::uint32_t i = 0; i < words.size(); ++i) word_ids.emplace(words[i], i);

    std::vector<Phrase> phrases;
    std::unordered_map<std::string, PhraseId> single_ids;
    for (const auto& text : single_texts) {
        Phrase p;
        p.id = static_cast<PhraseId>(phrases.size());
        p.kind = PhraseKind::single;
        std::istringstream in(text);
        for (std::string w; in >> w;) p.words.push_back(w);
        p.text = text;
        single_ids.emplace(text, p.id);
        phrases.push_back(std::move(p));
    }

    // Per-document segment references and pair counts.
    std::vector<IndexedDocument> docs(corpus.size());
    std::vector<std::map<std::pair<PhraseId, PhraseId>, std::uint32_t>> doc_pairs(corpus.size());
    std::set<std::pair<PhraseId, PhraseId>> pair_keys;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto& doc = corpus[d];
        auto& out = docs[d];
        out.id = doc.id;
        for (const auto& l : doc.lemmas) out.lemmas.push_back(word_ids.at(l));
        for (auto e : doc.sentence_ends) out.sentence_ends.push_back(static_cast<std::uint32_t>(e));

        std::vector<PhraseOccurrence> occurrences;
        for (const auto& s : segmentations[d]) {
            auto span = std::span<const std::string>(doc.lemmas).subspan(s.start, s.length);
            SegmentRef ref{s.start, s.length, kNoPhrase};
            if (!(s.length == 1 && is_stopword(span[0]))) {
                auto text = join_words(span);
                ref.phrase = single_ids.at(text);
                ++out.length;
                if (!config.pair_multiword_only || s.length > 1)
                    occurrences.push_back({std::move(text), s.start, s.length});
            }
            out.segments.push_back(ref);
        }
        for (const auto& pc : detect_phrase_pairs(occurrences, config.pair_window,
                                                  config.pair_min_cooccurrence)) {
            const PhraseId a = single_ids.at(pc.first);
            const PhraseId b = single_ids.at(pc.second);
            doc_pairs[d][{a, b}] = pc.count;
            pair_keys.insert({a, b});
        }
    }

    std::map<std::pair<PhraseId, PhraseId>, PhraseId> pair_ids;
    for (const auto& key : pair_keys) {
        Phrase p;
        p.id = static_cast<PhraseId>(phrases.size());
        p.kind = PhraseKind::pair;
        p.first = key.first;
        p.second = key.second;
        p.text = phrases[key.first].text + "@@" + phrases[key.second].text;
        pair_ids.emplace(key, p.id);
        phrases.push_back(std::move(p));
    }
    stats.phrase_pairs = pair_keys.size();

    for (std::size_t d = 0; d < corpus.size(); ++d) {
        std::map<PhraseId, std::uint32_t> counts_d;
        for (const auto& s : docs[d].segments)
            if (s.phrase != kNoPhrase) ++counts_d[s.phrase];
        for (const auto& [key, c] : doc_pairs[d]) counts_d[pair_ids.at(key)] = c;
        for (const auto& [p, c] : counts_d) {
            docs[d].postings.push_back({p, c});
            ++phrases[p].doc_frequency;
        }
    }

    return CorpusIndex(config, std::move(words), std::move(phrases), std::move(docs), stats);
}

std::vector<RawDocument> read_jsonl_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open corpus file " + path.string());
    std::vector<RawDocument> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j.contains("text") || !j["id"].is_string() ||
            !j["text"].is_string())
            throw InputError(path.string() + ":" + std::to_string(line_no) +
                             ": expected object with string fields 'id' and 'text'");
        out.push_back({j["id"].get<std::string>(), j["text"].get<std::string>()});
    }
    return out;
}

std::vector<RawDocument> read_text_directory(const std::filesystem::path& dir) {
    std::vector<RawDocument> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        out.push_back({entry.path().stem().string(), buf.str()});
    }
    std::sort(out.begin(), out.end(),
              [](const RawDocument& a, const RawDocument& b) { return a.id < b.id; });
    return out;
}

std::vector<RawDocument> read_corpus(const std::filesystem::path& path) {
    if (std::filesystem::is_directory(path)) return read_text_directory(path);
    return read_jsonl_corpus(path);
}

std::vector<Document> make_documents(std::span<const RawDocument> raw) {
    std::vector<Document> out;
    out.reserve(raw.size());
    for (const auto& r : raw) out.push_back(make_document(r.id, r.text));
    return out;
}

PositiveList read_positive_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open positive phrase list " + path.string());
    PositiveList out;
    std::string line;
    while (std::getline(in, line)) {
        const auto tokens = tokenize(line).tokens;
        if (!tokens.empty()) out.insert(join_words(lemmatize(tokens)));
    }
    return out;
}

}  // namespace phrasecom
