#include "phrasecom/persist.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include "phrasecom/error.hpp"

namespace phrasecom {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

IndexBundle build_bundle(std::span<const Document> corpus, const CorpusConfig& config,
                         const PositiveList& positives, const Bm25Params& bm25) {
    IndexBundle b{build_index(corpus, config, positives), {}};
    b.graph = build_graph(b.index, bm25);
    return b;
}

namespace {

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        out_.append(s);
    }
    void raw(std::string_view s) { out_.append(s); }
    void u32s(const std::vector<std::uint32_t>& v) {
        u64(v.size());
        for (auto x : v) u32(x);
    }

    std::string& bytes() { return out_; }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view in) : in_(in) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(in_[pos_++]);
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::string str() {
        const auto n = u32();
        need(n);
        std::string s(in_.substr(pos_, n));
        pos_ += n;
        return s;
    }
    std::string_view raw(std::size_t n) {
        need(n);
        auto s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t count(std::size_t min_bytes_each) {
        const auto n = u64();
        if (min_bytes_each > 0 && n > (in_.size() - pos_) / min_bytes_each)
            throw InputError("index file truncated or corrupt (count " + std::to_string(n) + ")");
        return static_cast<std::size_t>(n);
    }
    std::vector<std::uint32_t> u32s() {
        std::vector<std::uint32_t> v(count(4));
        for (auto& x : v) x = u32();
        return v;
    }
    bool done() const { return pos_ == in_.size(); }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) throw InputError("index file truncated");
    }

    std::string_view in_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(const IndexBundle& bundle) {
    const auto& index = bundle.index;
    const auto& c = index.config();
    Writer w;
    w.raw(kIndexMagic);
    w.u32(kIndexVersion);

    w.u64(c.max_len);
    w.u64(c.min_support);
    w.f64(c.unigram_prior);
    w.f64(c.positive_bonus);
    w.f64(c.non_segmented_ratio);
    w.u64(c.pair_window);
    w.u64(c.pair_min_cooccurrence);
    w.u8(c.pair_multiword_only ? 1 : 0);
    w.f64(bundle.graph.params.k1);
    w.f64(bundle.graph.params.b);

    const auto& s = index.stats();
    w.u64(s.candidate_phrases);
    w.u64(s.expanded_candidates);
    w.u64(s.phrase_pairs);
    w.u64(s.total_lemmas);

    w.u64(index.words().size());
    for (const auto& word : index.words()) w.str(word);

    w.u64(index.phrases().size());
    for (const auto& p : index.phrases()) {
        w.u8(static_cast<std::uint8_t>(p.kind));
        w.u32(p.first);
        w.u32(p.second);
        w.u32(p.doc_frequency);
        w.str(p.text);
        w.u32(static_cast<std::uint32_t>(p.words.size()));
        for (const auto& word : p.words) w.str(word);
    }

    w.u64(index.documents().size());
    for (const auto& d : index.documents()) {
        w.str(d.id);
        w.u32(d.length);
        w.u32s(d.lemmas);
        w.u32s(d.sentence_ends);
        w.u64(d.segments.size());
        for (const auto& seg : d.segments) {
            w.u32(seg.start);
            w.u32(seg.length);
            w.u32(seg.phrase);
        }
        w.u64(d.postings.size());
        for (const auto& post : d.postings) {
            w.u32(post.phrase);
            w.u32(post.count);
        }
    }

    const auto& W = bundle.graph.weights;
    const auto triplets = W.triplets();
    w.u64(W.rows());
    w.u64(W.cols());
    w.u64(triplets.size());
    for (const auto& t : triplets) {
        w.u32(t.row);
        w.u32(t.col);
        w.f64(t.value);
    }

    const auto checksum = fnv1a64(w.bytes());
    w.u64(checksum);
    return std::move(w.bytes());
}

IndexBundle deserialize(std::string_view bytes) {
    if (bytes.size() < kIndexMagic.size() + 4 + 8 || bytes.substr(0, kIndexMagic.size()) != kIndexMagic)
        throw InputError("not a phrasecom index file (bad magic)");
    const auto body = bytes.substr(0, bytes.size() - 8);
    Reader tail(bytes.substr(bytes.size() - 8));
    if (tail.u64() != fnv1a64(body)) throw InputError("index file checksum mismatch");

    Reader r(body);
    r.raw(kIndexMagic.size());
    const auto version = r.u32();
    if (version != kIndexVersion)
        throw InputError("unsupported index version " + std::to_string(version));

    CorpusConfig c;
    c.max_len = r.u64();
    c.min_support = r.u64();
    c.unigram_prior = r.f64();
    c.positive_bonus = r.f64();
    c.non_segmented_ratio = r.f64();
    c.pair_window = r.u64();
    c.pair_min_cooccurrence = r.u64();
    c.pair_multiword_only = r.u8() != 0;
    Bm25Params bm25;
    bm25.k1 = r.f64();
    bm25.b = r.f64();

    BuildStats s;
    s.candidate_phrases = r.u64();
    s.expanded_candidates = r.u64();
    s.phrase_pairs = r.u64();
    s.total_lemmas = r.u64();

    std::vector<std::string> words(r.count(4));
    for (auto& word : words) word = r.str();

    std::vector<Phrase> phrases(r.count(21));
    for (PhraseId i = 0; i < phrases.size(); ++i) {
        auto& p = phrases[i];
        p.id = i;
        const auto kind = r.u8();
        if (kind > 1) throw InputError("index file: bad phrase kind");
        p.kind = static_cast<PhraseKind>(kind);
        p.first = r.u32();
        p.second = r.u32();
        p.doc_frequency = r.u32();
        p.text = r.str();
        p.words.resize(r.u32());
        for (auto& word : p.words) word = r.str();
    }

    std::vector<IndexedDocument> docs(r.count(8));
    for (auto& d : docs) {
        d.id = r.str();
        d.length = r.u32();
        d.lemmas = r.u32s();
        d.sentence_ends = r.u32s();
        d.segments.resize(r.count(12));
        for (auto& seg : d.segments) {
            seg.start = r.u32();
            seg.length = r.u32();
            seg.phrase = r.u32();
        }
        d.postings.resize(r.count(8));
        for (auto& post : d.postings) {
            post.phrase = r.u32();
            post.count = r.u32();
        }
    }

    const auto rows = r.u64();
    const auto cols = r.u64();
    if (rows != phrases.size() || cols != docs.size())
        throw InputError("index file: graph dimensions do not match the vocabulary");
    std::vector<Triplet> triplets(r.count(16));
    for (auto& t : triplets) {
        t.row = r.u32();
        t.col = r.u32();
        t.value = r.f64();
        if (t.row >= rows || t.col >= cols) throw InputError("index file: graph entry out of range");
    }
    if (!r.done()) throw InputError("index file: trailing bytes");

    IndexBundle out{CorpusIndex(c, std::move(words), std::move(phrases), std::move(docs), s), {}};
    out.graph = graph_from_weights(SparseMatrix::from_triplets(rows, cols, std::move(triplets)), bm25);
    return out;
}

void save_index(const std::filesystem::path& path, const IndexBundle& bundle) {
    const auto bytes = serialize(bundle);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write index file '" + path.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError("failed writing index file '" + path.string() + "'");
}

IndexBundle load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open index file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

}  // namespace phrasecom
