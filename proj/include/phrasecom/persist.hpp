#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "phrasecom/graph.hpp"
#include "phrasecom/index.hpp"

namespace phrasecom {

inline constexpr std::string_view kIndexMagic = "PHRCOMIX";
inline constexpr std::uint32_t kIndexVersion = 1;

/// Everything the index file holds.
struct IndexBundle {
    CorpusIndex index;
    BipartiteGraph graph;
};

/// Builds the corpus index and its BM25 graph.
IndexBundle build_bundle(std::span<const Document> corpus, const CorpusConfig& config = {},
                         const PositiveList& positives = {}, const Bm25Params& bm25 = {});

/// Byte image of the bundle (layout in docs/index_format.md).
std::string serialize(const IndexBundle& bundle);
/// Throws InputError on a bad magic, unsupported version, truncation or
/// checksum mismatch.
IndexBundle deserialize(std::string_view bytes);

void save_index(const std::filesystem::path& path, const IndexBundle& bundle);
IndexBundle load_index(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace phrasecom
