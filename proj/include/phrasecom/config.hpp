#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phrasecom/compare.hpp"
#include "phrasecom/corpus.hpp"
#include "phrasecom/graph.hpp"

namespace phrasecom {

/// Every tunable of a run plus the file paths it touches.
struct RunConfig {
    CorpusConfig corpus;
    Bm25Params bm25;
    CompareConfig compare;
    std::string method = "cda";
    bool trace = false;
    bool perfect_only = false;
    std::uint64_t seed = 42;

    std::string corpus_path;
    std::string index_path;
    std::string positives_path;
    std::string gold_path;
    std::string pairs_path;
    std::string out_path;
};

/// Keys understood by set_option and config files.
std::vector<std::string> config_keys();

/// Assigns one setting from its textual value. Throws ParameterError for an
/// unknown key or a value that does not parse.
void set_option(RunConfig& config, std::string_view key, std::string_view value);

/// Applies a flat `key = value` file body. Blank lines and `#` comments are
/// ignored. Errors name the source and line.
void apply_config_text(RunConfig& config, std::string_view text, std::string_view source);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Checks each module's constraints; returns the solver warning, if any.
std::string validate(const RunConfig& config);

}  // namespace phrasecom
