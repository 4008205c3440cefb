#include "phrasecom/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "phrasecom/error.hpp"

namespace phrasecom {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view what) {
    throw ParameterError("invalid value '" + std::string(value) + "' for " + std::string(key) +
                         " (expected " + std::string(what) + ")");
}

double to_double(std::string_view key, std::string_view v) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) bad_value(key, v, "a number");
    return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        bad_value(key, v, "a non-negative integer");
    return out;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    bad_value(key, v, "true or false");
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

template <typename Get>
Setter real_field(Get get) {
    return [get](RunConfig& c, std::string_view k, std::string_view v) { get(c) = to_double(k, v); };
}

template <typename Get>
Setter size_field(Get get) {
    return [get](RunConfig& c, std::string_view k, std::string_view v) {
        get(c) = static_cast<std::remove_reference_t<decltype(get(c))>>(to_uint(k, v));
    };
}

template <typename Get>
Setter bool_field(Get get) {
    return [get](RunConfig& c, std::string_view k, std::string_view v) { get(c) = to_bool(k, v); };
}

template <typename Get>
Setter text_field(Get get) {
    return [get](RunConfig& c, std::string_view, std::string_view v) { get(c) = std::string(v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"k", size_field([](RunConfig& c) -> auto& { return c.compare.salience.k; })},
        {"mu", real_field([](RunConfig& c) -> auto& { return c.compare.salience.mu; })},
        {"alpha", real_field([](RunConfig& c) -> auto& { return c.compare.solver.alpha; })},
        {"lambda", real_field([](RunConfig& c) -> auto& { return c.compare.solver.lambda; })},
        {"gamma", real_field([](RunConfig& c) -> auto& { return c.compare.solver.gamma; })},
        {"delta", real_field([](RunConfig& c) -> auto& { return c.compare.solver.delta; })},
        {"inner_tol", real_field([](RunConfig& c) -> auto& { return c.compare.solver.inner_tol; })},
        {"outer_tol", real_field([](RunConfig& c) -> auto& { return c.compare.solver.outer_tol; })},
        {"max_inner", size_field([](RunConfig& c) -> auto& { return c.compare.solver.max_inner; })},
        {"max_outer", size_field([](RunConfig& c) -> auto& { return c.compare.solver.max_outer; })},
        {"allow_lambda_above_bound",
         bool_field([](RunConfig& c) -> auto& { return c.compare.solver.allow_lambda_above_bound; })},
        {"max_len", size_field([](RunConfig& c) -> auto& { return c.corpus.max_len; })},
        {"min_support", size_field([](RunConfig& c) -> auto& { return c.corpus.min_support; })},
        {"unigram_prior", real_field([](RunConfig& c) -> auto& { return c.corpus.unigram_prior; })},
        {"positive_bonus", real_field([](RunConfig& c) -> auto& { return c.corpus.positive_bonus; })},
        {"non_segmented_ratio",
         real_field([](RunConfig& c) -> auto& { return c.corpus.non_segmented_ratio; })},
        {"pair_window", size_field([](RunConfig& c) -> auto& { return c.corpus.pair_window; })},
        {"pair_min_cooccurrence",
         size_field([](RunConfig& c) -> auto& { return c.corpus.pair_min_cooccurrence; })},
        {"pair_multiword_only",
         bool_field([](RunConfig& c) -> auto& { return c.corpus.pair_multiword_only; })},
        {"bm25_k1", real_field([](RunConfig& c) -> auto& { return c.bm25.k1; })},
        {"bm25_b", real_field([](RunConfig& c) -> auto& { return c.bm25.b; })},
        {"wordmatch_top_k",
         size_field([](RunConfig& c) -> auto& { return c.compare.baselines.wordmatch_top_k; })},
        {"stringfuzzy_threshold",
         real_field([](RunConfig& c) -> auto& { return c.compare.baselines.stringfuzzy_threshold; })},
        {"contextfuzzy_window",
         size_field([](RunConfig& c) -> auto& { return c.compare.baselines.contextfuzzy_window; })},
        {"contextfuzzy_threshold",
         real_field([](RunConfig& c) -> auto& { return c.compare.baselines.contextfuzzy_threshold; })},
        {"method", text_field([](RunConfig& c) -> auto& { return c.method; })},
        {"trace", bool_field([](RunConfig& c) -> auto& { return c.trace; })},
        {"perfect_only", bool_field([](RunConfig& c) -> auto& { return c.perfect_only; })},
        {"seed", size_field([](RunConfig& c) -> auto& { return c.seed; })},
        {"corpus", text_field([](RunConfig& c) -> auto& { return c.corpus_path; })},
        {"index", text_field([](RunConfig& c) -> auto& { return c.index_path; })},
        {"positives", text_field([](RunConfig& c) -> auto& { return c.positives_path; })},
        {"gold", text_field([](RunConfig& c) -> auto& { return c.gold_path; })},
        {"pairs", text_field([](RunConfig& c) -> auto& { return c.pairs_path; })},
        {"out", text_field([](RunConfig& c) -> auto& { return c.out_path; })},
    };
    return table;
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
}

void set_option(RunConfig& config, std::string_view key, std::string_view value) {
    auto it = setters().find(key);
    if (it == setters().end()) throw ParameterError("unknown setting '" + std::string(key) + "'");
    it->second(config, key, trim(value));
}

void apply_config_text(RunConfig& config, std::string_view text, std::string_view source) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const auto content = trim(std::string_view(line).substr(0, hash));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        if (eq == std::string::npos) throw InputError(where + "expected 'key = value'");
        try {
            set_option(config, trim(std::string_view(content).substr(0, eq)),
                       trim(std::string_view(content).substr(eq + 1)));
        } catch (const ParameterError& e) {
            throw InputError(where + e.what());
        }
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(config, buf.str(), path.string());
}

std::string validate(const RunConfig& c) {
    if (c.corpus.max_len < 1) throw ParameterError("max_len must be at least 1");
    if (c.corpus.min_support < 1) throw ParameterError("min_support must be at least 1");
    if (!(c.corpus.unigram_prior > 0 && c.corpus.unigram_prior <= 1))
        throw ParameterError("unigram_prior must lie in (0, 1]");
    if (!(c.corpus.positive_bonus >= 0 && c.corpus.positive_bonus <= 1))
        throw ParameterError("positive_bonus must lie in [0, 1]");
    if (!(c.corpus.non_segmented_ratio >= 0 && c.corpus.non_segmented_ratio <= 1))
        throw ParameterError("non_segmented_ratio must lie in [0, 1]");
    if (c.corpus.pair_window < 1) throw ParameterError("pair_window must be at least 1");
    if (!(c.bm25.k1 >= 0)) throw ParameterError("bm25_k1 must be non-negative");
    if (!(c.bm25.b >= 0 && c.bm25.b <= 1)) throw ParameterError("bm25_b must lie in [0, 1]");
    if (c.compare.salience.k < 1) throw ParameterError("k must be at least 1");
    if (!(c.compare.salience.mu > 0)) throw ParameterError("mu must be positive");
    parse_method(c.method);
    validate_baseline_config(c.compare.baselines);
    return validate_params(c.compare.solver).warning;
}

}  // namespace phrasecom
