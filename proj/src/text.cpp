#include "phrasecom/text.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

namespace phrasecom {

namespace {

bool is_word_byte(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_sentence_break(char c) {
    return c == '.' || c == '?' || c == '!' || c == ';' || c == '\n';
}

char to_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool has_vowel(std::string_view s) {
    return std::any_of(s.begin(), s.end(), is_vowel);
}

// Irregular forms the suffix rules cannot recover.
const std::unordered_map<std::string_view, std::string_view>& exceptions() {
    static const std::unordered_map<std::string_view, std::string_view> table = {
        {"ate", "eat"},          {"eaten", "eat"},        {"eating", "eat"},
        {"went", "go"},          {"gone", "go"},          {"goes", "go"},
        {"was", "be"},           {"were", "be"},          {"is", "be"},
        {"are", "be"},           {"am", "be"},            {"been", "be"},
        {"being", "be"},         {"has", "have"},         {"had", "have"},
        {"having", "have"},      {"did", "do"},           {"does", "do"},
        {"done", "do"},          {"made", "make"},        {"making", "make"},
        {"ran", "run"},          {"saw", "see"},          {"seen", "see"},
        {"took", "take"},        {"taken", "take"},       {"gave", "give"},
        {"given", "give"},       {"found", "find"},       {"got", "get"},
        {"gotten", "get"},       {"thought", "think"},    {"brought", "bring"},
        {"bought", "buy"},       {"said", "say"},         {"told", "tell"},
        {"wrote", "write"},      {"written", "write"},    {"began", "begin"},
        {"begun", "begin"},      {"knew", "know"},        {"known", "know"},
        {"built", "build"},      {"held", "hold"},        {"kept", "keep"},
        {"led", "lead"},         {"meant", "mean"},       {"met", "meet"},
        {"paid", "pay"},         {"sent", "send"},        {"sat", "sit"},
        {"spent", "spend"},      {"stood", "stand"},      {"understood", "understand"},
        {"won", "win"},          {"lost", "lose"},        {"felt", "feel"},
        {"became", "become"},    {"came", "come"},        {"chose", "choose"},
        {"chosen", "choose"},    {"drew", "draw"},        {"drawn", "draw"},
        {"drove", "drive"},      {"driven", "drive"},     {"fell", "fall"},
        {"fallen", "fall"},      {"flew", "fly"},         {"flown", "fly"},
        {"forgot", "forget"},    {"forgotten", "forget"}, {"grew", "grow"},
        {"grown", "grow"},       {"hid", "hide"},         {"hidden", "hide"},
        {"rose", "rise"},        {"risen", "rise"},       {"spoke", "speak"},
        {"spoken", "speak"},     {"threw", "throw"},      {"thrown", "throw"},
        {"wore", "wear"},        {"worn", "wear"},        {"children", "child"},
        {"men", "man"},          {"women", "woman"},      {"mice", "mouse"},
        {"feet", "foot"},        {"teeth", "tooth"},      {"geese", "goose"},
        {"people", "person"},    {"indices", "index"},    {"matrices", "matrix"},
        {"vertices", "vertex"},  {"analyses", "analysis"}, {"theses", "thesis"},
        {"criteria", "criterion"}, {"phenomena", "phenomenon"}, {"data", "data"},
        {"news", "news"},        {"series", "series"},    {"species", "species"},
        {"bias", "bias"},        {"alias", "alias"},      {"atlas", "atlas"},
        {"canvas", "canvas"},    {"gas", "gas"},          {"whereas", "whereas"},
        {"biases", "bias"},      {"aliases", "alias"},    {"created", "create"},
        {"creating", "create"},  {"completed", "complete"}, {"completing", "complete"},
        {"deleted", "delete"},   {"deleting", "delete"},  {"stored", "store"},
        {"storing", "store"},    {"explored", "explore"}, {"exploring", "explore"},
        {"ignored", "ignore"},   {"ignoring", "ignore"},  {"scored", "score"},
        {"scoring", "score"},    {"restored", "restore"}, {"restoring", "restore"},
    };
    return table;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Stem endings that (almost) only occur in words with a silent final 'e'.
bool wants_silent_e(std::string_view stem) {
    const std::size_t n = stem.size();
    if (n < 3) return false;
    const char last = stem[n - 1];
    const char prev = stem[n - 2];
    const char before = stem[n - 3];
    if (last == 'v') return true;  // remov(e), deriv(e), solv(e)
    if (ends_with(stem, "iz") || ends_with(stem, "yz") || ends_with(stem, "dg")) return true;
    if (last == 'l' && !is_vowel(prev) && prev != 'l' && prev != 'r' && prev != 'w') return true;
    if (last == 'c' && (is_vowel(prev) || prev == 'n' || prev == 'r')) return true;
    if (last == 's' && (prev == 'a' || prev == 'i' || prev == 'o' || prev == 'n' || prev == 'r') &&
        !ends_with(stem, "ous") && !ends_with(stem, "ss"))
        return true;
    if (ends_with(stem, "uir") || ends_with(stem, "sum") || ends_with(stem, "ib")) return true;
    // Consonant + vowel + consonant at the end of a longer stem.
    if (!is_vowel(before) && before != 'q') {
        if (prev == 'a' && (last == 't' || last == 'r' || last == 'k')) return true;
        if (prev == 'u' && (last == 't' || last == 'r')) return true;
        if (prev == 'i' && (last == 'd' || last == 'n')) return true;
        if (prev == 'o' && (last == 'd' || last == 'k')) return true;
        if (prev == 'u' && last == 'l') return true;
    }
    if (n >= 4 && (ends_with(stem, "ang") || ends_with(stem, "eng"))) return true;
    if (n >= 4 && ends_with(stem, "ach") && !is_vowel(stem[n - 4])) return true;
    return false;
}

// Undo consonant doubling ("running" -> "run") or restore a silent 'e'
// ("sampled" -> "sample", "mining" -> "mine").
std::string repair_stem(std::string stem) {
    const std::size_t n = stem.size();
    if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
        stem.pop_back();
        return stem;
    }
    if (wants_silent_e(stem)) {
        stem.push_back('e');
        return stem;
    }
    // Short consonant-vowel-consonant stems ("hop" -> "hope"); vowel-initial
    // four-letter stems ("open", "edit") keep their form.
    if (n >= 3 && n <= 4 && !(n == 4 && is_vowel(stem[0])) && !is_vowel(stem[n - 1]) &&
        is_vowel(stem[n - 2]) && !is_vowel(stem[n - 3]) && stem[n - 1] != 'w' && stem[n - 1] != 'x' &&
        stem[n - 1] != 'y') {
        stem.push_back('e');
    }
    return stem;
}


}  // namespace

TokenizedText tokenize(std::string_view text) {
    TokenizedText out;
    std::string current;
    auto flush_word = [&] {
        if (!current.empty()) {
            out.tokens.push_back(std::move(current));
            current.clear();
        }
    };
    auto close_sentence = [&] {
        const std::size_t start = out.sentence_ends.empty() ? 0 : out.sentence_ends.back();
        if (out.tokens.size() > start) out.sentence_ends.push_back(out.tokens.size());
    };
    for (char c : text) {
        if (is_word_byte(static_cast<unsigned char>(c))) {
            current.push_back(to_lower(c));
            continue;
        }
        flush_word();
        if (is_sentence_break(c)) close_sentence();
    }
    flush_word();
    close_sentence();
    return out;
}

std::string lemmatize_word(std::string_view token) {
    const auto& table = exceptions();
    if (auto it = table.find(token); it != table.end()) return std::string(it->second);

    std::string w(token);
    if (w.size() <= 3 || !has_vowel(w)) return w;

    if (ends_with(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
    if (ends_with(w, "sses")) return w.substr(0, w.size() - 2);
    if (ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "zes"))
        return w.substr(0, w.size() - 2);
    if (ends_with(w, "ing") && w.size() >= 6) {
        std::string stem = w.substr(0, w.size() - 3);
        if (has_vowel(stem)) return repair_stem(std::move(stem));
        return w;
    }
    if (ends_with(w, "ied") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
    if (ends_with(w, "eed")) return w;
    if (ends_with(w, "ed") && w.size() >= 5) {
        std::string stem = w.substr(0, w.size() - 2);
        if (has_vowel(stem)) return repair_stem(std::move(stem));
        return w;
    }
    if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is"))
        return w.substr(0, w.size() - 1);
    return w;
}

std::vector<std::string> lemmatize(std::span<const std::string> tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(lemmatize_word(t));
    return out;
}

bool is_stopword(std::string_view lemma) {
    // Stored in lemma form: inflected stopwords ("is", "has") lemmatize to
    // "be" / "have" before this lookup.
    static const std::unordered_set<std::string_view> words = {
        "a",       "about",  "above",   "after",  "again",  "against", "all",    "also",
        "an",      "and",    "any",     "as",     "at",     "be",      "because", "before",
        "below",   "between", "both",   "but",    "by",     "can",     "could",  "do",
        "down",    "during", "each",    "either", "few",    "for",     "from",   "further",
        "have",    "he",     "her",     "here",   "hers",   "him",     "his",    "how",
        "i",       "if",     "in",      "into",   "it",     "its",     "itself", "just",
        "may",     "me",     "might",   "more",   "most",   "must",    "my",     "no",
        "nor",     "not",    "of",      "off",    "on",     "once",    "only",   "or",
        "other",   "our",    "out",     "over",   "own",    "same",    "she",    "should",
        "so",      "some",   "such",    "than",   "that",   "the",     "their",  "them",
        "then",    "there",  "these",   "they",   "this",   "those",   "through", "thus",
        "to",      "too",    "under",   "until",  "up",     "upon",    "very",   "via",
        "we",      "what",   "when",    "where",  "whether", "which",  "while",  "who",
        "whom",    "why",    "will",    "with",   "would",  "yet",     "you",    "your",
        "us",      "one",    "two",     "use",    "using",  "used",    "well",   "however",
        "within",  "without", "among",  "across", "onto",   "per",     "since",  "though",
    };
    return words.contains(lemma);
}

}  // namespace phrasecom
