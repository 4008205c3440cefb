// Command-line front end: index, salient, compare, compare-sets, eval, sample.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phrasecom/compare.hpp"
#include "phrasecom/config.hpp"
#include "phrasecom/error.hpp"
#include "phrasecom/eval.hpp"
#include "phrasecom/persist.hpp"
#include "phrasecom/report.hpp"

using namespace phrasecom;

namespace {

// Flag values as typed; applied on top of the config file after parsing.
struct FlagLayer {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    bool trace = false;
    CLI::Option* trace_flag = nullptr;
    bool perfect_only = false;
    CLI::Option* perfect_flag = nullptr;
    bool allow_lambda = false;
    CLI::Option* allow_lambda_flag = nullptr;

    void add(CLI::App* app, const std::string& key, const std::string& help) {
        options[key] = app->add_option("--" + key, values[key], help);
    }

    void apply(RunConfig& config) const {
        for (const auto& [key, opt] : options)
            if (opt->count() > 0) set_option(config, key, values.at(key));
        if (trace_flag && trace_flag->count() > 0) config.trace = trace;
        if (perfect_flag && perfect_flag->count() > 0) config.perfect_only = perfect_only;
        if (allow_lambda_flag && allow_lambda_flag->count() > 0)
            config.compare.solver.allow_lambda_above_bound = allow_lambda;
    }
};

void add_common_flags(CLI::App* app, FlagLayer& flags) {
    flags.add(app, "corpus", "corpus JSON-lines file or directory of .txt files");
    flags.add(app, "index", "index file");
    flags.add(app, "positives", "positive phrase list, one phrase per line");
    flags.add(app, "k", "salient phrases per document (default 30)");
    flags.add(app, "mu", "interestingness/diversity trade-off (default 3)");
    flags.add(app, "alpha", "supervision strength (default 100)");
    flags.add(app, "lambda", "selection trade-off (default 0.099)");
    flags.add(app, "gamma", "distinction smoothing (default 1)");
    flags.add(app, "delta", "supervision floor (default 0.1)");
    flags.add(app, "method", "cda|nograph|twostep|altermea|wordmatch|stringfuzzy|contextfuzzy");
    flags.add(app, "seed", "random seed (default 42)");
    flags.add(app, "out", "output file (default stdout)");
    flags.add(app, "min_support", "minimum phrase support (default 10)");
    flags.trace_flag = app->add_flag("--trace", flags.trace, "include objective traces");
    flags.allow_lambda_flag = app->add_flag("--allow-lambda-above-bound", flags.allow_lambda,
                                            "accept lambda above the non-negativity bound");
}

RunConfig load_config(const FlagLayer& flags) {
    RunConfig config;
    if (const char* path = std::getenv("PHRASECOM_CONFIG"); path && *path)
        apply_config_file(config, path);
    flags.apply(config);
    const auto warning = validate(config);
    if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
    return config;
}

void emit(const RunConfig& config, const std::string& text) {
    if (config.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + config.out_path + "'");
    out << text;
}

std::string require(const std::string& value, const char* what) {
    if (value.empty()) throw ParameterError(std::string("missing --") + what);
    return value;
}

std::vector<std::string> split_ids(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream in(list);
    for (std::string id; std::getline(in, id, ',');)
        if (!id.empty()) out.push_back(id);
    if (out.empty()) throw ParameterError("empty document id list '" + list + "'");
    return out;
}

int cmd_index(const RunConfig& config) {
    const auto raw = read_corpus(require(config.corpus_path, "corpus"));
    PositiveList positives;
    if (!config.positives_path.empty()) positives = read_positive_list(config.positives_path);
    const auto docs = make_documents(raw);
    const auto bundle = build_bundle(docs, config.corpus, positives, config.bm25);
    save_index(require(config.index_path, "index"), bundle);
    const auto stats = index_statistics(bundle, config.compare.salience);
    if (!config.out_path.empty()) emit(config, statistics_json(stats));
    std::cout << statistics_table(stats);
    for (auto d : bundle.graph.isolated_documents)
        std::cerr << "warning: document '" << bundle.index.document(d).id
                  << "' has no vocabulary phrase\n";
    return 0;
}

int cmd_salient(const RunConfig& config, const std::vector<std::string>& ids) {
    const auto bundle = load_index(require(config.index_path, "index"));
    std::string out;
    if (ids.empty()) {
        for (DocIndex d = 0; d < bundle.index.num_documents(); ++d)
            out += salient_json(salient_phrases(bundle.index, d, config.compare.salience));
    } else {
        for (const auto& id : ids)
            out += salient_json(salient_phrases(bundle.index, bundle.index.require_document(id),
                                                config.compare.salience));
    }
    emit(config, out);
    return 0;
}

int cmd_compare(const RunConfig& config, const std::string& a, const std::string& b, bool sets) {
    const auto bundle = load_index(require(config.index_path, "index"));
    const Comparator comparator(bundle.index, bundle.graph, config.compare);
    const Method method = parse_method(config.method);
    const auto result = sets ? comparator.compare_sets(method, split_ids(a), split_ids(b))
                             : comparator.compare(method, a, b);
    emit(config, comparison_json(result, config.trace));
    return 0;
}

int cmd_eval(const RunConfig& config, const std::string& methods_arg) {
    const auto bundle = load_index(require(config.index_path, "index"));
    const auto pairs = read_pairs(require(config.pairs_path, "pairs"));
    const auto gold = read_gold(require(config.gold_path, "gold"), config.perfect_only);
    std::vector<Method> methods;
    if (methods_arg.empty())
        methods.push_back(parse_method(config.method));
    else if (methods_arg == "all")
        methods = all_methods();
    else
        for (const auto& name : split_ids(methods_arg)) methods.push_back(parse_method(name));

    const Comparator comparator(bundle.index, bundle.graph, config.compare);
    std::vector<EvalReport> reports;
    for (auto method : methods) {
        std::vector<std::pair<std::string, ComparisonResult>> results;
        for (const auto& p : pairs)
            results.emplace_back(p.pair_id, comparator.compare_sets(method, p.ids_a, p.ids_b));
        reports.push_back(evaluate_pairs(results, gold));
        reports.back().method = std::string(method_name(method));
    }
    if (!config.out_path.empty()) emit(config, eval_json(reports));
    std::cout << eval_table(reports);
    return 0;
}

int cmd_sample(const RunConfig& config, const SampleRequest& base) {
    const auto bundle = load_index(require(config.index_path, "index"));
    SampleRequest request = base;
    request.seed = config.seed;
    const auto sample = sample_pairs(bundle.index, request);
    if (sample.short_supply) std::cerr << "warning: fewer pairs available than requested\n";
    std::string out;
    std::size_t n = 0;
    for (const auto& p : sample.pairs) {
        char cos[32];
        std::snprintf(cos, sizeof cos, "%.6f", p.cosine);
        out += "p" + std::to_string(++n) + "\t" + bundle.index.document(p.a).id + "\t" +
               bundle.index.document(p.b).id + "\t# " + p.stratum + " " + cos + "\n";
    }
    emit(config, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Comparative phrase extraction over a document collection"};
    app.require_subcommand(1);

    FlagLayer index_flags, salient_flags, compare_flags, sets_flags, eval_flags, sample_flags;

    auto* index = app.add_subcommand("index", "build and persist the corpus index");
    add_common_flags(index, index_flags);

    auto* salient = app.add_subcommand("salient", "print salient phrases of documents");
    add_common_flags(salient, salient_flags);
    std::vector<std::string> salient_ids;
    salient->add_option("doc_ids", salient_ids, "documents (default: all)");

    auto* compare = app.add_subcommand("compare", "compare two documents");
    add_common_flags(compare, compare_flags);
    std::string id_a, id_b;
    compare->add_option("id_a", id_a, "first document")->required();
    compare->add_option("id_b", id_b, "second document")->required();

    auto* compare_sets = app.add_subcommand("compare-sets", "compare two document sets");
    add_common_flags(compare_sets, sets_flags);
    std::string set_a, set_b;
    compare_sets->add_option("ids_a", set_a, "comma-separated ids of the first set")->required();
    compare_sets->add_option("ids_b", set_b, "comma-separated ids of the second set")->required();

    auto* eval = app.add_subcommand("eval", "score methods against gold labels");
    add_common_flags(eval, eval_flags);
    eval_flags.add(eval, "pairs", "pairs file: pair_id<TAB>ids_a<TAB>ids_b");
    eval_flags.add(eval, "gold", "gold file: pair_id<TAB>role<TAB>phrase<TAB>label");
    std::string methods;
    eval->add_option("--methods", methods, "comma-separated methods, or 'all'");
    eval_flags.perfect_flag =
        eval->add_flag("--perfect-only", eval_flags.perfect_only, "count only 'perfect' as positive");

    auto* sample = app.add_subcommand("sample", "draw related/unrelated document pairs");
    add_common_flags(sample, sample_flags);
    SampleRequest request;
    sample->add_option("--n-high", request.n_high, "pairs with cosine above 0.6");
    sample->add_option("--n-low", request.n_low, "pairs with cosine in (0.05, 0.2)");
    sample->add_option("--n-random", request.n_random, "uniformly drawn pairs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (index->parsed()) return cmd_index(load_config(index_flags));
        if (salient->parsed()) return cmd_salient(load_config(salient_flags), salient_ids);
        if (compare->parsed()) return cmd_compare(load_config(compare_flags), id_a, id_b, false);
        if (compare_sets->parsed()) return cmd_compare(load_config(sets_flags), set_a, set_b, true);
        if (eval->parsed()) return cmd_eval(load_config(eval_flags), methods);
        if (sample->parsed()) return cmd_sample(load_config(sample_flags), request);
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
