#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fieldspan/config.hpp"
#include "fieldspan/corpus.hpp"
#include "fieldspan/errors.hpp"
#include "fieldspan/index.hpp"
#include "fieldspan/search.hpp"

namespace {

using namespace fieldspan;

ScorerParams resolve_params(Index const& index, std::string const& config_path)
{
    if (config_path.empty()) {
        return ScorerParams::defaults(index.schema());
    }
    return load_config(config_path, index.schema());
}

void cmd_index(std::string const& corpus_path, std::string const& schema_list, std::string const& out_path)
{
    auto schema = parse_schema(schema_list);
    std::ifstream in(corpus_path);
    if (!in) {
        throw Error(fmt::format("cannot open corpus '{}'", corpus_path));
    }
    auto corpus = read_corpus_jsonl(in, schema);
    auto index = build_index(corpus, schema);
    save_index(index, out_path);

    std::cout << "N=" << index.num_docs() << '\n';
    for (FieldId f = 0; f < index.schema().size(); ++f) {
        std::cout << fmt::format("avgLen({})={}\n", index.schema()[f], index.avg_field_length(f));
    }
    std::cout << "vocabulary=" << index.vocabulary_size() << '\n';
}

void print_explanation(ScoreExplanation const& explanation)
{
    for (auto const& term : explanation.terms) {
        std::cout << fmt::format(
            "    term {} idf={:.6f} weight={:.6f} score={:.6f}\n", term.term, term.idf, term.weight, term.score);
        for (auto const& field : term.fields) {
            std::cout << fmt::format(
                "      field {} freq={:.6f} norm={:.6f} contribution={:.6f}\n",
                field.field,
                field.frequency,
                field.normalizer,
                field.contribution);
        }
    }
    std::cout << fmt::format("    total={:.6f}\n", explanation.total);
}

void cmd_search(
    std::string const& index_path,
    std::string const& query_text,
    std::string const& scorer_name,
    std::string const& config_path,
    std::size_t k,
    bool explain)
{
    auto kind = parse_scorer(scorer_name);
    auto index = load_index(index_path);
    auto params = resolve_params(index, config_path);
    QueryScorer scorer(index, analyze_query(query_text), kind, params);
    auto ranking = search_topk(scorer, index, k);
    std::size_t rank = 0;
    for (auto const& entry : ranking.entries) {
        std::cout << ++rank << ' ' << entry.doc_id << ' ' << format_score(entry.score) << '\n';
        if (explain) {
            print_explanation(scorer.explain(*index.find_doc(entry.doc_id)));
        }
    }
}

void cmd_batch(
    std::string const& index_path,
    std::string const& queries_path,
    std::string const& scorer_name,
    std::string const& config_path,
    std::size_t k,
    std::string const& tag,
    std::string const& out_path,
    unsigned threads)
{
    auto kind = parse_scorer(scorer_name);
    std::ifstream queries_in(queries_path);
    if (!queries_in) {
        throw Error(fmt::format("cannot open queries '{}'", queries_path));
    }
    auto queries = read_queries(queries_in);
    auto index = load_index(index_path);
    auto params = resolve_params(index, config_path);
    auto run = run_batch(index, queries, kind, params, k, tag, threads);
    if (out_path.empty() || out_path == "-") {
        std::cout << run;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << run;
    out.close();
    if (!out) {
        throw Error(fmt::format("failed writing run file '{}'", out_path));
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Field-aware proximity scoring engine"};
    app.require_subcommand(1);

    std::string corpus_path;
    std::string schema = "title,body";
    std::string index_out;
    auto* index_cmd = app.add_subcommand("index", "Build an index from a JSON Lines corpus");
    index_cmd->add_option("--corpus", corpus_path, "JSON Lines corpus")->required();
    index_cmd->add_option("--schema", schema, "Comma-separated field names")->capture_default_str();
    index_cmd->add_option("--out", index_out, "Index file to write")->required();

    std::string index_path;
    std::string query_text;
    std::string scorer = "fieldspan";
    std::string config_path;
    std::size_t k = 10;
    bool explain = false;
    auto* search_cmd = app.add_subcommand("search", "Run one query");
    search_cmd->add_option("--index", index_path, "Index file")->required();
    search_cmd->add_option("--query", query_text, "Query text")->required();
    search_cmd->add_option("--scorer", scorer, "bm25, bm25f, es or fieldspan")->capture_default_str();
    search_cmd->add_option("--config", config_path, "Scorer configuration (JSON)");
    search_cmd->add_option("-k", k, "Number of results")->capture_default_str()->check(CLI::PositiveNumber);
    search_cmd->add_flag("--explain", explain, "Print the score breakdown of every hit");

    std::string queries_path;
    std::string tag = "fieldspan";
    std::string run_out;
    unsigned threads = 1;
    auto* batch_cmd = app.add_subcommand("batch", "Run a query file and write a TREC run");
    batch_cmd->add_option("--index", index_path, "Index file")->required();
    batch_cmd->add_option("--queries", queries_path, "Lines of query_id<TAB>query_text")->required();
    batch_cmd->add_option("--scorer", scorer, "bm25, bm25f, es or fieldspan")->capture_default_str();
    batch_cmd->add_option("--config", config_path, "Scorer configuration (JSON)");
    batch_cmd->add_option("-k", k, "Results per query")->capture_default_str()->check(CLI::PositiveNumber);
    batch_cmd->add_option("--tag", tag, "Run tag")->capture_default_str();
    batch_cmd->add_option("--out", run_out, "Run file (default: standard output)");
    batch_cmd->add_option("--threads", threads, "Queries scored concurrently")->capture_default_str()->check(
        CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (index_cmd->parsed()) {
            cmd_index(corpus_path, schema, index_out);
        } else if (search_cmd->parsed()) {
            cmd_search(index_path, query_text, scorer, config_path, k, explain);
        } else if (batch_cmd->parsed()) {
            cmd_batch(index_path, queries_path, scorer, config_path, k, tag, run_out, threads);
        }
    } catch (ConfigError const& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
