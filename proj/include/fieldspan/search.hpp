#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fieldspan/scoring.hpp"

namespace fieldspan {

struct RankedEntry {
    std::string doc_id;
    double score = 0.0;

    bool operator==(RankedEntry const&) const = default;
};

/// Scores non-increasing, ties by ascending doc id.
struct RankedList {
    std::vector<RankedEntry> entries;

    bool operator==(RankedList const&) const = default;
};

/// Exhaustively scores every document holding a query term and keeps the
/// best k. Throws EmptyQueryError, ConfigError, or std::invalid_argument
/// for k == 0.
[[nodiscard]] RankedList
search_topk(Index const& index, Query const& query, ScorerKind kind, ScorerParams const& params, std::size_t k);

[[nodiscard]] RankedList search_topk(QueryScorer const& scorer, Index const& index, std::size_t k);

struct QueryRecord {
    std::string id;
    std::string text;
};

/// Reads "query_id<TAB>query_text" lines. Blank lines are skipped. Throws
/// Error naming the line on a missing tab, empty id, or duplicate id.
[[nodiscard]] std::vector<QueryRecord> read_queries(std::istream& in);

/// Fixed six-decimal rendering used by every textual output.
[[nodiscard]] std::string format_score(double score);

/// "qid Q0 docid rank score tag" lines, ranks from 1.
void write_run(std::ostream& out, std::string_view query_id, RankedList const& ranking, std::string_view tag);

/// Runs every query and returns the concatenated run in input order.
/// Queries analyzing to no terms produce no lines. With threads > 1 queries
/// are scored concurrently; output is identical to the sequential run.
[[nodiscard]] std::string run_batch(
    Index const& index,
    std::vector<QueryRecord> const& queries,
    ScorerKind kind,
    ScorerParams const& params,
    std::size_t k,
    std::string_view tag,
    unsigned threads = 1);

}  // namespace fieldspan
