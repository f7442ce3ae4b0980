#include "fieldspan/search.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <fmt/format.h>

#include "fieldspan/errors.hpp"

namespace fieldspan {

RankedList search_topk(QueryScorer const& scorer, Index const& index, std::size_t k)
{
    if (k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
    RankedList ranking;
    auto candidates = scorer.candidates();
    ranking.entries.reserve(candidates.size());
    for (auto doc : candidates) {
        ranking.entries.push_back(RankedEntry{index.doc_id(doc), scorer.score(doc)});
    }
    auto by_rank = [](RankedEntry const& a, RankedEntry const& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.doc_id < b.doc_id;
    };
    auto& entries = ranking.entries;
    if (k < entries.size()) {
        std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k), entries.end(), by_rank);
        entries.resize(k);
    } else {
        std::sort(entries.begin(), entries.end(), by_rank);
    }
    return ranking;
}

RankedList
search_topk(Index const& index, Query const& query, ScorerKind kind, ScorerParams const& params, std::size_t k)
{
    return search_topk(QueryScorer(index, query, kind, params), index, k);
}

std::vector<QueryRecord> read_queries(std::istream& in)
{
    std::vector<QueryRecord> queries;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw Error(fmt::format("queries line {}: expected 'query_id<TAB>query_text'", line_no));
        }
        QueryRecord record{line.substr(0, tab), line.substr(tab + 1)};
        if (record.id.empty() || record.id.find(' ') != std::string::npos) {
            throw Error(fmt::format("queries line {}: invalid query id '{}'", line_no, record.id));
        }
        if (!ids.insert(record.id).second) {
            throw Error(fmt::format("queries line {}: duplicate query id '{}'", line_no, record.id));
        }
        queries.push_back(std::move(record));
    }
    return queries;
}

std::string format_score(double score) { return fmt::format("{:.6f}", score); }

void write_run(std::ostream& out, std::string_view query_id, RankedList const& ranking, std::string_view tag)
{
    std::size_t rank = 0;
    for (auto const& entry : ranking.entries) {
        out << fmt::format("{} Q0 {} {} {} {}\n", query_id, entry.doc_id, ++rank, format_score(entry.score), tag);
    }
}

std::string run_batch(
    Index const& index,
    std::vector<QueryRecord> const& queries,
    ScorerKind kind,
    ScorerParams const& params,
    std::size_t k,
    std::string_view tag,
    unsigned threads)
{
    params.validate(index.schema().size());
    if (k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
    std::vector<std::string> outputs(queries.size());
    auto run_one = [&](std::size_t i) {
        auto query = analyze_query(queries[i].text);
        if (query.empty()) {
            return;
        }
        std::ostringstream out;
        write_run(out, queries[i].id, search_topk(index, query, kind, params, k), tag);
        outputs[i] = std::move(out).str();
    };

    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(queries.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < queries.size(); ++i) {
            run_one(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> workers;
            for (unsigned w = 0; w < threads; ++w) {
                workers.emplace_back([&] {
                    for (auto i = next++; i < queries.size(); i = next++) {
                        try {
                            run_one(i);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) {
                                failure = std::current_exception();
                            }
                        }
                    }
                });
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::string run;
    for (auto const& part : outputs) {
        run += part;
    }
    return run;
}

}  // namespace fieldspan
