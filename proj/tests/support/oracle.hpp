#pragma once

// Brute-force scorer used as a test oracle. It works from raw token lists,
// recounts every statistic on each call and derives spans from the span
// constraints directly. It shares no code with the engine.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Doc {
    std::string id;
    std::vector<std::vector<std::string>> fields;  // schema order; empty = absent
};

struct Corpus {
    std::vector<std::string> schema;
    std::vector<Doc> docs;
};

struct FieldSetting {
    double boost;
    double b;
    double z;
    double x;
};

struct Setting {
    double k1;
    double b;
    double z;
    double x;
    std::uint32_t window;
    std::vector<FieldSetting> fields;
};

/// (position, term) in ascending position order.
using Occurrences = std::vector<std::pair<std::uint32_t, std::string>>;

/// Segment lengths of the spans covering `occ`: at each step the longest
/// prefix of the remaining occurrences that satisfies the span constraints.
std::vector<std::size_t> derive_spans(Occurrences const& occ, std::uint32_t window);

/// True when occ[begin, end) is a valid span under the constraints.
bool is_valid_span(Occurrences const& occ, std::size_t begin, std::size_t end, std::uint32_t window);

/// Lexicographically greatest sequence of segment lengths among all valid
/// partitions into contiguous spans, by full enumeration. Only for small n.
std::vector<std::size_t> enumerate_best_partition(Occurrences const& occ, std::uint32_t window);

std::vector<std::string> dedup(std::vector<std::string> const& query);

double bm25(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s);
double bm25f(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s);
double es(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s);
double fieldspan(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s);

}  // namespace oracle
