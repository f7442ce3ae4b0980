#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fieldspan/analysis.hpp"

namespace fieldspan {

/// Index of a term within its Query.
using QueryTermId = std::uint32_t;

struct Occurrence {
    Position position = 0;
    QueryTermId term = 0;

    bool operator==(Occurrence const&) const = default;
};

struct SpanConfig {
    /// Largest allowed distance between adjoining occurrences in a span (M).
    std::uint32_t window = 45;
};

/// A chain of query-term occurrences: positions strictly ascending, each
/// term at most once, adjoining gaps within the window.
class Span {
  public:
    Span() = default;
    explicit Span(std::vector<Occurrence> entries) : m_entries(std::move(entries)) {}

    [[nodiscard]] std::vector<Occurrence> const& entries() const noexcept { return m_entries; }
    [[nodiscard]] std::size_t length() const noexcept { return m_entries.size(); }
    [[nodiscard]] Position first() const { return m_entries.front().position; }
    [[nodiscard]] Position last() const { return m_entries.back().position; }
    [[nodiscard]] bool contains(QueryTermId term) const noexcept;

    bool operator==(Span const&) const = default;

  private:
    friend std::vector<Span> extract_spans(std::span<Occurrence const>, SpanConfig);
    std::vector<Occurrence> m_entries;
};

/// Greedy left-to-right chaining. An occurrence extends the open span when
/// its gap to the previous occurrence is within the window and its term is
/// not yet in the span; otherwise it opens a new span. The result
/// partitions the input.
///
/// Throws std::invalid_argument if positions are not strictly ascending and
/// ConfigError if the window is zero.
[[nodiscard]] std::vector<Span> extract_spans(std::span<Occurrence const> occurrences, SpanConfig config);

/// last - first + 1 for spans of two or more entries, 1/window for singletons.
[[nodiscard]] double span_width(Span const& span, SpanConfig config);

/// Sum of length^z / width^x over spans containing the term.
[[nodiscard]] double
span_contribution(std::span<Span const> spans, QueryTermId term, double z, double x, SpanConfig config);

}  // namespace fieldspan
