#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fieldspan/analysis.hpp"
#include "fieldspan/index.hpp"
#include "fieldspan/spans.hpp"

namespace fieldspan {

enum class ScorerKind { bm25, bm25f, expanded_span, fieldspan };

/// Accepts "bm25", "bm25f", "es" and "fieldspan". Throws ConfigError.
[[nodiscard]] ScorerKind parse_scorer(std::string_view name);
[[nodiscard]] std::string_view scorer_name(ScorerKind kind) noexcept;

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

struct FieldParams {
    double boost = 1.0;
    double b = 0.75;
    double z = 0.55;
    double x = 0.25;

    bool operator==(FieldParams const&) const = default;
};

struct EsParams {
    double z = 0.55;
    double x = 0.25;
    std::uint32_t window = 45;
};

/// Everything any of the four scorers needs. `fields` is aligned with the
/// index schema.
struct ScorerParams {
    double k1 = 1.2;
    double b = 0.75;
    double z = 0.55;
    double x = 0.25;
    std::uint32_t window = 45;
    std::vector<FieldParams> fields;
    /// Replace negative idf values by 0. Off by default.
    bool clamp_negative_idf = false;

    /// Defaults for a schema: a field named "title" gets boost 2 and no
    /// length normalization, every other field boost 1 and the flat b.
    [[nodiscard]] static ScorerParams defaults(std::span<std::string const> schema);

    [[nodiscard]] Bm25Params bm25() const { return {k1, b}; }
    [[nodiscard]] EsParams es() const { return {z, x, window}; }

    /// Throws ConfigError on out-of-range values or a field count that
    /// differs from num_fields.
    void validate(std::size_t num_fields) const;
};

/// ln((N - df + 0.5) / (df + 0.5)). Negative when df > N/2.
/// Throws std::invalid_argument if df > N.
[[nodiscard]] double idf(std::uint64_t num_docs, std::uint64_t df);

struct FieldContribution {
    /// Field name, or "*" for the flat document view.
    std::string field;
    /// tf, or the span relevance contribution rc.
    double frequency = 0.0;
    /// Length normalizer: K(D) for flat scorers, (1-b_f)+b_f*len/avgLen for
    /// fielded ones.
    double normalizer = 0.0;
    /// Boosted, normalized frequency added to w(t,D). For flat scorers this
    /// is the raw frequency.
    double contribution = 0.0;
};

struct TermExplanation {
    std::string term;
    double idf = 0.0;
    std::vector<FieldContribution> fields;
    /// Saturated weight before the idf factor.
    double weight = 0.0;
    double score = 0.0;
};

struct ScoreExplanation {
    ScorerKind scorer = ScorerKind::bm25;
    std::string doc_id;
    std::vector<TermExplanation> terms;
    double total = 0.0;
};

/// A query resolved against an index for repeated document scoring.
class QueryScorer {
  public:
    /// Throws EmptyQueryError for an empty query and ConfigError for invalid
    /// parameters.
    QueryScorer(Index const& index, Query query, ScorerKind kind, ScorerParams params);

    [[nodiscard]] double score(DocOrdinal doc) const;
    [[nodiscard]] ScoreExplanation explain(DocOrdinal doc) const;

    /// Documents holding at least one query term in any field, ascending.
    [[nodiscard]] std::vector<DocOrdinal> candidates() const;

    [[nodiscard]] Query const& query() const noexcept { return m_query; }
    [[nodiscard]] ScorerKind kind() const noexcept { return m_kind; }

  private:
    double evaluate(DocOrdinal doc, ScoreExplanation* explanation) const;
    double flat_score(DocOrdinal doc, ScoreExplanation* explanation) const;
    double fielded_score(DocOrdinal doc, ScoreExplanation* explanation) const;

    Index const* m_index;
    Query m_query;
    ScorerKind m_kind;
    ScorerParams m_params;
    std::vector<TermPostings const*> m_postings;
    std::vector<double> m_idf;
};

[[nodiscard]] double bm25_score(Index const& index, DocOrdinal doc, Query const& query, Bm25Params params);

/// w(t,D) = sum over fields of tf * boost_f / ((1 - b_f) + b_f * len(f,D) / avgLen(f)).
/// Fields with zero length or zero average length contribute nothing.
[[nodiscard]] double bm25f_field_weight(
    Index const& index, std::string_view term, DocOrdinal doc, std::span<FieldParams const> fields);

[[nodiscard]] double bm25f_score(
    Index const& index, DocOrdinal doc, Query const& query, double k1, std::span<FieldParams const> fields);

/// rc(t,D) over spans extracted from the flat document view.
[[nodiscard]] double relevance_contribution_flat(std::span<Span const> spans, QueryTermId term, EsParams params);

[[nodiscard]] double
es_score(Index const& index, DocOrdinal doc, Query const& query, Bm25Params bm25, EsParams es);

/// rc(t,f,D) over spans extracted from one field.
[[nodiscard]] double relevance_contribution_field(
    std::span<Span const> spans, QueryTermId term, FieldParams const& field, std::uint32_t window);

[[nodiscard]] double fieldspan_score(
    Index const& index,
    DocOrdinal doc,
    Query const& query,
    double k1,
    std::span<FieldParams const> fields,
    std::uint32_t window);

[[nodiscard]] double
score_document(Index const& index, DocOrdinal doc, Query const& query, ScorerKind kind, ScorerParams const& params);

[[nodiscard]] ScoreExplanation explain_score(
    Index const& index, DocOrdinal doc, Query const& query, ScorerKind kind, ScorerParams const& params);

/// Query-term occurrences of one field of a document, ordered by position.
[[nodiscard]] std::vector<Occurrence>
field_occurrences(Index const& index, DocOrdinal doc, FieldId field, Query const& query);

/// Query-term occurrences over the flat view (fields in schema order).
[[nodiscard]] std::vector<Occurrence> flat_occurrences(Index const& index, DocOrdinal doc, Query const& query);

}  // namespace fieldspan
