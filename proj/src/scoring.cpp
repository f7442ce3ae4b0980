#include "fieldspan/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "fieldspan/errors.hpp"

namespace fieldspan {

namespace {

constexpr std::string_view flat_field_name = "*";

bool is_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }
bool is_non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

// Merges the per-term position lists of one field into position order.
std::vector<Occurrence> merge_occurrences(
    std::span<TermPostings const* const> postings, FieldId field, DocOrdinal doc, Position offset)
{
    std::vector<Occurrence> occurrences;
    for (std::size_t t = 0; t < postings.size(); ++t) {
        if (postings[t] == nullptr) {
            continue;
        }
        for (auto pos : find_positions(postings[t]->fields[field], doc)) {
            occurrences.push_back(Occurrence{offset + pos, static_cast<QueryTermId>(t)});
        }
    }
    std::sort(occurrences.begin(), occurrences.end(), [](auto const& a, auto const& b) {
        return a.position < b.position;
    });
    return occurrences;
}

std::vector<TermPostings const*> resolve(Index const& index, Query const& query)
{
    std::vector<TermPostings const*> postings;
    postings.reserve(query.size());
    for (auto const& term : query.terms()) {
        postings.push_back(index.find_term(term));
    }
    return postings;
}

std::size_t term_frequency(TermPostings const* postings, FieldId field, DocOrdinal doc)
{
    return postings == nullptr ? 0 : find_positions(postings->fields[field], doc).size();
}

}  // namespace

ScorerKind parse_scorer(std::string_view name)
{
    if (name == "bm25") {
        return ScorerKind::bm25;
    }
    if (name == "bm25f") {
        return ScorerKind::bm25f;
    }
    if (name == "es") {
        return ScorerKind::expanded_span;
    }
    if (name == "fieldspan") {
        return ScorerKind::fieldspan;
    }
    throw ConfigError(fmt::format("unknown scorer '{}' (expected bm25, bm25f, es or fieldspan)", name));
}

std::string_view scorer_name(ScorerKind kind) noexcept
{
    switch (kind) {
    case ScorerKind::bm25: return "bm25";
    case ScorerKind::bm25f: return "bm25f";
    case ScorerKind::expanded_span: return "es";
    case ScorerKind::fieldspan: return "fieldspan";
    }
    return "unknown";
}

ScorerParams ScorerParams::defaults(std::span<std::string const> schema)
{
    ScorerParams params;
    for (auto const& name : schema) {
        FieldParams field{1.0, params.b, params.z, params.x};
        if (name == "title") {
            field.boost = 2.0;
            field.b = 0.0;
        }
        params.fields.push_back(field);
    }
    return params;
}

void ScorerParams::validate(std::size_t num_fields) const
{
    if (!(std::isfinite(k1) && k1 > 0.0)) {
        throw ConfigError(fmt::format("k1 must be positive, got {}", k1));
    }
    if (!is_unit_interval(b)) {
        throw ConfigError(fmt::format("b must lie in [0, 1], got {}", b));
    }
    if (!is_non_negative(z) || !is_non_negative(x)) {
        throw ConfigError("z and x must be non-negative");
    }
    if (window < 1) {
        throw ConfigError("M must be at least 1");
    }
    if (fields.size() != num_fields) {
        throw ConfigError(
            fmt::format("expected parameters for {} fields, got {}", num_fields, fields.size()));
    }
    for (auto const& field : fields) {
        if (!is_non_negative(field.boost)) {
            throw ConfigError(fmt::format("field boost must be non-negative, got {}", field.boost));
        }
        if (!is_unit_interval(field.b)) {
            throw ConfigError(fmt::format("field b must lie in [0, 1], got {}", field.b));
        }
        if (!is_non_negative(field.z) || !is_non_negative(field.x)) {
            throw ConfigError("field z and x must be non-negative");
        }
    }
}

double idf(std::uint64_t num_docs, std::uint64_t df)
{
    if (df > num_docs) {
        throw std::invalid_argument(fmt::format("df {} exceeds document count {}", df, num_docs));
    }
    auto n = static_cast<double>(num_docs);
    auto d = static_cast<double>(df);
    return std::log((n - d + 0.5) / (d + 0.5));
}

QueryScorer::QueryScorer(Index const& index, Query query, ScorerKind kind, ScorerParams params)
    : m_index(&index), m_query(std::move(query)), m_kind(kind), m_params(std::move(params))
{
    if (m_query.empty()) {
        throw EmptyQueryError();
    }
    m_params.validate(index.schema().size());
    m_postings = resolve(index, m_query);
    m_idf.reserve(m_postings.size());
    for (auto const* postings : m_postings) {
        double value = idf(index.num_docs(), postings == nullptr ? 0 : postings->df);
        if (m_params.clamp_negative_idf) {
            value = std::max(value, 0.0);
        }
        m_idf.push_back(value);
    }
}

double QueryScorer::score(DocOrdinal doc) const { return evaluate(doc, nullptr); }

ScoreExplanation QueryScorer::explain(DocOrdinal doc) const
{
    ScoreExplanation explanation;
    explanation.scorer = m_kind;
    explanation.doc_id = m_index->doc_id(doc);
    evaluate(doc, &explanation);
    return explanation;
}

std::vector<DocOrdinal> QueryScorer::candidates() const
{
    std::vector<DocOrdinal> docs;
    for (auto const* postings : m_postings) {
        if (postings == nullptr) {
            continue;
        }
        for (auto const& field : postings->fields) {
            for (auto const& posting : field) {
                docs.push_back(posting.doc);
            }
        }
    }
    std::sort(docs.begin(), docs.end());
    docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
    return docs;
}

double QueryScorer::evaluate(DocOrdinal doc, ScoreExplanation* explanation) const
{
    if (doc >= m_index->num_docs()) {
        throw std::out_of_range(fmt::format("document ordinal {} out of range", doc));
    }
    switch (m_kind) {
    case ScorerKind::bm25:
    case ScorerKind::expanded_span: return flat_score(doc, explanation);
    case ScorerKind::bm25f:
    case ScorerKind::fieldspan: return fielded_score(doc, explanation);
    }
    return 0.0;
}

double QueryScorer::flat_score(DocOrdinal doc, ScoreExplanation* explanation) const
{
    auto const& index = *m_index;
    auto num_fields = static_cast<FieldId>(index.schema().size());
    double const k1 = m_params.k1;
    double const b = m_params.b;
    double const avg_len = index.avg_flat_length();
    auto const len = static_cast<double>(index.flat_length(doc));
    double const length_ratio_term = avg_len > 0.0 ? b * len / avg_len : 0.0;
    double const norm = k1 * ((1.0 - b) + length_ratio_term);

    SpanConfig const span_config{m_params.window};
    std::vector<Span> spans;
    if (m_kind == ScorerKind::expanded_span) {
        spans = extract_spans(flat_occurrences(index, doc, m_query), span_config);
    }

    double total = 0.0;
    for (std::size_t t = 0; t < m_query.size(); ++t) {
        double frequency = 0.0;
        if (m_kind == ScorerKind::bm25) {
            std::size_t tf = 0;
            for (FieldId f = 0; f < num_fields; ++f) {
                tf += term_frequency(m_postings[t], f, doc);
            }
            frequency = static_cast<double>(tf);
        } else {
            frequency = span_contribution(
                spans, static_cast<QueryTermId>(t), m_params.z, m_params.x, span_config);
        }
        double weight = 0.0;
        if (frequency > 0.0) {
            weight = (k1 + 1.0) * frequency / (norm + frequency);
        }
        double term_score = weight * m_idf[t];
        total += term_score;
        if (explanation != nullptr) {
            explanation->terms.push_back(TermExplanation{
                m_query[t],
                m_idf[t],
                {FieldContribution{std::string(flat_field_name), frequency, norm, frequency}},
                weight,
                term_score});
        }
    }
    if (explanation != nullptr) {
        explanation->total = total;
    }
    return total;
}

double QueryScorer::fielded_score(DocOrdinal doc, ScoreExplanation* explanation) const
{
    auto const& index = *m_index;
    auto num_fields = static_cast<FieldId>(index.schema().size());
    double const k1 = m_params.k1;
    SpanConfig const span_config{m_params.window};

    struct FieldState {
        bool active = false;
        double norm = 0.0;
        std::vector<Span> spans;
    };
    std::vector<FieldState> fields(num_fields);
    for (FieldId f = 0; f < num_fields; ++f) {
        auto const& fp = m_params.fields[f];
        auto len = static_cast<double>(index.field_length(f, doc));
        double avg = index.avg_field_length(f);
        auto& state = fields[f];
        state.active = len > 0.0 && avg > 0.0;
        if (!state.active) {
            continue;
        }
        state.norm = (1.0 - fp.b) + fp.b * len / avg;
        if (m_kind == ScorerKind::fieldspan) {
            state.spans = extract_spans(merge_occurrences(m_postings, f, doc, 0), span_config);
        }
    }

    double total = 0.0;
    for (std::size_t t = 0; t < m_query.size(); ++t) {
        TermExplanation* term_explanation = nullptr;
        if (explanation != nullptr) {
            term_explanation = &explanation->terms.emplace_back();
            term_explanation->term = m_query[t];
            term_explanation->idf = m_idf[t];
        }
        double w = 0.0;
        for (FieldId f = 0; f < num_fields; ++f) {
            auto const& fp = m_params.fields[f];
            auto const& state = fields[f];
            double frequency = 0.0;
            double contribution = 0.0;
            if (state.active) {
                if (m_kind == ScorerKind::bm25f) {
                    frequency = static_cast<double>(term_frequency(m_postings[t], f, doc));
                } else {
                    frequency = span_contribution(
                        state.spans, static_cast<QueryTermId>(t), fp.z, fp.x, span_config);
                }
                if (frequency > 0.0) {
                    contribution = frequency * fp.boost / state.norm;
                    w += contribution;
                }
            }
            if (term_explanation != nullptr) {
                term_explanation->fields.push_back(
                    FieldContribution{index.schema()[f], frequency, state.norm, contribution});
            }
        }
        double weight = w > 0.0 ? w / (k1 + w) : 0.0;
        double term_score = weight * m_idf[t];
        total += term_score;
        if (term_explanation != nullptr) {
            term_explanation->weight = weight;
            term_explanation->score = term_score;
        }
    }
    if (explanation != nullptr) {
        explanation->total = total;
    }
    return total;
}

std::vector<Occurrence>
field_occurrences(Index const& index, DocOrdinal doc, FieldId field, Query const& query)
{
    return merge_occurrences(resolve(index, query), field, doc, 0);
}

std::vector<Occurrence> flat_occurrences(Index const& index, DocOrdinal doc, Query const& query)
{
    auto postings = resolve(index, query);
    std::vector<Occurrence> occurrences;
    Position offset = 0;
    for (FieldId f = 0; f < index.schema().size(); ++f) {
        auto field = merge_occurrences(postings, f, doc, offset);
        occurrences.insert(occurrences.end(), field.begin(), field.end());
        offset += index.field_length(f, doc);
    }
    return occurrences;
}

namespace {

ScorerParams fielded_params(double k1, std::span<FieldParams const> fields, std::uint32_t window)
{
    ScorerParams params;
    params.k1 = k1;
    params.fields.assign(fields.begin(), fields.end());
    params.window = window;
    return params;
}

}  // namespace

double bm25_score(Index const& index, DocOrdinal doc, Query const& query, Bm25Params params)
{
    ScorerParams all = ScorerParams::defaults(index.schema());
    all.k1 = params.k1;
    all.b = params.b;
    return QueryScorer(index, query, ScorerKind::bm25, std::move(all)).score(doc);
}

double bm25f_field_weight(
    Index const& index, std::string_view term, DocOrdinal doc, std::span<FieldParams const> fields)
{
    // The saturation constant does not enter w(t,D); any valid k1 works here.
    QueryScorer scorer(index, Query({std::string(term)}), ScorerKind::bm25f, fielded_params(1.0, fields, 1));
    auto explanation = scorer.explain(doc);
    double w = 0.0;
    for (auto const& field : explanation.terms.front().fields) {
        w += field.contribution;
    }
    return w;
}

double bm25f_score(
    Index const& index, DocOrdinal doc, Query const& query, double k1, std::span<FieldParams const> fields)
{
    return QueryScorer(index, query, ScorerKind::bm25f, fielded_params(k1, fields, 1)).score(doc);
}

double relevance_contribution_flat(std::span<Span const> spans, QueryTermId term, EsParams params)
{
    return span_contribution(spans, term, params.z, params.x, SpanConfig{params.window});
}

double es_score(Index const& index, DocOrdinal doc, Query const& query, Bm25Params bm25, EsParams es)
{
    ScorerParams all = ScorerParams::defaults(index.schema());
    all.k1 = bm25.k1;
    all.b = bm25.b;
    all.z = es.z;
    all.x = es.x;
    all.window = es.window;
    return QueryScorer(index, query, ScorerKind::expanded_span, std::move(all)).score(doc);
}

double relevance_contribution_field(
    std::span<Span const> spans, QueryTermId term, FieldParams const& field, std::uint32_t window)
{
    return span_contribution(spans, term, field.z, field.x, SpanConfig{window});
}

double fieldspan_score(
    Index const& index,
    DocOrdinal doc,
    Query const& query,
    double k1,
    std::span<FieldParams const> fields,
    std::uint32_t window)
{
    return QueryScorer(index, query, ScorerKind::fieldspan, fielded_params(k1, fields, window)).score(doc);
}

double
score_document(Index const& index, DocOrdinal doc, Query const& query, ScorerKind kind, ScorerParams const& params)
{
    return QueryScorer(index, query, kind, params).score(doc);
}

ScoreExplanation explain_score(
    Index const& index, DocOrdinal doc, Query const& query, ScorerKind kind, ScorerParams const& params)
{
    return QueryScorer(index, query, kind, params).explain(doc);
}

}  // namespace fieldspan
