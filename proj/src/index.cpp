#include "fieldspan/index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>

#include "fieldspan/errors.hpp"

namespace fieldspan {

FieldedDocument
analyze_document(std::string id, std::vector<std::pair<std::string, std::string>> const& fields)
{
    FieldedDocument doc{std::move(id), {}};
    doc.fields.reserve(fields.size());
    for (auto const& [name, text] : fields) {
        doc.fields.emplace_back(name, tokenize(text));
    }
    return doc;
}

Index Index::build(std::span<FieldedDocument const> corpus, std::vector<std::string> schema)
{
    Index index;
    {
        std::unordered_set<std::string_view> names;
        for (auto const& name : schema) {
            if (name.empty()) {
                throw CorpusError("schema contains an empty field name");
            }
            if (!names.insert(name).second) {
                throw CorpusError(fmt::format("schema repeats field '{}'", name));
            }
        }
    }
    index.m_schema = std::move(schema);
    auto num_fields = index.m_schema.size();
    index.m_field_len.assign(num_fields, std::vector<std::uint32_t>(corpus.size(), 0));
    index.m_field_total.assign(num_fields, 0);
    index.m_doc_ids.reserve(corpus.size());

    // Per term: ordinal of the last document that counted towards df.
    std::unordered_map<TermPostings*, DocOrdinal> last_counted;
    std::unordered_map<std::string_view, std::vector<Position>> grouped;

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto const& doc = corpus[i];
        auto ordinal = static_cast<DocOrdinal>(i);
        if (!index.m_doc_lookup.emplace(doc.id, ordinal).second) {
            throw CorpusError(fmt::format("duplicate document id '{}'", doc.id));
        }
        index.m_doc_ids.push_back(doc.id);

        std::vector<bool> seen_field(num_fields, false);
        for (auto const& [name, tokens] : doc.fields) {
            auto field = index.find_field(name);
            if (!field) {
                throw CorpusError(fmt::format("document '{}': unknown field '{}'", doc.id, name));
            }
            if (seen_field[*field]) {
                throw CorpusError(fmt::format("document '{}': field '{}' given twice", doc.id, name));
            }
            seen_field[*field] = true;

            grouped.clear();
            for (std::size_t p = 0; p < tokens.size(); ++p) {
                auto const& token = tokens[p];
                if (token.position != p) {
                    throw CorpusError(fmt::format(
                        "document '{}': field '{}' has non-dense token positions", doc.id, name));
                }
                if (token.term.empty()) {
                    throw CorpusError(fmt::format("document '{}': field '{}' has an empty term", doc.id, name));
                }
                grouped[token.term].push_back(token.position);
            }
            index.m_field_len[*field][ordinal] = static_cast<std::uint32_t>(tokens.size());
            index.m_field_total[*field] += tokens.size();

            for (auto& [term, positions] : grouped) {
                auto it = index.m_terms.find(term);
                if (it == index.m_terms.end()) {
                    TermPostings entry;
                    entry.fields.resize(num_fields);
                    it = index.m_terms.emplace(std::string(term), std::move(entry)).first;
                }
                auto* entry = &it->second;
                auto [last, inserted] = last_counted.try_emplace(entry, ordinal);
                if (inserted || last->second != ordinal) {
                    last->second = ordinal;
                    ++entry->df;
                }
                entry->fields[*field].push_back(Posting{ordinal, std::move(positions)});
            }
        }
    }
    return index;
}

std::optional<FieldId> Index::find_field(std::string_view name) const
{
    auto it = std::find(m_schema.begin(), m_schema.end(), name);
    if (it == m_schema.end()) {
        return std::nullopt;
    }
    return static_cast<FieldId>(it - m_schema.begin());
}

FieldId Index::field_id(std::string_view name) const
{
    if (auto field = find_field(name)) {
        return *field;
    }
    throw std::out_of_range(fmt::format("unknown field '{}'", name));
}

std::optional<DocOrdinal> Index::find_doc(std::string_view id) const
{
    auto it = m_doc_lookup.find(std::string(id));
    if (it == m_doc_lookup.end()) {
        return std::nullopt;
    }
    return it->second;
}

TermPostings const* Index::find_term(std::string_view term) const
{
    auto it = m_terms.find(term);
    return it == m_terms.end() ? nullptr : &it->second;
}

std::uint32_t Index::df(std::string_view term) const
{
    auto const* entry = find_term(term);
    return entry ? entry->df : 0;
}

double Index::avg_field_length(FieldId field) const
{
    if (m_doc_ids.empty()) {
        return 0.0;
    }
    return static_cast<double>(m_field_total.at(field)) / static_cast<double>(m_doc_ids.size());
}

std::uint64_t Index::flat_length(DocOrdinal doc) const
{
    std::uint64_t total = 0;
    for (auto const& lengths : m_field_len) {
        total += lengths.at(doc);
    }
    return total;
}

double Index::avg_flat_length() const
{
    if (m_doc_ids.empty()) {
        return 0.0;
    }
    auto total = std::accumulate(m_field_total.begin(), m_field_total.end(), std::uint64_t{0});
    return static_cast<double>(total) / static_cast<double>(m_doc_ids.size());
}

std::span<Posting const> Index::postings(std::string_view term, FieldId field) const
{
    auto const* entry = find_term(term);
    if (entry == nullptr) {
        return {};
    }
    return entry->fields.at(field);
}

std::span<Position const> Index::positions(std::string_view term, FieldId field, DocOrdinal doc) const
{
    return find_positions(postings(term, field), doc);
}

bool Index::operator==(Index const& other) const
{
    return m_schema == other.m_schema && m_doc_ids == other.m_doc_ids && m_terms == other.m_terms
        && m_field_len == other.m_field_len && m_field_total == other.m_field_total;
}

std::span<Position const> find_positions(std::span<Posting const> postings, DocOrdinal doc)
{
    auto it = std::lower_bound(
        postings.begin(), postings.end(), doc, [](Posting const& p, DocOrdinal d) { return p.doc < d; });
    if (it == postings.end() || it->doc != doc) {
        return {};
    }
    return it->positions;
}

Index build_index(std::span<FieldedDocument const> corpus, std::vector<std::string> schema)
{
    return Index::build(corpus, std::move(schema));
}

std::span<Position const>
lookup_positions(Index const& index, std::string_view term, std::string_view field, DocOrdinal doc)
{
    return index.positions(term, index.field_id(field), doc);
}

std::vector<Token> flatten(Index const& index, DocOrdinal doc)
{
    if (doc >= index.num_docs()) {
        throw std::out_of_range(fmt::format("document ordinal {} out of range", doc));
    }
    auto num_fields = static_cast<FieldId>(index.schema().size());
    std::vector<std::uint64_t> offsets(num_fields, 0);
    for (FieldId f = 1; f < num_fields; ++f) {
        offsets[f] = offsets[f - 1] + index.field_length(f - 1, doc);
    }

    // No forward index is kept; recover the token sequence from postings.
    std::vector<std::pair<std::uint64_t, std::string const*>> slots;
    slots.reserve(index.flat_length(doc));
    for (auto const& [term, entry] : index.terms()) {
        for (FieldId f = 0; f < num_fields; ++f) {
            for (auto pos : find_positions(entry.fields[f], doc)) {
                slots.emplace_back(offsets[f] + pos, &term);
            }
        }
    }
    std::sort(slots.begin(), slots.end());

    std::vector<Token> tokens;
    tokens.reserve(slots.size());
    for (auto const& [pos, term] : slots) {
        tokens.push_back(Token{*term, static_cast<Position>(tokens.size())});
    }
    return tokens;
}

}  // namespace fieldspan
