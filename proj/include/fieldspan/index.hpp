#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fieldspan/analysis.hpp"

namespace fieldspan {

using DocOrdinal = std::uint32_t;
using FieldId = std::uint32_t;

struct FieldedDocument {
    std::string id;
    /// (field name, tokens); tokens carry dense positions 0..n-1.
    std::vector<std::pair<std::string, std::vector<Token>>> fields;
};

/// Tokenizes raw field text into a FieldedDocument.
[[nodiscard]] FieldedDocument
analyze_document(std::string id, std::vector<std::pair<std::string, std::string>> const& fields);

struct Posting {
    DocOrdinal doc = 0;
    std::vector<Position> positions;

    bool operator==(Posting const&) const = default;
};

/// Postings of one term in every schema field, plus its document frequency.
/// df counts documents holding the term in at least one field.
struct TermPostings {
    std::uint32_t df = 0;
    std::vector<std::vector<Posting>> fields;

    bool operator==(TermPostings const&) const = default;
};

/// Immutable positional per-field inverted index with collection statistics.
class Index {
  public:
    Index() = default;

    /// Documents receive ordinals in input order. Throws CorpusError on
    /// duplicate ids, unknown or repeated field names, or non-dense positions.
    static Index build(std::span<FieldedDocument const> corpus, std::vector<std::string> schema);

    [[nodiscard]] std::vector<std::string> const& schema() const noexcept { return m_schema; }
    [[nodiscard]] std::optional<FieldId> find_field(std::string_view name) const;
    /// Throws std::out_of_range naming the field.
    [[nodiscard]] FieldId field_id(std::string_view name) const;

    [[nodiscard]] std::uint32_t num_docs() const noexcept
    {
        return static_cast<std::uint32_t>(m_doc_ids.size());
    }
    [[nodiscard]] std::string const& doc_id(DocOrdinal doc) const { return m_doc_ids.at(doc); }
    [[nodiscard]] std::vector<std::string> const& doc_ids() const noexcept { return m_doc_ids; }
    [[nodiscard]] std::optional<DocOrdinal> find_doc(std::string_view id) const;

    [[nodiscard]] std::size_t vocabulary_size() const noexcept { return m_terms.size(); }
    [[nodiscard]] TermPostings const* find_term(std::string_view term) const;
    [[nodiscard]] std::map<std::string, TermPostings, std::less<>> const& terms() const noexcept
    {
        return m_terms;
    }

    [[nodiscard]] std::uint32_t df(std::string_view term) const;

    [[nodiscard]] std::uint32_t field_length(FieldId field, DocOrdinal doc) const
    {
        return m_field_len.at(field).at(doc);
    }
    [[nodiscard]] std::uint64_t total_field_length(FieldId field) const { return m_field_total.at(field); }
    /// Mean over all documents, missing fields counted as 0. Zero on an
    /// empty collection.
    [[nodiscard]] double avg_field_length(FieldId field) const;

    /// Length of the schema-order concatenation of all fields.
    [[nodiscard]] std::uint64_t flat_length(DocOrdinal doc) const;
    [[nodiscard]] double avg_flat_length() const;

    [[nodiscard]] std::span<Posting const> postings(std::string_view term, FieldId field) const;

    /// Stored positions, or an empty span when the term is absent.
    [[nodiscard]] std::span<Position const>
    positions(std::string_view term, FieldId field, DocOrdinal doc) const;

    bool operator==(Index const& other) const;

  private:
    friend class IndexSerializer;

    std::vector<std::string> m_schema;
    std::vector<std::string> m_doc_ids;
    std::unordered_map<std::string, DocOrdinal> m_doc_lookup;
    std::map<std::string, TermPostings, std::less<>> m_terms;
    std::vector<std::vector<std::uint32_t>> m_field_len;  // [field][doc]
    std::vector<std::uint64_t> m_field_total;
};

/// Positions of a posting list entry for `doc`, or empty.
[[nodiscard]] std::span<Position const> find_positions(std::span<Posting const> postings, DocOrdinal doc);

[[nodiscard]] Index build_index(std::span<FieldedDocument const> corpus, std::vector<std::string> schema);

/// Throws std::out_of_range for a field outside the schema.
[[nodiscard]] std::span<Position const>
lookup_positions(Index const& index, std::string_view term, std::string_view field, DocOrdinal doc);

/// Fields concatenated in schema order, positions renumbered from 0.
/// Throws std::out_of_range for an invalid ordinal.
[[nodiscard]] std::vector<Token> flatten(Index const& index, DocOrdinal doc);

/// Binary layout (all integers little-endian):
///
///   "FSPX" u8:version
///   u32:num_fields  { str:name }*
///   u32:num_docs    { str:id }*
///   { u32:length }*  num_fields x num_docs, field-major
///   u32:num_terms   { str:term u32:df { u32:n { u32:doc u32:n { u32:pos }* }* }*num_fields }*
///   u32:crc32 of every preceding byte
///
/// where str is u32:byte_length followed by the bytes. Terms are written in
/// lexicographic byte order, so identical indexes produce identical files.
void save_index(Index const& index, std::filesystem::path const& path);

/// Throws FormatError on bad magic, unsupported version, truncation,
/// checksum mismatch or inconsistent contents.
[[nodiscard]] Index load_index(std::filesystem::path const& path);

[[nodiscard]] std::string serialize_index(Index const& index);
[[nodiscard]] Index deserialize_index(std::string_view bytes);

}  // namespace fieldspan
