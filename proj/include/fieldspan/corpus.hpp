#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fieldspan/index.hpp"

namespace fieldspan {

/// Reads a JSON Lines corpus, one {"id": string, "fields": {name: text}}
/// object per line. Fields are ordered by the schema; blank lines are
/// skipped. Throws CorpusError naming the line on malformed JSON, a missing
/// or non-string id, non-string field text, or a field outside the schema.
[[nodiscard]] std::vector<FieldedDocument> read_corpus_jsonl(std::istream& in, std::span<std::string const> schema);

/// Splits "title,body" into field names. Throws CorpusError on empty names.
[[nodiscard]] std::vector<std::string> parse_schema(std::string_view list);

}  // namespace fieldspan
