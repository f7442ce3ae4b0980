#include "fieldspan/corpus.hpp"

#include <algorithm>
#include <istream>

#include <fmt/format.h>
#include <json.hpp>

#include "fieldspan/errors.hpp"

namespace fieldspan {

std::vector<FieldedDocument> read_corpus_jsonl(std::istream& in, std::span<std::string const> schema)
{
    using nlohmann::json;
    std::vector<FieldedDocument> corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json record;
        try {
            record = json::parse(line);
        } catch (json::parse_error const& e) {
            throw CorpusError(fmt::format("corpus line {}: malformed JSON: {}", line_no, e.what()));
        }
        if (!record.is_object()) {
            throw CorpusError(fmt::format("corpus line {}: expected a JSON object", line_no));
        }
        auto id = record.find("id");
        if (id == record.end() || !id->is_string()) {
            throw CorpusError(fmt::format("corpus line {}: missing string \"id\"", line_no));
        }
        auto fields = record.find("fields");
        if (fields == record.end() || !fields->is_object()) {
            throw CorpusError(fmt::format("corpus line {}: missing object \"fields\"", line_no));
        }
        auto doc_id = id->get<std::string>();
        std::vector<std::pair<std::string, std::string>> texts;
        for (auto const& [name, value] : fields->items()) {
            if (std::find(schema.begin(), schema.end(), name) == schema.end()) {
                throw CorpusError(
                    fmt::format("corpus line {}: document '{}' has unknown field '{}'", line_no, doc_id, name));
            }
            if (!value.is_string()) {
                throw CorpusError(fmt::format(
                    "corpus line {}: document '{}' field '{}' must be a string", line_no, doc_id, name));
            }
        }
        for (auto const& name : schema) {
            if (auto it = fields->find(name); it != fields->end()) {
                texts.emplace_back(name, it->get<std::string>());
            }
        }
        corpus.push_back(analyze_document(std::move(doc_id), texts));
    }
    return corpus;
}

std::vector<std::string> parse_schema(std::string_view list)
{
    std::vector<std::string> schema;
    std::size_t start = 0;
    while (true) {
        auto comma = list.find(',', start);
        auto name = list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (name.empty()) {
            throw CorpusError(fmt::format("invalid schema '{}': empty field name", list));
        }
        schema.emplace_back(name);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return schema;
}

}  // namespace fieldspan
