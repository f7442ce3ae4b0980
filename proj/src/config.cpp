#include "fieldspan/config.hpp"

#include <fstream>
#include <iterator>

#include <fmt/format.h>
#include <json.hpp>

#include "fieldspan/errors.hpp"

namespace fieldspan {

namespace {

using nlohmann::json;

double number(json const& obj, std::string_view key, double fallback)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        return fallback;
    }
    if (!it->is_number()) {
        throw ConfigError(fmt::format("config key '{}' must be a number", key));
    }
    return it->get<double>();
}

void reject_unknown_keys(json const& obj, std::initializer_list<std::string_view> allowed, std::string_view where)
{
    for (auto const& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(fmt::format("unknown key '{}' in {}", key, where));
        }
    }
}

}  // namespace

ScorerParams parse_config(std::string_view json_text, std::span<std::string const> schema)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (json::parse_error const& e) {
        throw ConfigError(fmt::format("malformed config: {}", e.what()));
    }
    if (!root.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown_keys(root, {"k1", "b", "z", "x", "M", "fields", "clamp_negative_idf"}, "config");

    ScorerParams params = ScorerParams::defaults(schema);
    params.k1 = number(root, "k1", params.k1);
    params.b = number(root, "b", params.b);
    params.z = number(root, "z", params.z);
    params.x = number(root, "x", params.x);
    if (auto it = root.find("M"); it != root.end()) {
        if (!it->is_number_integer() || it->get<std::int64_t>() < 1
            || it->get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
            throw ConfigError("config key 'M' must be a positive integer");
        }
        params.window = it->get<std::uint32_t>();
    }
    if (auto it = root.find("clamp_negative_idf"); it != root.end()) {
        if (!it->is_boolean()) {
            throw ConfigError("config key 'clamp_negative_idf' must be a boolean");
        }
        params.clamp_negative_idf = it->get<bool>();
    }

    // Fields without an explicit entry follow the flat b, z and x; "title"
    // keeps its unnormalized default.
    for (std::size_t f = 0; f < schema.size(); ++f) {
        auto& field = params.fields[f];
        if (schema[f] != "title") {
            field.b = params.b;
        }
        field.z = params.z;
        field.x = params.x;
    }

    if (auto it = root.find("fields"); it != root.end()) {
        if (!it->is_object()) {
            throw ConfigError("config key 'fields' must be an object");
        }
        for (auto const& [name, entry] : it->items()) {
            auto pos = std::find(schema.begin(), schema.end(), name);
            if (pos == schema.end()) {
                throw ConfigError(fmt::format("config names field '{}' which is not in the index schema", name));
            }
            if (!entry.is_object()) {
                throw ConfigError(fmt::format("config entry for field '{}' must be an object", name));
            }
            auto where = fmt::format("field '{}'", name);
            reject_unknown_keys(entry, {"boost", "b", "z", "x"}, where);
            auto& field = params.fields[static_cast<std::size_t>(pos - schema.begin())];
            field.boost = number(entry, "boost", field.boost);
            field.b = number(entry, "b", field.b);
            field.z = number(entry, "z", field.z);
            field.x = number(entry, "x", field.x);
        }
    }
    params.validate(schema.size());
    return params;
}

ScorerParams load_config(std::filesystem::path const& path, std::span<std::string const> schema)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text, schema);
}

}  // namespace fieldspan
