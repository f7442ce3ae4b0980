#pragma once

#include <string>
#include <vector>

#include "fieldspan/index.hpp"
#include "fieldspan/scoring.hpp"

namespace fieldspan::testing {

// Four two-field documents. Every title has 3 tokens and every body 6, so
// all length normalizers are 1. "sea" and "travel" occur only in D1;
// "across" occurs in D1, D3 and D4.
inline std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> corpus_c_text()
{
    return {
        {"D1", {{"title", "Cheap sea travel"}, {"body", "Cheap travel across the deep sea"}}},
        {"D2", {{"title", "Budget air fares"}, {"body", "Fly cheap to the big city"}}},
        {"D3", {{"title", "River boat tours"}, {"body", "Boats drift across the quiet river"}}},
        {"D4", {{"title", "Mountain rail trips"}, {"body", "Trains climb across the high pass"}}},
    };
}

inline std::vector<std::string> corpus_c_schema() { return {"title", "body"}; }

inline std::vector<FieldedDocument> corpus_c_documents()
{
    std::vector<FieldedDocument> docs;
    for (auto const& [id, fields] : corpus_c_text()) {
        docs.push_back(analyze_document(id, fields));
    }
    return docs;
}

inline Index corpus_c_index() { return build_index(corpus_c_documents(), corpus_c_schema()); }

// Parameters of the worked example: k1=1.2, b=0.75, z=0.55, x=0.25, M=2,
// title boost 2, body boost 1, b_f=0.5 on both fields.
inline ScorerParams corpus_c_params()
{
    ScorerParams params;
    params.k1 = 1.2;
    params.b = 0.75;
    params.z = 0.55;
    params.x = 0.25;
    params.window = 2;
    params.fields = {FieldParams{2.0, 0.5, 0.55, 0.25}, FieldParams{1.0, 0.5, 0.55, 0.25}};
    return params;
}

}  // namespace fieldspan::testing
