#include "fieldspan/spans.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fieldspan/errors.hpp"

namespace fieldspan {

bool Span::contains(QueryTermId term) const noexcept
{
    return std::any_of(m_entries.begin(), m_entries.end(), [term](auto const& e) { return e.term == term; });
}

std::vector<Span> extract_spans(std::span<Occurrence const> occurrences, SpanConfig config)
{
    if (config.window == 0) {
        throw ConfigError("span window must be at least 1");
    }
    std::vector<Span> spans;
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
        auto const& occ = occurrences[i];
        if (i > 0 && occurrences[i - 1].position >= occ.position) {
            throw std::invalid_argument("occurrences must have strictly ascending positions");
        }
        bool extend = false;
        if (!spans.empty()) {
            auto const& open = spans.back();
            extend = occ.position - open.last() <= config.window && !open.contains(occ.term);
        }
        if (extend) {
            spans.back().m_entries.push_back(occ);
        } else {
            spans.emplace_back(std::vector<Occurrence>{occ});
        }
    }
    return spans;
}

double span_width(Span const& span, SpanConfig config)
{
    if (span.length() < 2) {
        return 1.0 / static_cast<double>(config.window);
    }
    return static_cast<double>(span.last() - span.first()) + 1.0;
}

double span_contribution(std::span<Span const> spans, QueryTermId term, double z, double x, SpanConfig config)
{
    double rc = 0.0;
    for (auto const& span : spans) {
        if (span.contains(term)) {
            rc += std::pow(static_cast<double>(span.length()), z) / std::pow(span_width(span, config), x);
        }
    }
    return rc;
}

}  // namespace fieldspan
