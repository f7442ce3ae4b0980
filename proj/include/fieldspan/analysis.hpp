#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fieldspan {

using Position = std::uint32_t;

struct Token {
    std::string term;
    Position position = 0;

    bool operator==(Token const&) const = default;
};

/// Splits on maximal runs of non-alphanumeric code points and lowercases
/// each piece. Input is UTF-8; malformed bytes act as separators.
/// Positions are dense token ordinals starting at 0.
[[nodiscard]] std::vector<Token> tokenize(std::string_view text);

/// Distinct query terms in first-occurrence order.
class Query {
  public:
    Query() = default;
    explicit Query(std::vector<std::string> terms);

    [[nodiscard]] std::vector<std::string> const& terms() const noexcept { return m_terms; }
    [[nodiscard]] std::size_t size() const noexcept { return m_terms.size(); }
    [[nodiscard]] bool empty() const noexcept { return m_terms.empty(); }
    [[nodiscard]] std::string const& operator[](std::size_t i) const { return m_terms[i]; }

  private:
    std::vector<std::string> m_terms;
};

/// tokenize() followed by first-occurrence deduplication. May return an
/// empty query; scorers reject it with EmptyQueryError.
[[nodiscard]] Query analyze_query(std::string_view text);

}  // namespace fieldspan
