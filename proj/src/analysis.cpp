#include "fieldspan/analysis.hpp"

#include <locale.h>
#include <wctype.h>

#include <algorithm>
#include <unordered_set>

namespace fieldspan {

namespace {

constexpr char32_t invalid_code_point = 0xFFFFFFFF;

// Decodes one UTF-8 sequence starting at text[pos] and advances pos.
// Returns invalid_code_point for malformed or overlong sequences.
char32_t decode_utf8(std::string_view text, std::size_t& pos)
{
    auto lead = static_cast<unsigned char>(text[pos++]);
    if (lead < 0x80) {
        return lead;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((lead & 0xE0) == 0xC0) {
        extra = 1;
        cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
        extra = 2;
        cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
        extra = 3;
        cp = lead & 0x07;
    } else {
        return invalid_code_point;
    }
    for (int i = 0; i < extra; ++i) {
        if (pos >= text.size()) {
            return invalid_code_point;
        }
        auto cont = static_cast<unsigned char>(text[pos]);
        if ((cont & 0xC0) != 0x80) {
            return invalid_code_point;
        }
        cp = (cp << 6) | (cont & 0x3F);
        ++pos;
    }
    static constexpr char32_t min_value[] = {0, 0x80, 0x800, 0x10000};
    if (cp < min_value[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return invalid_code_point;
    }
    return cp;
}

void encode_utf8(char32_t cp, std::string& out)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Character classification uses the C.UTF-8 locale so that results do not
// depend on the process environment. Falls back to ASCII rules when the
// locale is unavailable.
class CharClass {
  public:
    CharClass() : m_locale(newlocale(LC_ALL_MASK, "C.UTF-8", locale_t{})) {}
    ~CharClass()
    {
        if (m_locale != locale_t{}) {
            freelocale(m_locale);
        }
    }
    CharClass(CharClass const&) = delete;
    CharClass& operator=(CharClass const&) = delete;

    bool is_alnum(char32_t cp) const
    {
        if (cp < 0x80 || m_locale == locale_t{}) {
            return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
        }
        return iswalnum_l(static_cast<wint_t>(cp), m_locale) != 0;
    }

    char32_t to_lower(char32_t cp) const
    {
        if (cp < 0x80 || m_locale == locale_t{}) {
            return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
        }
        return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), m_locale));
    }

  private:
    locale_t m_locale;
};

CharClass const& char_class()
{
    static CharClass const instance;
    return instance;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text)
{
    auto const& cls = char_class();
    std::vector<Token> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(Token{std::move(current), static_cast<Position>(tokens.size())});
            current.clear();
        }
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        char32_t cp = decode_utf8(text, pos);
        if (cp != invalid_code_point && cls.is_alnum(cp)) {
            encode_utf8(cls.to_lower(cp), current);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

Query::Query(std::vector<std::string> terms)
{
    std::unordered_set<std::string> seen;
    for (auto& term : terms) {
        if (!term.empty() && seen.insert(term).second) {
            m_terms.push_back(std::move(term));
        }
    }
}

Query analyze_query(std::string_view text)
{
    std::vector<std::string> terms;
    for (auto& token : tokenize(text)) {
        terms.push_back(std::move(token.term));
    }
    return Query(std::move(terms));
}

}  // namespace fieldspan
