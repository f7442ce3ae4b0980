#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace oracle {

namespace {

std::size_t count(std::vector<std::string> const& tokens, std::string const& term)
{
    return static_cast<std::size_t>(std::count(tokens.begin(), tokens.end(), term));
}

std::vector<std::string> flat(Doc const& d)
{
    std::vector<std::string> out;
    for (auto const& f : d.fields) {
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

double idf(Corpus const& c, std::string const& term)
{
    double n = static_cast<double>(c.docs.size());
    double df = 0;
    for (auto const& d : c.docs) {
        auto tokens = flat(d);
        if (std::find(tokens.begin(), tokens.end(), term) != tokens.end()) {
            df += 1;
        }
    }
    return std::log((n - df + 0.5) / (df + 0.5));
}

double avg_flat_len(Corpus const& c)
{
    double total = 0;
    for (auto const& d : c.docs) {
        total += static_cast<double>(flat(d).size());
    }
    return total / static_cast<double>(c.docs.size());
}

double avg_field_len(Corpus const& c, std::size_t f)
{
    double total = 0;
    for (auto const& d : c.docs) {
        total += static_cast<double>(d.fields[f].size());
    }
    return total / static_cast<double>(c.docs.size());
}

Occurrences occurrences(std::vector<std::string> const& tokens, std::vector<std::string> const& query)
{
    Occurrences occ;
    for (std::uint32_t p = 0; p < tokens.size(); ++p) {
        if (std::find(query.begin(), query.end(), tokens[p]) != query.end()) {
            occ.emplace_back(p, tokens[p]);
        }
    }
    return occ;
}

// rc(t) = sum over spans containing t of len^z / width^x.
double rc(std::vector<std::string> const& tokens,
          std::vector<std::string> const& query,
          std::string const& term,
          double z,
          double x,
          std::uint32_t window)
{
    auto occ = occurrences(tokens, query);
    auto lengths = derive_spans(occ, window);
    double sum = 0;
    std::size_t begin = 0;
    for (auto len : lengths) {
        bool in = false;
        for (std::size_t i = begin; i < begin + len; ++i) {
            in = in || occ[i].second == term;
        }
        if (in) {
            double width = len == 1 ? 1.0 / window
                                    : static_cast<double>(occ[begin + len - 1].first - occ[begin].first) + 1.0;
            sum += std::pow(static_cast<double>(len), z) / std::pow(width, x);
        }
        begin += len;
    }
    return sum;
}

template <typename Freq>
double flat_score(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s, Freq freq)
{
    auto q = dedup(query);
    auto tokens = flat(c.docs[doc]);
    double len = static_cast<double>(tokens.size());
    double K = s.k1 * ((1 - s.b) + s.b * len / avg_flat_len(c));
    double score = 0;
    for (auto const& t : q) {
        double tf = freq(tokens, q, t);
        if (tf == 0) {
            continue;
        }
        score += (s.k1 + 1) * tf / (K + tf) * idf(c, t);
    }
    return score;
}

template <typename Freq>
double fielded_score(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s, Freq freq)
{
    auto q = dedup(query);
    double score = 0;
    for (auto const& t : q) {
        double w = 0;
        for (std::size_t f = 0; f < c.schema.size(); ++f) {
            auto const& tokens = c.docs[doc].fields[f];
            double len = static_cast<double>(tokens.size());
            double avg = avg_field_len(c, f);
            if (len == 0 || avg == 0) {
                continue;
            }
            auto const& fs = s.fields[f];
            double tf = freq(tokens, q, t, fs);
            if (tf == 0) {
                continue;
            }
            w += tf * fs.boost / ((1 - fs.b) + fs.b * len / avg);
        }
        if (w == 0) {
            continue;
        }
        score += w / (s.k1 + w) * idf(c, t);
    }
    return score;
}

}  // namespace

bool is_valid_span(Occurrences const& occ, std::size_t begin, std::size_t end, std::uint32_t window)
{
    std::set<std::string> terms;
    for (std::size_t i = begin; i < end; ++i) {
        if (!terms.insert(occ[i].second).second) {
            return false;
        }
        if (i > begin && (occ[i].first <= occ[i - 1].first || occ[i].first - occ[i - 1].first > window)) {
            return false;
        }
    }
    return end > begin;
}

std::vector<std::size_t> derive_spans(Occurrences const& occ, std::uint32_t window)
{
    std::vector<std::size_t> lengths;
    std::size_t begin = 0;
    while (begin < occ.size()) {
        std::size_t len = occ.size() - begin;
        while (!is_valid_span(occ, begin, begin + len, window)) {
            --len;
        }
        lengths.push_back(len);
        begin += len;
    }
    return lengths;
}

std::vector<std::size_t> enumerate_best_partition(Occurrences const& occ, std::uint32_t window)
{
    std::vector<std::size_t> best;
    if (occ.empty()) {
        return best;
    }
    auto n = occ.size();
    // Bit i set: a span boundary after occurrence i.
    for (std::uint64_t cuts = 0; cuts < (std::uint64_t{1} << (n - 1)); ++cuts) {
        std::vector<std::size_t> lengths;
        std::size_t begin = 0;
        bool valid = true;
        for (std::size_t i = 0; i < n && valid; ++i) {
            bool boundary = i == n - 1 || ((cuts >> i) & 1U);
            if (boundary) {
                valid = is_valid_span(occ, begin, i + 1, window);
                lengths.push_back(i + 1 - begin);
                begin = i + 1;
            }
        }
        if (valid && (best.empty() || lengths > best)) {
            best = lengths;
        }
    }
    return best;
}

std::vector<std::string> dedup(std::vector<std::string> const& query)
{
    std::vector<std::string> out;
    for (auto const& t : query) {
        if (std::find(out.begin(), out.end(), t) == out.end()) {
            out.push_back(t);
        }
    }
    return out;
}

double bm25(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s)
{
    return flat_score(c, doc, query, s, [](auto const& tokens, auto const&, auto const& t) {
        return static_cast<double>(count(tokens, t));
    });
}

double es(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s)
{
    return flat_score(c, doc, query, s, [&](auto const& tokens, auto const& q, auto const& t) {
        return rc(tokens, q, t, s.z, s.x, s.window);
    });
}

double bm25f(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s)
{
    return fielded_score(c, doc, query, s, [](auto const& tokens, auto const&, auto const& t, auto const&) {
        return static_cast<double>(count(tokens, t));
    });
}

double fieldspan(Corpus const& c, std::size_t doc, std::vector<std::string> const& query, Setting const& s)
{
    return fielded_score(c, doc, query, s, [&](auto const& tokens, auto const& q, auto const& t, auto const& fs) {
        return rc(tokens, q, t, fs.z, fs.x, s.window);
    });
}

}  // namespace oracle
