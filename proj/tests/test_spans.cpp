#include <doctest.h>

#include <random>
#include <stdexcept>

#include "fieldspan/errors.hpp"
#include "fieldspan/spans.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace fieldspan;

namespace {

constexpr QueryTermId sea = 0;
constexpr QueryTermId travel = 1;

std::vector<std::pair<Position, Position>> extents(std::vector<Span> const& spans)
{
    std::vector<std::pair<Position, Position>> out;
    for (auto const& s : spans) {
        out.emplace_back(s.first(), s.last());
    }
    return out;
}

}  // namespace

TEST_CASE("extract_spans closes on gap or repeated term")
{
    std::vector<Occurrence> occ{{1, sea}, {2, travel}, {4, travel}, {8, sea}};
    auto spans = extract_spans(occ, SpanConfig{2});
    REQUIRE(spans.size() == 3);
    CHECK(extents(spans) == std::vector<std::pair<Position, Position>>{{1, 2}, {4, 4}, {8, 8}});
    CHECK(spans[0].contains(sea));
    CHECK(spans[0].contains(travel));
    CHECK(spans[1].entries() == std::vector<Occurrence>{{4, travel}});

    // a@0 b@1 a@2: the repeat opens a new span although it is within reach.
    std::vector<Occurrence> repeat{{0, 0}, {1, 1}, {2, 0}};
    CHECK(extents(extract_spans(repeat, SpanConfig{5})) == std::vector<std::pair<Position, Position>>{{0, 1}, {2, 2}});
}

TEST_CASE("extract_spans edge cases")
{
    std::vector<Occurrence> single{{7, 0}};
    auto spans = extract_spans(single, SpanConfig{45});
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].length() == 1);
    CHECK(extract_spans({}, SpanConfig{3}).empty());

    std::vector<Occurrence> unsorted{{3, 0}, {1, 1}};
    CHECK_THROWS_AS((void)extract_spans(unsorted, SpanConfig{3}), std::invalid_argument);
    std::vector<Occurrence> duplicate{{3, 0}, {3, 1}};
    CHECK_THROWS_AS((void)extract_spans(duplicate, SpanConfig{3}), std::invalid_argument);
    CHECK_THROWS_AS((void)extract_spans(single, SpanConfig{0}), ConfigError);
}

TEST_CASE("span_width uses inclusive extent and 1/M for singletons")
{
    Span pair({{1, sea}, {2, travel}});
    CHECK(span_width(pair, SpanConfig{2}) == 2.0);
    CHECK(span_width(pair, SpanConfig{45}) == 2.0);
    Span single({{5, sea}});
    CHECK(span_width(single, SpanConfig{45}) == doctest::Approx(1.0 / 45).epsilon(1e-15));
    CHECK(span_width(single, SpanConfig{2}) == 0.5);
    Span wide({{3, 0}, {7, 1}, {9, 2}});
    CHECK(span_width(wide, SpanConfig{4}) == 7.0);
}

TEST_CASE("span_contribution sums over spans containing the term")
{
    std::vector<Occurrence> occ{{1, sea}, {2, travel}, {4, travel}, {8, sea}};
    auto spans = extract_spans(occ, SpanConfig{2});
    CHECK(span_contribution(spans, sea, 0.0, 0.0, SpanConfig{2}) == 2.0);
    CHECK(span_contribution(spans, 5, 0.55, 0.25, SpanConfig{2}) == 0.0);
    // 2^0.55 / 2^0.25 + 1 / 0.5^0.25
    CHECK(span_contribution(spans, sea, 0.55, 0.25, SpanConfig{2}) == doctest::Approx(2.4203515283476373).epsilon(1e-14));
}

TEST_CASE("span properties on random occurrence lists")
{
    testing::Rng rng(11);
    for (int round = 0; round < 3000; ++round) {
        auto window = static_cast<std::uint32_t>(testing::pick(rng, 1, 8));
        auto num_terms = testing::pick(rng, 1, 4);
        std::vector<Occurrence> occ;
        Position pos = 0;
        for (std::size_t n = testing::pick(rng, 0, 14); n > 0; --n) {
            pos += static_cast<Position>(testing::pick(rng, occ.empty() ? 0 : 1, 10));
            occ.push_back(Occurrence{pos, static_cast<QueryTermId>(testing::pick(rng, 0, num_terms - 1))});
        }
        auto spans = extract_spans(occ, SpanConfig{window});
        CHECK(spans == extract_spans(occ, SpanConfig{window}));

        std::vector<Occurrence> rejoined;
        for (std::size_t i = 0; i < spans.size(); ++i) {
            auto const& entries = spans[i].entries();
            REQUIRE(!entries.empty());
            for (std::size_t j = 1; j < entries.size(); ++j) {
                CHECK(entries[j].position > entries[j - 1].position);
                CHECK(entries[j].position - entries[j - 1].position <= window);
                for (std::size_t k = 0; k < j; ++k) {
                    CHECK(entries[k].term != entries[j].term);
                }
            }
            if (i > 0) {
                CHECK(spans[i - 1].last() < spans[i].first());
            }
            double width = span_width(spans[i], SpanConfig{window});
            CHECK(width >= 1.0 / window);
            if (spans[i].length() >= 2) {
                CHECK(width >= static_cast<double>(spans[i].length()));
            }
            rejoined.insert(rejoined.end(), entries.begin(), entries.end());
        }
        CHECK(rejoined == occ);

        // The greedy chain is the lexicographically longest valid partition.
        oracle::Occurrences raw;
        for (auto const& o : occ) {
            raw.emplace_back(o.position, std::to_string(o.term));
        }
        std::vector<std::size_t> lengths;
        for (auto const& s : spans) {
            lengths.push_back(s.length());
        }
        CHECK(lengths == oracle::enumerate_best_partition(raw, window));
        CHECK(lengths == oracle::derive_spans(raw, window));
    }
}
