#include <doctest.h>

#include "support/checks.hpp"

#include <sstream>

#include "sciento/query/executor.hpp"
#include "support/brute_force.hpp"
#include "support/fixture.hpp"
#include "support/generators.hpp"
#include "support/reference_queries.hpp"

using namespace sciento::graph;
using namespace sciento::query;
using namespace sciento::testing;

namespace {

std::vector<OracleRow> run(const PropertyGraph& g, std::string_view text)
{
    return normalized_rows(execute_query(g, text));
}

std::vector<OracleRow> oracle(const PropertyGraph& g, std::string_view text)
{
    return brute_force_rows(g, compile(text));
}

} // namespace

TEST_CASE("Execute.EmptyGraphGivesHeadersOnly")
{
    PropertyGraph g;
    const auto t = execute_query(g, citations_query_verbatim);
    CHECK_EQ(t.columns, (std::vector<std::string>{"n.totalcites", "n.selfcites"}));
    CHECK(t.rows.empty());
    std::ostringstream os;
    write_csv(t, os);
    CHECK_EQ(os.str(), "n.totalcites,n.selfcites\n");
}

TEST_CASE("Execute.PublicationsQueryOnTwoArticleJournal")
{
    PropertyGraph g;
    auto j = g.merge_node(Label::Journal, "J");
    auto other = g.merge_node(Label::Journal, "K");
    auto a1 = g.merge_node(Label::Article, "A1", {{"year", std::int64_t{2014}}});
    auto a2 = g.merge_node(Label::Article, "A2", {{"year", std::int64_t{2015}}});
    auto a3 = g.merge_node(Label::Article, "A3", {{"year", std::int64_t{2016}}});
    g.merge_relationship(a1, RelType::PublishedIn, j);
    g.merge_relationship(a2, RelType::PublishedIn, j);
    g.merge_relationship(a3, RelType::PublishedIn, other);

    const char* text = "MATCH (Journal)-[:PUBLISHED_IN]-(Article) WHERE Journal.name IN ['J'] "
                       "RETURN Article.year, Journal.name";
    const std::vector<OracleRow> expected{{"i:2014", "s:J"}, {"i:2015", "s:J"}};
    CHECK_EQ(run(g, text), expected);
    CHECK_EQ(oracle(g, text), expected);
}

TEST_CASE("Execute.AffiliationQuerySingleBinding")
{
    PropertyGraph g;
    auto x = g.merge_node(Label::Author, "X");
    auto i = g.merge_node(Label::Institute, "I");
    auto c = g.merge_node(Label::Country, "C");
    g.merge_relationship(x, RelType::WorksFor, i);
    g.merge_relationship(i, RelType::IsIn, c);
    g.merge_node(Label::Author, "Y");
    CHECK_EQ(run(g, affiliation_query_verbatim), (std::vector<OracleRow>{{"s:X", "s:C"}}));
}

TEST_CASE("Execute.MissingPropertiesAreNull")
{
    PropertyGraph g;
    g.merge_node(Label::Article, "A", {{"totalcites", std::int64_t{3}}});
    const auto t = execute_query(g, citations_query_verbatim);
    REQUIRE_EQ(t.rows.size(), 1u);
    CHECK(t.rows[0][0].has_value());
    CHECK_FALSE(t.rows[0][1].has_value());
    std::ostringstream csv, json;
    write_csv(t, csv);
    write_json(t, json);
    CHECK_EQ(csv.str(), "n.totalcites,n.selfcites\n3,\n");
    CHECK_EQ(nlohmann::json::parse(json.str()), nlohmann::json::parse(R"([{"n.totalcites": 3, "n.selfcites": null}])"));
}

TEST_CASE("Execute.UndirectedPatternsAreSymmetric")
{
    PropertyGraph g;
    auto a = g.merge_node(Label::Article, "A");
    auto b = g.merge_node(Label::Article, "B");
    g.merge_relationship(a, RelType::Cites, b);
    CHECK_EQ(run(g, "MATCH (x)-[:CITES]-(y) RETURN x.name, y.name"),
              (std::vector<OracleRow>{{"s:A", "s:B"}, {"s:B", "s:A"}}));
    CHECK_EQ(run(g, "MATCH (x)-[:CITES]->(y) RETURN x.name, y.name"), (std::vector<OracleRow>{{"s:A", "s:B"}}));
    CHECK_EQ(run(g, "MATCH (x)<-[:CITES]-(y) RETURN x.name, y.name"), (std::vector<OracleRow>{{"s:B", "s:A"}}));
}

TEST_CASE("Execute.UndirectedSelfLoopMatchesInBothOrientations")
{
    PropertyGraph g;
    auto a = g.merge_node(Label::Article, "A");
    g.merge_relationship(a, RelType::Cites, a);
    const char* text = "MATCH (x)-[r]-(y) RETURN x.name";
    CHECK_EQ(run(g, text).size(), 2u);
    CHECK_EQ(run(g, text), oracle(g, text));
}

TEST_CASE("Execute.RelationshipsAreNotReusedWithinABinding")
{
    PropertyGraph g;
    auto a = g.merge_node(Label::Article, "A");
    auto j = g.merge_node(Label::Journal, "J");
    g.merge_relationship(a, RelType::PublishedIn, j);
    // Walking out and back along the only edge would need it twice.
    CHECK(run(g, "MATCH (x)-[]-(y)-[]-(z) RETURN x.name").empty());
    CHECK(run(g, "MATCH (x)-[]-(y), (z)-[]-(w) RETURN x.name").empty());
    // Node reuse is fine.
    CHECK_EQ(run(g, "MATCH (x), (y) RETURN x.name, y.name").size(), 4u);
}

TEST_CASE("Execute.DuplicatesArePreserved")
{
    PropertyGraph g;
    auto j = g.merge_node(Label::Journal, "J");
    for (const char* name : {"A", "B", "C"})
        g.merge_relationship(g.merge_node(Label::Article, name), RelType::PublishedIn, j);
    CHECK_EQ(run(g, "MATCH (a)-[:PUBLISHED_IN]->(j) RETURN j.name"),
              (std::vector<OracleRow>(3, OracleRow{"s:J"})));
}

TEST_CASE("Execute.UnknownLabelsAndTypesMatchNothing")
{
    auto g = fixture_graph();
    CHECK(run(g, "MATCH (a:Planet) RETURN a.name").empty());
    CHECK(run(g, "MATCH (a)-[:ORBITS]->(b) RETURN a.name").empty());
}

TEST_CASE("Execute.NumericComparisonAcrossIntegerAndDecimal")
{
    PropertyGraph g;
    g.merge_node(Label::Journal, "J", {{"snip", 2.0}, {"articles", std::int64_t{3}}});
    CHECK_EQ(run(g, "MATCH (j) WHERE j.snip = 2 RETURN j.name").size(), 1u);
    CHECK_EQ(run(g, "MATCH (j) WHERE j.articles = 3.0 RETURN j.name").size(), 1u);
    CHECK_EQ(run(g, "MATCH (j) WHERE j.articles = '3' RETURN j.name").size(), 0u);
    CHECK_EQ(run(g, "MATCH (j) WHERE j.name IN [1, 'J'] AND j.snip IN [2.0] RETURN j.name").size(), 1u);
}

TEST_CASE("Execute.InvalidQueryTextThrows")
{
    PropertyGraph g;
    CHECK_THROWS_AS(execute_query(g, "MATCH (a) RETURN b.x"), QueryError);
    CHECK_THROWS_AS(execute_query(g, "MATCH (a"), QueryError);
}

TEST_CASE("Execute.ReferenceQueriesAgreeWithOracleOnFixture")
{
    auto g = fixture_graph();
    for (const char* text : {publications_query_verbatim, publications_query_joined, citations_query_verbatim,
                             affiliation_query_verbatim}) {
        INFO(text);
        CHECK_EQ(run(g, text), oracle(g, text));
    }
    // The wrapped literal names no stored journal, so only two journals appear.
    CHECK_EQ(run(g, publications_query_verbatim).size(), 8u);
    CHECK_EQ(run(g, publications_query_joined).size(), 11u);
}

TEST_CASE("Execute.RandomGraphsAgreeWithOracle")
{
    Rng rng(77);
    for (int graph_index = 0; graph_index < 60; ++graph_index) {
        auto g = random_graph(rng);
        for (int k = 0; k < 5; ++k) {
            const Query q = random_query(rng, &g);
            INFO("graph " << graph_index << " query " << k);
        REQUIRE_EQ(normalized_rows(execute_query(g, q)), brute_force_rows(g, q));
        }
    }
}
