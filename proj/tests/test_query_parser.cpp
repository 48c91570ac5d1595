#include <doctest.h>

#include "support/checks.hpp"

#include "sciento/query/parser.hpp"
#include "sciento/query/render.hpp"
#include "support/generators.hpp"
#include "support/reference_queries.hpp"

using namespace sciento::query;
using namespace sciento::testing;

namespace {

QueryError syntax_error(std::string_view text)
{
    try {
        parse_query(text);
    } catch (const QueryError& e) {
        return e;
    }
    FAIL_CHECK("no error for: " << text);
    return QueryError(QueryError::Kind::Syntax, "", 0, 0, 0);
}

QueryError validation_error(std::string_view text)
{
    try {
        compile(text);
    } catch (const QueryError& e) {
        INFO(e.what());
        CHECK_EQ(e.kind(), QueryError::Kind::Validation);
        return e;
    }
    FAIL_CHECK("no error for: " << text);
    return QueryError(QueryError::Kind::Syntax, "", 0, 0, 0);
}

} // namespace

TEST_CASE("ParseQuery.PublicationsQueryVerbatim")
{
    const Query q = compile(publications_query_verbatim);
    REQUIRE_EQ(q.patterns.size(), 1u);
    const auto& p = q.patterns[0];
    REQUIRE_EQ(p.nodes.size(), 2u);
    REQUIRE_EQ(p.rels.size(), 1u);
    CHECK_EQ(p.nodes[0], (NodePattern{"Journal", std::nullopt}));
    CHECK_EQ(p.nodes[1], (NodePattern{"Article", std::nullopt}));
    CHECK_EQ(p.rels[0], (RelPattern{std::nullopt, "PUBLISHED_IN", RelDirection::Undirected}));

    REQUIRE(q.where.has_value());
    const auto* in = std::get_if<InPredicate>(&q.where->expr);
    REQUIRE_NE(in, nullptr);
    CHECK_EQ(in->ref.column(), "Journal.name");
    REQUIRE_EQ(in->values.size(), 3u);
    CHECK_EQ(std::get<std::string>(in->values[0]), "Applied Soft Computing");
    CHECK_EQ(std::get<std::string>(in->values[1]), "Neurocomputing");
    // The published text wraps inside the literal; the newline is part of the string.
    CHECK_EQ(std::get<std::string>(in->values[2]), "Genetic Programming and Evolvable\nMachines");

    REQUIRE_EQ(q.projections.size(), 2u);
    CHECK_EQ(q.projections[0].column(), "Article.year");
    CHECK_EQ(q.projections[1].column(), "Journal.name");
}

TEST_CASE("ParseQuery.CitationsQuery")
{
    const Query q = compile(citations_query_verbatim);
    REQUIRE_EQ(q.patterns.size(), 1u);
    REQUIRE_EQ(q.patterns[0].nodes.size(), 1u);
    CHECK(q.patterns[0].rels.empty());
    CHECK_EQ(q.patterns[0].nodes[0], (NodePattern{"n", "Article"}));
    CHECK_FALSE(q.where.has_value());
    REQUIRE_EQ(q.projections.size(), 2u);
    CHECK_EQ(q.projections[0].column(), "n.totalcites");
    CHECK_EQ(q.projections[1].column(), "n.selfcites");
}

TEST_CASE("ParseQuery.AffiliationQueryAcrossLineBreaks")
{
    const Query q = compile(affiliation_query_verbatim);
    REQUIRE_EQ(q.patterns.size(), 1u);
    const auto& p = q.patterns[0];
    REQUIRE_EQ(p.rels.size(), 2u);
    CHECK_EQ(p.rels[0], (RelPattern{"r", "WORKS_FOR", RelDirection::Right}));
    CHECK_EQ(p.rels[1], (RelPattern{"s", "IS_IN", RelDirection::Right}));
    CHECK_EQ(p.nodes[2], (NodePattern{"Country", std::nullopt}));
    CHECK_EQ(q.projections[1].column(), "Country.name");
}

TEST_CASE("ParseQuery.KeywordsAreCaseInsensitive")
{
    CHECK_EQ(parse_query("match (a) where a.x = 1 and a.y in [2] return a.x"),
              parse_query("MATCH (a) WHERE a.x = 1 AND a.y IN [2] RETURN a.x"));
}

TEST_CASE("ParseQuery.LiteralsAndDirections")
{
    const Query q = compile("MATCH (a:Article)<-[c:CITES]-(b), (j) WHERE a.year = -3 AND b.score = 0.25 AND "
                            "j.name = 'O''Brien' RETURN a.name, c.x, j.name");
    REQUIRE_EQ(q.patterns.size(), 2u);
    CHECK_EQ(q.patterns[0].rels[0].direction, RelDirection::Left);
    const auto& terms = std::get<AndPredicate>(q.where->expr).terms;
    REQUIRE_EQ(terms.size(), 3u);
    CHECK_EQ(std::get<std::int64_t>(std::get<EqPredicate>(terms[0].expr).value), -3);
    CHECK_EQ(std::get<double>(std::get<EqPredicate>(terms[1].expr).value), 0.25);
    CHECK_EQ(std::get<std::string>(std::get<EqPredicate>(terms[2].expr).value), "O'Brien");
}

TEST_CASE("ParseQuery.DanglingRelationshipIsASyntaxError")
{
    const std::string text = "MATCH (a)-[:X]->";
    const QueryError e = syntax_error(text);
    CHECK_EQ(e.kind(), QueryError::Kind::Syntax);
    CHECK_EQ(e.position(), text.size() + 1);
    CHECK_EQ(e.line(), 1u);
    CHECK_EQ(e.column(), text.size() + 1);
    CHECK_EQ(e.expected(), std::vector<std::string>{"'('"});
    CHECK_NE(std::string(e.what()).find("unexpected end of input"), std::string::npos);
}

TEST_CASE("ParseQuery.ErrorPositionsAreOneBasedWithLineAndColumn")
{
    const QueryError e = syntax_error("MATCH (a)\nRETURN a.name,, a.x");
    CHECK_EQ(e.line(), 2u);
    CHECK_EQ(e.column(), 15u);
    CHECK_EQ(e.position(), 25u);

    const QueryError lex = syntax_error("MATCH (a) RETURN a.name ; ");
    CHECK_EQ(lex.column(), 25u);

    // Multibyte characters count once.
    const QueryError u = syntax_error("MATCH (a) WHERE a.n = '\xC3\xA9' RETURN");
    CHECK_EQ(u.column(), 33u);
}

TEST_CASE("ParseQuery.MalformedInputs")
{
    for (const char* text : {"", "MATCH", "MATCH ()", "MATCH (a) RETURN", "MATCH (a) RETURN a", "RETURN a.b",
                             "MATCH (a)-[r]>(b) RETURN a.x", "MATCH (a) WHERE a.x IN [] RETURN a.x",
                             "MATCH (a) WHERE a.x = 'open RETURN a.x", "MATCH (a) WHERE a.x = 12abc RETURN a.x",
                             "MATCH (a) WHERE a.x RETURN a.x", "MATCH (a) RETURN a.x extra",
                             "MATCH (a:) RETURN a.x", "MATCH (a)<-[r]->(b) RETURN a.x",
                             "MATCH (a) WHERE a.x = 99999999999999999999 RETURN a.x"}) {
        INFO(text);
        CHECK_THROWS_AS(parse_query(text), QueryError);
    }
}

TEST_CASE("ParseQuery.ExpectedSetsAccumulate")
{
    const QueryError e = syntax_error("MATCH (a) WHERE a.x = 1 a.y");
    const auto& expected = e.expected();
    for (const char* want : {"AND", "RETURN"})
        CHECK_MESSAGE(std::find(expected.begin(), expected.end(), want) != expected.end(), want);
}

TEST_CASE("Validate.RejectsUnboundAndConflictingVariables")
{
    const QueryError unbound = validation_error("MATCH (a) RETURN b.name");
    CHECK_EQ(unbound.column(), 18u);
    validation_error("MATCH (a) WHERE z.x = 1 RETURN a.name");
    validation_error("MATCH (a)-[a]->(b) RETURN b.name");
    validation_error("MATCH (a)-[r]->(b)-[r]->(c) RETURN b.name");
    CHECK_NOTHROW(compile("MATCH (a)-[r]->(b), (b)-[s]->(a) RETURN r.x, a.name"));
}

TEST_CASE("Diagnostic.CaretPointsAtTheColumn")
{
    const std::string text = "MATCH (a)\nRETURN a.name,, a.x";
    const QueryError e = syntax_error(text);
    const std::string d = format_diagnostic(text, e);
    CHECK_NE(d.find("\n  RETURN a.name,, a.x\n"), std::string::npos);
    CHECK_NE(d.find("\n" + std::string(2 + 14, ' ') + "^\n"), std::string::npos);
}

TEST_CASE("Render.RoundTripsReferenceQueries")
{
    for (const char* text : {publications_query_verbatim, citations_query_verbatim, affiliation_query_verbatim}) {
        const Query q = parse_query(text);
        INFO(render(q));
        CHECK_EQ(parse_query(render(q)), q);
    }
}

TEST_CASE("Render.RoundTripsRandomQueries")
{
    Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
        const Query q = random_query(rng);
        const std::string text = render(q);
        Query back;
        INFO(text);
        REQUIRE_NOTHROW(back = parse_query(text));
        INFO(text);
        REQUIRE_EQ(back, q);
        REQUIRE_EQ(render(back), text);
    }
}

TEST_CASE("Render.DecimalsStayDecimals")
{
    CHECK_EQ(render(Literal{2.0}), "2.0");
    CHECK_EQ(render(Literal{0.1}), "0.1");
    CHECK_EQ(render(Literal{std::int64_t{2}}), "2");
    CHECK_EQ(render(Literal{std::string("it's")}), "'it''s'");
}
