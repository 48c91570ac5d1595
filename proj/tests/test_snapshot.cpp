#include <doctest.h>

#include "support/checks.hpp"

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "sciento/format.hpp"
#include "sciento/snapshot.hpp"
#include "support/fixture.hpp"
#include "support/generators.hpp"
#include "support/graph_compare.hpp"

using namespace sciento::graph;
using sciento::testing::contents;

namespace {

PropertyGraph round_trip(const PropertyGraph& g)
{
    std::stringstream nodes, rels;
    write_nodes_csv(g, nodes);
    write_rels_csv(g, rels);
    return read_snapshot(nodes, rels);
}

std::filesystem::path temp_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("sciento_snapshot_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("Csv.EscapeAndReadBack")
{
    std::stringstream ss;
    sciento::csv::write_row(ss, {"plain", "with,comma", "with \"quote\"", "multi\nline", ""});
    sciento::csv::write_row(ss, {"x"});
    auto rows = sciento::csv::read_all(ss);
    REQUIRE_EQ(rows.size(), 2u);
    CHECK_EQ(rows[0], (std::vector<std::string>{"plain", "with,comma", "with \"quote\"", "multi\nline", ""}));
    CHECK_EQ(rows[1], std::vector<std::string>{"x"});
}

TEST_CASE("Csv.UnterminatedQuoteIsAnError")
{
    std::istringstream in("a,\"b\n");
    CHECK_THROWS_AS(sciento::csv::read_all(in), sciento::csv::ParseError);
}

TEST_CASE("Decimal.ShortestRoundTrip")
{
    CHECK_EQ(sciento::format_decimal(0.1), "0.1");
    CHECK_EQ(sciento::format_decimal(1.0), "1");
    CHECK_EQ(sciento::format_decimal(0.75), "0.75");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = d(rng);
        REQUIRE_EQ(sciento::parse_decimal(sciento::format_decimal(v)), v);
    }
    CHECK_EQ(sciento::parse_decimal("abc"), std::nullopt);
    CHECK_EQ(sciento::parse_decimal("1.5x"), std::nullopt);
}

TEST_CASE("Snapshot.FixtureRoundTripsExactly")
{
    auto g = sciento::testing::fixture_graph();
    auto back = round_trip(g);
    CHECK_EQ(contents(back), contents(g));
    CHECK_EQ(back.node_count(), g.node_count());
    CHECK_EQ(back.relationship_count(), g.relationship_count());
}

TEST_CASE("Snapshot.AwkwardPropertyValuesRoundTrip")
{
    PropertyGraph g;
    g.merge_node(Label::Article, "Title, with \"quotes\"\nand newline",
                 {{"list", std::vector<std::string>{"a", "b,c"}},
                  {"whole", 2.0},
                  {"tiny", 1e-300},
                  {"third", 1.0 / 3.0},
                  {"big", std::int64_t{9007199254740993}},
                  {"text", std::string("\xC5\x81\xC3\xB3" "dz")}});
    auto back = round_trip(g);
    CHECK_EQ(contents(back), contents(g));
    const auto& n = back.nodes()[0];
    CHECK(std::holds_alternative<double>(*n.property("whole")));
    CHECK(std::holds_alternative<std::int64_t>(*n.property("big")));
}

TEST_CASE("Snapshot.RandomGraphsRoundTrip")
{
    sciento::testing::Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = sciento::testing::random_graph(rng);
        auto back = round_trip(g);
        REQUIRE_EQ(contents(back), contents(g));
        REQUIRE(back.check_integrity().empty());
    }
}

TEST_CASE("Snapshot.WritesAreDeterministic")
{
    auto g = sciento::testing::fixture_graph();
    std::stringstream a, b;
    write_nodes_csv(g, a);
    write_nodes_csv(round_trip(g), b);
    CHECK_EQ(a.str(), b.str());
}

TEST_CASE("Snapshot.DirectoryRoundTrip")
{
    auto dir = temp_dir("dir");
    CHECK_FALSE(snapshot_exists(dir));
    CHECK_THROWS_AS(read_snapshot(dir), SnapshotError);
    auto g = sciento::testing::fixture_graph();
    write_snapshot(g, dir);
    CHECK(snapshot_exists(dir));
    CHECK_EQ(contents(read_snapshot(dir)), contents(g));
    std::filesystem::remove_all(dir);
}

TEST_CASE("Snapshot.CorruptInputsAreRejected")
{
    const std::string header = "id,label,name,properties\n";
    const std::string rel_header = "src,type,dst\n";
    struct Case {
        std::string nodes;
        std::string rels;
    };
    const Case cases[] = {
        {"", rel_header},
        {"id,label\n", rel_header},
        {header + "0,Planet,X,{}\n", rel_header},
        {header + "0,Journal,X,not json\n", rel_header},
        {header + "0,Journal,X,{}\n0,Journal,Y,{}\n", rel_header},
        {header + "0,Journal,X,{}\n1,Journal,X,{}\n", rel_header},
        {header + "0,Journal,,{}\n", rel_header},
        {header + "0,Journal,X,{}\n", rel_header + "0,CITES,7\n"},
        {header + "0,Journal,X,{}\n1,Article,Y,{}\n", rel_header + "0,PUBLISHED_IN,1\n"},
        {header + "0,Journal,X,{}\n", rel_header + "0,LIKES,0\n"},
        {header + "0,Journal,X,\"{\"\"a\"\":null}\"\n", rel_header},
    };
    for (const auto& c : cases) {
        std::istringstream nodes(c.nodes), rels(c.rels);
        INFO(c.nodes << c.rels);
        CHECK_THROWS_AS(read_snapshot(nodes, rels), SnapshotError);
    }
}
