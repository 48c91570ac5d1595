#ifndef SCIENTO_LOAD_HPP
#define SCIENTO_LOAD_HPP

#include <span>
#include <string>
#include <vector>

#include "sciento/graph.hpp"
#include "sciento/ingest.hpp"

namespace sciento::graph {

struct LoadReport {
    std::size_t records = 0;
    std::size_t nodes_created = 0;
    std::size_t relationships_created = 0;
    std::size_t records_skipped = 0;
    std::vector<std::string> anomalies;
};

/// Deconstructs validated records into the graph.
///
/// Every record yields an Article (with `totalcites` and `year`) linked to its
/// Journal and authors; affiliation chains Author-Institute-Country-Region are
/// added as far as the record provides them. Citing entries become CITES
/// relationships from stub Articles (`stub=1`). A full record always clears
/// the stub flag, and a citer never re-flags a full article, so load order
/// does not matter.
inline LoadReport load_records(PropertyGraph& g, std::span<const ingest::RawArticleRecord> records)
{
    LoadReport report;
    const std::size_t nodes_before = g.node_count();
    const std::size_t rels_before = g.relationship_count();

    for (const auto& r : records) {
        ++report.records;
        if (r.title.empty()) {
            ++report.records_skipped;
            report.anomalies.push_back("record without title skipped");
            continue;
        }

        PropertyMap article_props{{"totalcites", r.total_cites}};
        if (r.year)
            article_props.emplace("year", std::int64_t{*r.year});
        NodeId article = g.merge_node(Label::Article, r.title, article_props);
        g.erase_property(article, "stub");

        if (!r.journal_name.empty()) {
            PropertyMap journal_props;
            if (r.snip)
                journal_props.emplace("snip", *r.snip);
            NodeId journal = g.merge_node(Label::Journal, r.journal_name, journal_props);
            g.merge_relationship(article, RelType::PublishedIn, journal);
        } else {
            report.anomalies.push_back("'" + r.title + "': no journal");
        }

        for (const auto& a : r.authors) {
            NodeId author = g.merge_node(Label::Author, a.name);
            g.merge_relationship(author, RelType::Wrote, article);
            if (!a.institute) {
                if (a.country)
                    report.anomalies.push_back("'" + r.title + "': country of " + a.name + " has no institute");
                continue;
            }
            NodeId institute = g.merge_node(Label::Institute, *a.institute);
            g.merge_relationship(author, RelType::WorksFor, institute);
            if (!a.country)
                continue;
            NodeId country = g.merge_node(Label::Country, *a.country);
            g.merge_relationship(institute, RelType::IsIn, country);
            if (!a.region)
                continue;
            NodeId region = g.merge_node(Label::Region, *a.region);
            g.merge_relationship(country, RelType::PartOf, region);
        }

        for (const auto& c : r.citing_articles) {
            if (c.title.empty())
                continue;
            if (c.title == r.title) {
                report.anomalies.push_back("'" + r.title + "': cites itself, edge skipped");
                continue;
            }
            auto existing = g.find_node(Label::Article, c.title);
            NodeId citer = existing ? *existing : g.merge_node(Label::Article, c.title, {{"stub", std::int64_t{1}}});
            g.merge_relationship(citer, RelType::Cites, article);
        }
    }

    report.nodes_created = g.node_count() - nodes_before;
    report.relationships_created = g.relationship_count() - rels_before;
    return report;
}

inline bool is_stub(const Node& n)
{
    const auto* stub = n.property("stub");
    return stub && as_integer(*stub).value_or(0) != 0;
}

} // namespace sciento::graph

#endif
