#ifndef SCIENTO_CHART_HPP
#define SCIENTO_CHART_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sciento/graph.hpp"
#include "sciento/load.hpp"
#include "sciento/query/executor.hpp"
#include "sciento/query/render.hpp"

namespace sciento::chart {

enum class ChartKind { Line, Area, Pie };

inline std::string_view to_string(ChartKind k)
{
    switch (k) {
    case ChartKind::Line: return "line";
    case ChartKind::Area: return "area";
    case ChartKind::Pie: return "pie";
    }
    return "?";
}

using XValue = std::variant<double, std::string>;

struct Point {
    XValue x;
    double y = 0;

    bool operator==(const Point&) const = default;
};

struct Series {
    std::string label;
    std::vector<Point> points;

    bool operator==(const Series&) const = default;
};

struct ChartSpec {
    ChartKind kind = ChartKind::Line;
    std::string title;
    std::vector<Series> series;

    bool operator==(const ChartSpec&) const = default;
};

class ChartError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A chart together with whatever its builder had to leave out.
struct ChartBuild {
    ChartSpec chart;
    std::vector<std::string> notes;
};

/// Throws ChartError unless the chart satisfies its kind's shape rules:
/// a pie has one series of nonnegative values with a positive sum, and
/// line/area series never repeat an x value.
inline void validate(const ChartSpec& c)
{
    for (const auto& s : c.series) {
        for (const auto& p : s.points) {
            if (!std::isfinite(p.y))
                throw ChartError("series '" + s.label + "' has a non-finite value");
        }
    }
    if (c.kind == ChartKind::Pie) {
        if (c.series.size() != 1)
            throw ChartError("a pie chart needs exactly one series");
        double sum = 0;
        for (const auto& p : c.series[0].points) {
            if (p.y < 0)
                throw ChartError("pie slices must be nonnegative");
            sum += p.y;
        }
        if (!(sum > 0))
            throw ChartError("empty pie: slice values sum to zero");
        return;
    }
    for (const auto& s : c.series) {
        std::set<XValue> seen;
        for (const auto& p : s.points) {
            if (!seen.insert(p.x).second)
                throw ChartError("series '" + s.label + "' repeats an x value");
        }
    }
}

inline constexpr const char* journal_publications_query =
    "MATCH (Journal)-[:PUBLISHED_IN]-(Article) WHERE Journal.name IN [{}] RETURN Article.year, Journal.name";
inline constexpr const char* citations_query = "MATCH (n:Article) RETURN n.totalcites, n.selfcites";
inline constexpr const char* affiliation_query =
    "MATCH (Author)-[r:WORKS_FOR]->(Institute)-[s:IS_IN]->(Country) RETURN Author.name, Country.name";

/// The journal/publication query with the given names in its IN list.
inline std::string journal_publications_query_for(const std::vector<std::string>& journals)
{
    std::string list;
    for (std::size_t i = 0; i < journals.size(); ++i)
        list += (i ? ", " : "") + query::quote_string(journals[i]);
    std::string q = journal_publications_query;
    q.replace(q.find("{}"), 2, list);
    return q;
}

/// Publications per year, one series per requested journal in request order.
inline ChartBuild line_publications_per_year(const graph::PropertyGraph& g, const std::vector<std::string>& journals)
{
    if (journals.empty())
        throw ChartError("nothing to plot: no journals given");

    ChartBuild out;
    out.chart.kind = ChartKind::Line;
    out.chart.title = "Journal vs Publication";

    const auto table = query::execute_query(g, journal_publications_query_for(journals));
    std::map<std::string, std::map<std::int64_t, double>> counts;
    std::size_t undated = 0;
    for (const auto& row : table.rows) {
        const auto* name = row[1] ? std::get_if<std::string>(&*row[1]) : nullptr;
        const auto year = row[0] ? graph::as_integer(*row[0]) : std::nullopt;
        if (!name)
            continue;
        if (!year) {
            ++undated;
            continue;
        }
        counts[*name][*year] += 1;
    }

    std::set<std::string> emitted;
    for (const auto& journal : journals) {
        if (!emitted.insert(journal).second)
            continue;
        Series s{journal, {}};
        if (!g.find_node(graph::Label::Journal, journal))
            out.notes.push_back("unknown journal '" + journal + "'");
        for (const auto& [year, n] : counts[journal])
            s.points.push_back({static_cast<double>(year), n});
        out.chart.series.push_back(std::move(s));
    }
    if (undated)
        out.notes.push_back(std::to_string(undated) + " article(s) without a year left out");
    return out;
}

/// Total and self citations per article, largest total first.
inline ChartBuild area_total_vs_self(const graph::PropertyGraph& g)
{
    ChartBuild out;
    out.chart.kind = ChartKind::Area;
    out.chart.title = "Total citations vs self citations";

    const auto table = query::execute_query(g, "MATCH (n:Article) RETURN n.name, n.totalcites, n.selfcites");
    struct Entry {
        std::string name;
        double total;
        double self;
    };
    std::vector<Entry> entries;
    std::size_t skipped = 0;
    for (const auto& row : table.rows) {
        auto total = row[1] ? graph::as_number(*row[1]) : std::nullopt;
        auto self = row[2] ? graph::as_number(*row[2]) : std::nullopt;
        if (!row[0] || !total || !self) {
            ++skipped;
            continue;
        }
        entries.push_back({std::get<std::string>(*row[0]), *total, *self});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.total != b.total)
            return a.total > b.total;
        return a.name < b.name;
    });

    Series total{"total", {}};
    Series self{"self", {}};
    for (const auto& e : entries) {
        total.points.push_back({e.name, e.total});
        self.points.push_back({e.name, e.self});
    }
    out.chart.series = {std::move(total), std::move(self)};
    if (skipped)
        out.notes.push_back(std::to_string(skipped) + " article(s) without citation counts skipped");
    return out;
}

enum class CountMode { Articles, Authors };

/// Publications per country from the author/institute/country traversal.
/// In Articles mode an article counts once for every distinct country among
/// its authors; in Authors mode each distinct (author, country) pair counts once.
inline ChartBuild pie_publications_per_country(const graph::PropertyGraph& g, CountMode mode = CountMode::Articles)
{
    ChartBuild out;
    out.chart.kind = ChartKind::Pie;
    out.chart.title = "Article Publications per Country";

    const auto table = query::execute_query(g, affiliation_query);
    std::set<std::pair<std::string, std::string>> author_country;
    for (const auto& row : table.rows) {
        const auto* author = row[0] ? std::get_if<std::string>(&*row[0]) : nullptr;
        const auto* country = row[1] ? std::get_if<std::string>(&*row[1]) : nullptr;
        if (author && country)
            author_country.emplace(*author, *country);
    }

    std::map<std::string, double> counts;
    if (mode == CountMode::Authors) {
        for (const auto& [author, country] : author_country)
            counts[country] += 1;
    } else {
        std::set<std::pair<graph::NodeId, std::string>> article_country;
        for (const auto& [author, country] : author_country) {
            auto id = g.find_node(graph::Label::Author, author);
            if (!id)
                continue;
            for (const auto& wrote : g.neighbors(*id, graph::Direction::Out, graph::RelType::Wrote)) {
                if (!graph::is_stub(*wrote.node))
                    article_country.emplace(wrote.node->id, country);
            }
        }
        for (const auto& [article, country] : article_country)
            counts[country] += 1;
    }
    if (counts.empty())
        throw ChartError("empty pie: no author affiliations resolve to a country");

    std::vector<std::pair<std::string, double>> slices(counts.begin(), counts.end());
    std::stable_sort(slices.begin(), slices.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    Series s{"publications", {}};
    for (const auto& [country, n] : slices)
        s.points.push_back({country, n});
    out.chart.series.push_back(std::move(s));
    return out;
}

struct Slice {
    std::string label;
    double value;
    double fraction;
    double start_degrees;
    double sweep_degrees;
};

/// Slice geometry for a valid pie, clockwise from 12 o'clock. The last
/// slice closes exactly at 360 degrees.
inline std::vector<Slice> pie_slices(const ChartSpec& c)
{
    validate(c);
    if (c.kind != ChartKind::Pie)
        throw ChartError("not a pie chart");
    const auto& points = c.series[0].points;
    double total = 0;
    for (const auto& p : points)
        total += p.y;

    std::vector<Slice> slices;
    double start = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double fraction = points[i].y / total;
        double sweep = fraction * 360.0;
        if (i + 1 == points.size())
            sweep = 360.0 - start;
        const auto& x = points[i].x;
        std::string label = std::holds_alternative<std::string>(x) ? std::get<std::string>(x)
                                                                   : format_decimal(std::get<double>(x));
        slices.push_back({std::move(label), points[i].y, fraction, start, sweep});
        start += sweep;
    }
    return slices;
}

} // namespace sciento::chart

#endif
