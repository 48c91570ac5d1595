#ifndef SCIENTO_INDICATORS_HPP
#define SCIENTO_INDICATORS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sciento/format.hpp"
#include "sciento/graph.hpp"
#include "sciento/ingest.hpp"
#include "sciento/load.hpp"
#include "sciento/similarity.hpp"

namespace sciento::indicators {

inline constexpr double default_threshold = 0.6;

struct CitationCounts {
    std::int64_t total = 0;
    std::int64_t author_self = 0;
    std::int64_t journal_self = 0;

    bool operator==(const CitationCounts&) const = default;
};

/// Cobb-Douglas inputs for one journal: other-citations quotient,
/// international collaboration, SNIP and non-local influence quotient.
struct IndicatorVector {
    double x1 = 0;
    double x2 = 0;
    double x3 = 0;
    double x4 = 0;

    std::array<double, 4> values() const { return {x1, x2, x3, x4}; }
    bool operator==(const IndicatorVector&) const = default;
};

/// A citing entry is an author self-citation when any of its authors matches
/// any author of the cited article, and a journal self-citation when its
/// journal matches. Each citing entry counts at most once per kind.
inline CitationCounts count_self_citations(const ingest::RawArticleRecord& article, double threshold)
{
    check_threshold(threshold);
    CitationCounts c;
    c.total = article.total_cites;
    for (const auto& citer : article.citing_articles) {
        const bool shares_author = std::any_of(citer.author_names.begin(), citer.author_names.end(),
                                               [&](const std::string& name) {
                                                   return std::any_of(article.authors.begin(), article.authors.end(),
                                                                      [&](const ingest::AuthorEntry& a) {
                                                                          return same_name(name, a.name, threshold);
                                                                      });
                                               });
        if (shares_author)
            ++c.author_self;
        if (citer.journal_name && !article.journal_name.empty() &&
            same_name(*citer.journal_name, article.journal_name, threshold))
            ++c.journal_self;
    }
    c.author_self = std::min(c.author_self, c.total);
    c.journal_self = std::min(c.journal_self, c.total);
    return c;
}

/// 1 - self/total, with no citations at all treated as 1.
inline double other_citations_quotient(std::int64_t self, std::int64_t total)
{
    if (self < 0 || total < 0)
        throw std::invalid_argument("citation counts must be nonnegative");
    if (self > total)
        throw std::invalid_argument("self-citations exceed total citations");
    if (total == 0)
        return 1.0;
    return 1.0 - static_cast<double>(self) / static_cast<double>(total);
}

inline double non_local_influence_quotient(std::int64_t journal_self, std::int64_t total)
{
    return other_citations_quotient(journal_self, total);
}

/// Distinct countries reachable from an article through its authors'
/// institutes.
inline std::set<graph::NodeId> article_countries(const graph::PropertyGraph& g, graph::NodeId article)
{
    using graph::Direction;
    using graph::RelType;
    std::set<graph::NodeId> countries;
    for (const auto& author : g.neighbors(article, Direction::In, RelType::Wrote)) {
        for (const auto& inst : g.neighbors(author.node->id, Direction::Out, RelType::WorksFor)) {
            for (const auto& country : g.neighbors(inst.node->id, Direction::Out, RelType::IsIn))
                countries.insert(country.node->id);
        }
    }
    return countries;
}

inline std::vector<const graph::Node*> journal_articles(const graph::PropertyGraph& g, graph::NodeId journal)
{
    std::vector<const graph::Node*> out;
    for (const auto& adj : g.neighbors(journal, graph::Direction::In, graph::RelType::PublishedIn)) {
        if (!graph::is_stub(*adj.node))
            out.push_back(adj.node);
    }
    return out;
}

/// Fraction of the journal's full articles whose authors are affiliated
/// with two or more distinct countries.
inline double international_collaboration(const graph::PropertyGraph& g, graph::NodeId journal)
{
    if (g.node(journal).label != graph::Label::Journal)
        throw std::invalid_argument("international collaboration is defined for Journal nodes only");
    const auto articles = journal_articles(g, journal);
    if (articles.empty())
        return 0.0;
    std::size_t international = 0;
    for (const graph::Node* a : articles) {
        if (article_countries(g, a->id).size() >= 2)
            ++international;
    }
    return static_cast<double>(international) / static_cast<double>(articles.size());
}

struct AnnotationReport {
    std::size_t articles_annotated = 0;
    std::size_t journals_annotated = 0;
    std::vector<std::string> journals_missing_snip;
    std::vector<std::string> unmatched_records;
};

namespace detail {

inline std::optional<std::int64_t> int_property(const graph::Node& n, std::string_view key)
{
    const auto* v = n.property(key);
    return v ? graph::as_integer(*v) : std::nullopt;
}

} // namespace detail

/// Writes `selfcites` and `journalselfcites` on every article described by
/// `records`, then recomputes `x1`..`x4` and the aggregate citation counts on
/// every Journal from the article properties already in the graph. Journal
/// quotients are citation-weighted: 1 - sum(self) / sum(total).
inline AnnotationReport annotate_graph(graph::PropertyGraph& g, std::span<const ingest::RawArticleRecord> records,
                                       double threshold = default_threshold)
{
    using graph::Label;
    check_threshold(threshold);
    AnnotationReport report;

    for (const auto& r : records) {
        auto id = g.find_node(Label::Article, r.title);
        if (!id || graph::is_stub(g.node(*id))) {
            report.unmatched_records.push_back(r.title);
            continue;
        }
        const CitationCounts c = count_self_citations(r, threshold);
        g.set_property(*id, "selfcites", c.author_self);
        g.set_property(*id, "journalselfcites", c.journal_self);
        ++report.articles_annotated;
    }

    std::vector<graph::NodeId> journals;
    for (const graph::Node* j : g.nodes_by_label(Label::Journal))
        journals.push_back(j->id);

    for (graph::NodeId journal : journals) {
        std::int64_t total = 0;
        std::int64_t self = 0;
        std::int64_t journal_self = 0;
        const auto articles = journal_articles(g, journal);
        for (const graph::Node* a : articles) {
            auto t = detail::int_property(*a, "totalcites");
            auto s = detail::int_property(*a, "selfcites");
            auto js = detail::int_property(*a, "journalselfcites");
            if (!t || !s || !js)
                continue;
            total += *t;
            self += *s;
            journal_self += *js;
        }
        const std::int64_t article_count = static_cast<std::int64_t>(articles.size());
        const double x2 = international_collaboration(g, journal);

        g.set_property(journal, "totalcites", total);
        g.set_property(journal, "selfcites", self);
        g.set_property(journal, "journalselfcites", journal_self);
        g.set_property(journal, "articles", article_count);
        g.set_property(journal, "x1", other_citations_quotient(self, total));
        g.set_property(journal, "x2", x2);
        g.set_property(journal, "x4", non_local_influence_quotient(journal_self, total));

        const graph::Node& node = g.node(journal);
        const auto* snip = node.property("snip");
        auto snip_value = snip ? graph::as_number(*snip) : std::nullopt;
        if (snip_value) {
            g.set_property(journal, "x3", *snip_value);
        } else {
            g.erase_property(journal, "x3");
            report.journals_missing_snip.push_back(node.name());
        }
        ++report.journals_annotated;
    }
    return report;
}

/// Per-journal indicator row as stored on an annotated graph.
struct JournalIndicators {
    std::string journal;
    std::optional<double> x1, x2, x3, x4;
    std::int64_t total_cites = 0;
    std::int64_t self_cites = 0;
    std::int64_t journal_self_cites = 0;
    std::int64_t articles = 0;

    /// Complete vector, or nothing when any indicator is missing.
    std::optional<IndicatorVector> vector() const
    {
        if (!x1 || !x2 || !x3 || !x4)
            return std::nullopt;
        return IndicatorVector{*x1, *x2, *x3, *x4};
    }
};

/// Rows for every Journal, sorted by name.
inline std::vector<JournalIndicators> journal_indicators(const graph::PropertyGraph& g)
{
    std::vector<JournalIndicators> rows;
    for (const graph::Node* j : g.nodes_by_label(graph::Label::Journal)) {
        JournalIndicators row;
        row.journal = j->name();
        auto number = [&](std::string_view key) -> std::optional<double> {
            const auto* v = j->property(key);
            return v ? graph::as_number(*v) : std::nullopt;
        };
        row.x1 = number("x1");
        row.x2 = number("x2");
        row.x3 = number("x3");
        row.x4 = number("x4");
        row.total_cites = detail::int_property(*j, "totalcites").value_or(0);
        row.self_cites = detail::int_property(*j, "selfcites").value_or(0);
        row.journal_self_cites = detail::int_property(*j, "journalselfcites").value_or(0);
        row.articles = detail::int_property(*j, "articles").value_or(0);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.journal < b.journal; });
    return rows;
}

inline void write_indicators_csv(const std::vector<JournalIndicators>& rows, std::ostream& os)
{
    auto opt = [](const std::optional<double>& v) { return v ? format_decimal(*v) : std::string(); };
    csv::write_row(os, {"journal", "x1", "x2", "x3", "x4", "total_cites", "self_cites", "journal_self_cites",
                        "articles"});
    for (const auto& r : rows) {
        csv::write_row(os, {r.journal, opt(r.x1), opt(r.x2), opt(r.x3), opt(r.x4), std::to_string(r.total_cites),
                            std::to_string(r.self_cites), std::to_string(r.journal_self_cites),
                            std::to_string(r.articles)});
    }
}

} // namespace sciento::indicators

#endif
