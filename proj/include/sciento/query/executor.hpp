#ifndef SCIENTO_QUERY_EXECUTOR_HPP
#define SCIENTO_QUERY_EXECUTOR_HPP

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sciento/format.hpp"
#include "sciento/graph.hpp"
#include "sciento/query/ast.hpp"
#include "sciento/query/parser.hpp"

namespace sciento::query {

using Cell = std::optional<graph::PropertyValue>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Equality between a stored value and a query literal. Integers and
/// decimals compare numerically; text compares exactly; lists never match.
inline bool literal_matches(const graph::PropertyValue& value, const Literal& lit)
{
    if (const auto* s = std::get_if<std::string>(&lit)) {
        const auto* v = std::get_if<std::string>(&value);
        return v && *v == *s;
    }
    auto number = graph::as_number(value);
    if (!number)
        return false;
    if (const auto* i = std::get_if<std::int64_t>(&lit)) {
        if (const auto* vi = std::get_if<std::int64_t>(&value))
            return *vi == *i;
        return *number == static_cast<double>(*i);
    }
    return *number == std::get<double>(lit);
}

namespace detail {

class Matcher {
public:
    Matcher(const graph::PropertyGraph& g, const Query& q) : g_(g), q_(q), used_(g.relationship_count(), false) {}

    ResultTable run()
    {
        ResultTable table;
        for (const auto& p : q_.projections)
            table.columns.push_back(p.column());
        table_ = &table;
        match_pattern(0);
        return table;
    }

private:
    void match_pattern(std::size_t index)
    {
        if (index == q_.patterns.size()) {
            emit();
            return;
        }
        const PathPattern& p = q_.patterns[index];
        const NodePattern& first = p.nodes.front();

        auto try_start = [&](const graph::Node& n) {
            auto undo = bind_node(first, n);
            if (!undo)
                return;
            match_hop(index, 0, n.id);
            unbind(*undo);
        };

        if (first.variable) {
            if (auto it = nodes_.find(*first.variable); it != nodes_.end()) {
                try_start(g_.node(it->second));
                return;
            }
        }
        if (first.label) {
            auto label = graph::parse_label(*first.label);
            if (!label)
                return;
            for (const graph::Node* n : g_.nodes_by_label(*label))
                try_start(*n);
            return;
        }
        for (const graph::Node& n : g_.nodes())
            try_start(n);
    }

    void match_hop(std::size_t pattern, std::size_t hop, graph::NodeId current)
    {
        const PathPattern& p = q_.patterns[pattern];
        if (hop == p.rels.size()) {
            match_pattern(pattern + 1);
            return;
        }
        const RelPattern& rel = p.rels[hop];
        const NodePattern& next = p.nodes[hop + 1];

        std::optional<graph::RelType> type;
        if (rel.type) {
            type = graph::parse_rel_type(*rel.type);
            if (!type)
                return;
        }

        auto try_edge = [&](const graph::Adjacent& adj) {
            if (used_[adj.rel->id.value])
                return;
            if (rel.variable) {
                if (auto it = rels_.find(*rel.variable); it != rels_.end() && it->second != adj.rel->id)
                    return;
            }
            auto undo = bind_node(next, *adj.node);
            if (!undo)
                return;
            used_[adj.rel->id.value] = true;
            bool bound_rel = false;
            if (rel.variable)
                bound_rel = rels_.emplace(*rel.variable, adj.rel->id).second;
            match_hop(pattern, hop + 1, adj.node->id);
            if (bound_rel)
                rels_.erase(*rel.variable);
            used_[adj.rel->id.value] = false;
            unbind(*undo);
        };

        if (rel.direction != RelDirection::Left) {
            for (const auto& adj : g_.neighbors(current, graph::Direction::Out, type))
                try_edge(adj);
        }
        if (rel.direction != RelDirection::Right) {
            for (const auto& adj : g_.neighbors(current, graph::Direction::In, type))
                try_edge(adj);
        }
    }

    struct Undo {
        std::optional<std::string> variable; // set when this call created the binding
    };

    std::optional<Undo> bind_node(const NodePattern& pattern, const graph::Node& n)
    {
        if (pattern.label) {
            auto label = graph::parse_label(*pattern.label);
            if (!label || *label != n.label)
                return std::nullopt;
        }
        if (!pattern.variable)
            return Undo{};
        auto [it, inserted] = nodes_.emplace(*pattern.variable, n.id);
        if (!inserted)
            return it->second == n.id ? std::optional<Undo>(Undo{}) : std::nullopt;
        return Undo{*pattern.variable};
    }

    void unbind(const Undo& undo)
    {
        if (undo.variable)
            nodes_.erase(*undo.variable);
    }

    const graph::PropertyValue* lookup(const PropertyRef& ref) const
    {
        if (auto it = nodes_.find(ref.variable); it != nodes_.end())
            return g_.node(it->second).property(ref.property);
        if (auto it = rels_.find(ref.variable); it != rels_.end()) {
            const auto& props = g_.relationship(it->second).properties;
            auto p = props.find(ref.property);
            return p == props.end() ? nullptr : &p->second;
        }
        return nullptr;
    }

    bool holds(const Predicate& pred) const
    {
        return std::visit(
            [&](const auto& e) -> bool {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, AndPredicate>) {
                    for (const auto& t : e.terms) {
                        if (!holds(t))
                            return false;
                    }
                    return true;
                } else if constexpr (std::is_same_v<T, InPredicate>) {
                    const auto* v = lookup(e.ref);
                    if (!v)
                        return false;
                    for (const auto& lit : e.values) {
                        if (literal_matches(*v, lit))
                            return true;
                    }
                    return false;
                } else {
                    const auto* v = lookup(e.ref);
                    return v && literal_matches(*v, e.value);
                }
            },
            pred.expr);
    }

    void emit()
    {
        if (q_.where && !holds(*q_.where))
            return;
        std::vector<Cell> row;
        row.reserve(q_.projections.size());
        for (const auto& p : q_.projections) {
            const auto* v = lookup(p);
            row.push_back(v ? Cell(*v) : std::nullopt);
        }
        table_->rows.push_back(std::move(row));
    }

    const graph::PropertyGraph& g_;
    const Query& q_;
    std::vector<bool> used_;
    std::map<std::string, graph::NodeId> nodes_;
    std::map<std::string, graph::RelId> rels_;
    ResultTable* table_ = nullptr;
};

} // namespace detail

/// Evaluates a query with Cypher MATCH semantics: every binding in which no
/// relationship is used twice, undirected hops match either storage
/// direction, and rows keep their multiplicity. Missing properties project
/// as null. Row order follows node id order of the first pattern but is not
/// part of the contract.
inline ResultTable execute_query(const graph::PropertyGraph& g, const Query& q)
{
    validate(q);
    return detail::Matcher(g, q).run();
}

inline ResultTable execute_query(const graph::PropertyGraph& g, std::string_view text)
{
    return execute_query(g, compile(text));
}

inline std::string format_cell(const Cell& cell)
{
    if (!cell)
        return {};
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>)
                return v;
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>)
                return format_decimal(v);
            else
                return nlohmann::json(v).dump();
        },
        *cell);
}

/// Header row of `var.prop` names, then one line per row; null is an empty field.
inline void write_csv(const ResultTable& t, std::ostream& os)
{
    csv::write_row(os, t.columns);
    for (const auto& row : t.rows) {
        std::vector<std::string> fields;
        for (const auto& cell : row)
            fields.push_back(format_cell(cell));
        csv::write_row(os, fields);
    }
}

/// Array of objects keyed by column name, in column order.
inline void write_json(const ResultTable& t, std::ostream& os)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (row[i])
                obj[t.columns[i]] = std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, *row[i]);
            else
                obj[t.columns[i]] = nullptr;
        }
        out.push_back(std::move(obj));
    }
    os << out.dump(2) << '\n';
}

} // namespace sciento::query

#endif
