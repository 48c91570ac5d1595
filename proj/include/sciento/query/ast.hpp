#ifndef SCIENTO_QUERY_AST_HPP
#define SCIENTO_QUERY_AST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sciento::query {

struct NodePattern {
    std::optional<std::string> variable;
    std::optional<std::string> label;

    bool operator==(const NodePattern&) const = default;
};

enum class RelDirection {
    Right,     // -[..]->
    Left,      // <-[..]-
    Undirected // -[..]-
};

struct RelPattern {
    std::optional<std::string> variable;
    std::optional<std::string> type;
    RelDirection direction = RelDirection::Undirected;

    bool operator==(const RelPattern&) const = default;
};

/// node (rel node)*; always nodes.size() == rels.size() + 1.
struct PathPattern {
    std::vector<NodePattern> nodes;
    std::vector<RelPattern> rels;

    bool operator==(const PathPattern&) const = default;
};

using Literal = std::variant<std::string, std::int64_t, double>;

/// `variable.property`. The source position (1-based, in characters) is kept
/// for diagnostics and ignored by comparison.
struct PropertyRef {
    std::string variable;
    std::string property;
    std::size_t position = 0;

    bool operator==(const PropertyRef& o) const { return variable == o.variable && property == o.property; }
    std::string column() const { return variable + "." + property; }
};

struct InPredicate {
    PropertyRef ref;
    std::vector<Literal> values;

    bool operator==(const InPredicate&) const = default;
};

struct EqPredicate {
    PropertyRef ref;
    Literal value;

    bool operator==(const EqPredicate&) const = default;
};

struct Predicate;

/// Conjunction of two or more terms.
struct AndPredicate {
    std::vector<Predicate> terms;
};

struct Predicate {
    std::variant<InPredicate, EqPredicate, AndPredicate> expr;
};

bool operator==(const Predicate& a, const Predicate& b);

inline bool operator==(const AndPredicate& a, const AndPredicate& b)
{
    return a.terms == b.terms;
}

inline bool operator==(const Predicate& a, const Predicate& b)
{
    return a.expr == b.expr;
}

struct Query {
    std::vector<PathPattern> patterns;
    std::optional<Predicate> where;
    std::vector<PropertyRef> projections;

    bool operator==(const Query&) const = default;
};

} // namespace sciento::query

#endif
