#ifndef SCIENTO_QUERY_RENDER_HPP
#define SCIENTO_QUERY_RENDER_HPP

#include <charconv>
#include <string>

#include "sciento/query/ast.hpp"

namespace sciento::query {

inline std::string quote_string(std::string_view s)
{
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += '\'';
        out += c;
    }
    out += '\'';
    return out;
}

inline std::string render(const Literal& lit)
{
    if (const auto* s = std::get_if<std::string>(&lit))
        return quote_string(*s);
    if (const auto* i = std::get_if<std::int64_t>(&lit))
        return std::to_string(*i);
    // Plain positional notation with a mandatory fraction so it lexes back as a decimal.
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(lit), std::chars_format::fixed);
    std::string out(buf, ec == std::errc{} ? end : buf);
    if (out.find('.') == std::string::npos)
        out += ".0";
    return out;
}

inline std::string render(const NodePattern& n)
{
    std::string out = "(";
    if (n.variable)
        out += *n.variable;
    if (n.label)
        out += ":" + *n.label;
    return out + ")";
}

inline std::string render(const RelPattern& r)
{
    std::string body = "[";
    if (r.variable)
        body += *r.variable;
    if (r.type)
        body += ":" + *r.type;
    body += "]";
    switch (r.direction) {
    case RelDirection::Right: return "-" + body + "->";
    case RelDirection::Left: return "<-" + body + "-";
    case RelDirection::Undirected: break;
    }
    return "-" + body + "-";
}

inline std::string render(const PathPattern& p)
{
    std::string out = render(p.nodes.front());
    for (std::size_t i = 0; i < p.rels.size(); ++i)
        out += render(p.rels[i]) + render(p.nodes[i + 1]);
    return out;
}

inline std::string render(const Predicate& p)
{
    return std::visit(
        [](const auto& e) -> std::string {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, InPredicate>) {
                std::string out = e.ref.column() + " IN [";
                for (std::size_t i = 0; i < e.values.size(); ++i)
                    out += (i ? ", " : "") + render(e.values[i]);
                return out + "]";
            } else if constexpr (std::is_same_v<T, EqPredicate>) {
                return e.ref.column() + " = " + render(e.value);
            } else {
                std::string out;
                for (std::size_t i = 0; i < e.terms.size(); ++i)
                    out += (i ? " AND " : "") + render(e.terms[i]);
                return out;
            }
        },
        p.expr);
}

/// Canonical single-line query text; parse_query(render(q)) == q.
inline std::string render(const Query& q)
{
    std::string out = "MATCH ";
    for (std::size_t i = 0; i < q.patterns.size(); ++i)
        out += (i ? ", " : "") + render(q.patterns[i]);
    if (q.where)
        out += " WHERE " + render(*q.where);
    out += " RETURN ";
    for (std::size_t i = 0; i < q.projections.size(); ++i)
        out += (i ? ", " : "") + q.projections[i].column();
    return out;
}

} // namespace sciento::query

#endif
