#ifndef SCIENTO_QUERY_PARSER_HPP
#define SCIENTO_QUERY_PARSER_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sciento/query/ast.hpp"

namespace sciento::query {

/// Syntax and validation failures. `position` is a 1-based character
/// offset into the query text; `line`/`column` locate the same spot.
class QueryError : public std::runtime_error {
public:
    enum class Kind { Syntax, Validation };

    QueryError(Kind kind, std::string message, std::size_t position, std::size_t line, std::size_t column,
               std::vector<std::string> expected = {})
        : std::runtime_error(describe(kind, message, position, expected)), kind_(kind), message_(std::move(message)),
          position_(position), line_(line), column_(column), expected_(std::move(expected))
    {
    }

    Kind kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }
    std::size_t position() const noexcept { return position_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string describe(Kind kind, const std::string& message, std::size_t position,
                                const std::vector<std::string>& expected)
    {
        std::string s = kind == Kind::Syntax ? "syntax error" : "invalid query";
        s += " at position " + std::to_string(position) + ": " + message;
        if (!expected.empty()) {
            s += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i)
                    s += i + 1 == expected.size() ? " or " : ", ";
                s += expected[i];
            }
            s += ")";
        }
        return s;
    }

    Kind kind_;
    std::string message_;
    std::size_t position_;
    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

namespace detail {

enum class Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    Dot,
    Dash,
    ArrowRight,
    ArrowLeft,
    Equals,
    Ident,
    String,
    Integer,
    Decimal,
    Match,
    Where,
    Return,
    And,
    In,
    End,
};

inline std::string_view tok_name(Tok t)
{
    switch (t) {
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Dash: return "'-'";
    case Tok::ArrowRight: return "'->'";
    case Tok::ArrowLeft: return "'<-'";
    case Tok::Equals: return "'='";
    case Tok::Ident: return "identifier";
    case Tok::String: return "string";
    case Tok::Integer: return "integer";
    case Tok::Decimal: return "decimal";
    case Tok::Match: return "MATCH";
    case Tok::Where: return "WHERE";
    case Tok::Return: return "RETURN";
    case Tok::And: return "AND";
    case Tok::In: return "IN";
    case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind = Tok::End;
    std::string text; // identifier name, unescaped string, or number spelling
    std::size_t offset = 0;
};

inline std::optional<Tok> keyword(std::string_view word)
{
    std::string upper(word);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    static const std::map<std::string, Tok, std::less<>> keywords{
        {"MATCH", Tok::Match}, {"WHERE", Tok::Where}, {"RETURN", Tok::Return}, {"AND", Tok::And}, {"IN", Tok::In}};
    auto it = keywords.find(upper);
    if (it == keywords.end())
        return std::nullopt;
    return it->second;
}

inline bool ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Location {
    std::size_t position; // 1-based character offset
    std::size_t line;
    std::size_t column;
};

/// Walks `text` up to byte `offset` (or to character `position`, whichever
/// comes first), counting characters, lines and columns.
inline Location locate(std::string_view text, std::size_t offset, std::size_t position = SIZE_MAX)
{
    Location loc{1, 1, 1};
    for (std::size_t i = 0; i < offset && i < text.size() && loc.position < position; ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if ((c & 0xC0) == 0x80)
            continue;
        ++loc.position;
        if (c == '\n') {
            ++loc.line;
            loc.column = 1;
        } else {
            ++loc.column;
        }
    }
    return loc;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { advance(); }

    Query parse_query()
    {
        Query q;
        expect(Tok::Match);
        q.patterns.push_back(parse_pattern());
        while (accept(Tok::Comma))
            q.patterns.push_back(parse_pattern());
        if (accept(Tok::Where))
            q.where = parse_predicate();
        expect(Tok::Return);
        q.projections.push_back(parse_property_ref());
        while (accept(Tok::Comma))
            q.projections.push_back(parse_property_ref());
        expect(Tok::End);
        return q;
    }

private:
    PathPattern parse_pattern()
    {
        PathPattern p;
        p.nodes.push_back(parse_node());
        for (;;) {
            if (accept(Tok::Dash)) {
                RelPattern rel = parse_rel_body();
                if (accept(Tok::ArrowRight))
                    rel.direction = RelDirection::Right;
                else if (accept(Tok::Dash))
                    rel.direction = RelDirection::Undirected;
                else
                    fail();
                p.rels.push_back(std::move(rel));
            } else if (accept(Tok::ArrowLeft)) {
                RelPattern rel = parse_rel_body();
                expect(Tok::Dash);
                rel.direction = RelDirection::Left;
                p.rels.push_back(std::move(rel));
            } else {
                break;
            }
            p.nodes.push_back(parse_node());
        }
        return p;
    }

    NodePattern parse_node()
    {
        NodePattern n;
        expect(Tok::LParen);
        if (check(Tok::Ident))
            n.variable = take().text;
        if (accept(Tok::Colon))
            n.label = expect(Tok::Ident).text;
        expect(Tok::RParen);
        return n;
    }

    RelPattern parse_rel_body()
    {
        RelPattern r;
        expect(Tok::LBracket);
        if (check(Tok::Ident))
            r.variable = take().text;
        if (accept(Tok::Colon))
            r.type = expect(Tok::Ident).text;
        expect(Tok::RBracket);
        return r;
    }

    Predicate parse_predicate()
    {
        Predicate first = parse_term();
        if (!check(Tok::And))
            return first;
        AndPredicate conj;
        conj.terms.push_back(std::move(first));
        while (accept(Tok::And))
            conj.terms.push_back(parse_term());
        return Predicate{std::move(conj)};
    }

    Predicate parse_term()
    {
        PropertyRef ref = parse_property_ref();
        if (accept(Tok::In)) {
            InPredicate in{std::move(ref), {}};
            expect(Tok::LBracket);
            in.values.push_back(parse_literal());
            while (accept(Tok::Comma))
                in.values.push_back(parse_literal());
            expect(Tok::RBracket);
            return Predicate{std::move(in)};
        }
        if (accept(Tok::Equals))
            return Predicate{EqPredicate{std::move(ref), parse_literal()}};
        fail();
    }

    PropertyRef parse_property_ref()
    {
        PropertyRef ref;
        ref.position = locate(text_, current_.offset).position;
        ref.variable = expect(Tok::Ident).text;
        expect(Tok::Dot);
        ref.property = expect(Tok::Ident).text;
        return ref;
    }

    Literal parse_literal()
    {
        if (check(Tok::String))
            return take().text;
        const bool negative = accept(Tok::Dash);
        if (check(Tok::Integer)) {
            std::string spelling = (negative ? "-" : "") + current_.text;
            std::int64_t v = 0;
            auto [end, ec] = std::from_chars(spelling.data(), spelling.data() + spelling.size(), v);
            if (ec != std::errc{} || end != spelling.data() + spelling.size())
                fail("integer literal out of range");
            take();
            return v;
        }
        if (check(Tok::Decimal)) {
            std::string spelling = (negative ? "-" : "") + current_.text;
            double v = 0;
            std::from_chars(spelling.data(), spelling.data() + spelling.size(), v);
            take();
            return v;
        }
        fail();
    }

    bool check(Tok kind)
    {
        if (current_.kind == kind)
            return true;
        expected_.insert(std::string(tok_name(kind)));
        return false;
    }

    bool accept(Tok kind)
    {
        if (!check(kind))
            return false;
        take();
        return true;
    }

    Token expect(Tok kind)
    {
        if (!check(kind))
            fail();
        return take();
    }

    Token take()
    {
        Token t = std::move(current_);
        advance();
        return t;
    }

    [[noreturn]] void fail(std::string message = {})
    {
        if (message.empty()) {
            message = current_.kind == Tok::End ? "unexpected end of input"
                                                : "unexpected " + describe_current();
        }
        std::vector<std::string> expected(expected_.begin(), expected_.end());
        raise(current_.offset, std::move(message), std::move(expected));
    }

    std::string describe_current() const
    {
        switch (current_.kind) {
        case Tok::Ident: return "identifier '" + current_.text + "'";
        case Tok::String: return "string '" + current_.text + "'";
        case Tok::Integer:
        case Tok::Decimal: return "number " + current_.text;
        default: return std::string(tok_name(current_.kind));
        }
    }

    [[noreturn]] void raise(std::size_t offset, std::string message, std::vector<std::string> expected = {})
    {
        const Location loc = locate(text_, offset);
        throw QueryError(QueryError::Kind::Syntax, std::move(message), loc.position, loc.line, loc.column,
                         std::move(expected));
    }

    void advance()
    {
        expected_.clear();
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        current_ = Token{};
        current_.offset = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            return;
        }

        const char c = text_[pos_];
        auto single = [&](Tok kind) {
            current_.kind = kind;
            ++pos_;
        };
        switch (c) {
        case '(': return single(Tok::LParen);
        case ')': return single(Tok::RParen);
        case '[': return single(Tok::LBracket);
        case ']': return single(Tok::RBracket);
        case ':': return single(Tok::Colon);
        case ',': return single(Tok::Comma);
        case '.': return single(Tok::Dot);
        case '=': return single(Tok::Equals);
        case '-':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                current_.kind = Tok::ArrowRight;
                pos_ += 2;
                return;
            }
            return single(Tok::Dash);
        case '<':
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                current_.kind = Tok::ArrowLeft;
                pos_ += 2;
                return;
            }
            raise(pos_, "unexpected character '<'");
        case '\'': return lex_string();
        default: break;
        }

        if (std::isdigit(static_cast<unsigned char>(c)))
            return lex_number();
        if (ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_]))
                ++pos_;
            std::string_view word = text_.substr(start, pos_ - start);
            if (auto kw = keyword(word)) {
                current_.kind = *kw;
            } else {
                current_.kind = Tok::Ident;
            }
            current_.text = std::string(word);
            return;
        }
        std::size_t len = 1;
        const auto lead = static_cast<unsigned char>(c);
        if (lead >= 0xF0)
            len = 4;
        else if (lead >= 0xE0)
            len = 3;
        else if (lead >= 0xC0)
            len = 2;
        raise(pos_, "unexpected character '" + std::string(text_.substr(pos_, len)) + "'");
    }

    void lex_string()
    {
        const std::size_t start = pos_++;
        std::string value;
        for (;;) {
            if (pos_ >= text_.size())
                raise(start, "unterminated string literal");
            const char c = text_[pos_++];
            if (c == '\'') {
                if (pos_ < text_.size() && text_[pos_] == '\'') {
                    value += '\'';
                    ++pos_;
                    continue;
                }
                break;
            }
            value += c;
        }
        current_.kind = Tok::String;
        current_.text = std::move(value);
    }

    void lex_number()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        current_.kind = Tok::Integer;
        if (pos_ + 1 < text_.size() && text_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            current_.kind = Tok::Decimal;
        }
        if (pos_ < text_.size() && ident_char(text_[pos_]))
            raise(start, "malformed number");
        current_.text = std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_;
    std::set<std::string> expected_;
};

} // namespace detail

/// Parses MATCH ... [WHERE ...] RETURN ... text into an AST. Keywords are
/// case-insensitive. A parenthesized bare name such as `(Journal)` is a
/// variable; labels only filter when written `(n:Label)`.
inline Query parse_query(std::string_view text)
{
    return detail::Parser(text).parse_query();
}

enum class BindingKind { Node, Relationship };

/// Variables bound by the patterns, with what they range over.
inline std::map<std::string, BindingKind> bound_variables(const Query& q)
{
    std::map<std::string, BindingKind> vars;
    for (const auto& p : q.patterns) {
        for (const auto& n : p.nodes) {
            if (n.variable)
                vars.emplace(*n.variable, BindingKind::Node);
        }
        for (const auto& r : p.rels) {
            if (r.variable)
                vars.emplace(*r.variable, BindingKind::Relationship);
        }
    }
    return vars;
}

namespace detail {

inline void collect_refs(const Predicate& p, std::vector<const PropertyRef*>& out)
{
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, AndPredicate>) {
                for (const auto& t : e.terms)
                    collect_refs(t, out);
            } else {
                out.push_back(&e.ref);
            }
        },
        p.expr);
}

} // namespace detail

/// Semantic checks the grammar cannot express: every referenced variable is
/// bound, no name is used for both a node and a relationship, and no
/// relationship variable appears twice. `text` is only used to turn
/// positions into line/column.
inline void validate(const Query& q, std::string_view text = {})
{
    auto fail = [&](const std::string& message, std::size_t position) {
        const detail::Location loc = text.empty() ? detail::Location{position, 1, position}
                                                  : detail::locate(text, text.size(), position);
        throw QueryError(QueryError::Kind::Validation, message, position, loc.line, loc.column);
    };

    if (q.patterns.empty())
        fail("MATCH needs at least one pattern", 1);
    if (q.projections.empty())
        fail("RETURN needs at least one projection", 1);

    std::map<std::string, BindingKind> kinds;
    std::set<std::string> rel_vars;
    for (const auto& p : q.patterns) {
        if (p.nodes.size() != p.rels.size() + 1)
            fail("malformed path pattern", 1);
        for (const auto& n : p.nodes) {
            if (!n.variable)
                continue;
            auto [it, inserted] = kinds.emplace(*n.variable, BindingKind::Node);
            if (!inserted && it->second != BindingKind::Node)
                fail("'" + *n.variable + "' is bound to both a node and a relationship", 1);
        }
        for (const auto& r : p.rels) {
            if (!r.variable)
                continue;
            auto [it, inserted] = kinds.emplace(*r.variable, BindingKind::Relationship);
            if (!inserted && it->second != BindingKind::Relationship)
                fail("'" + *r.variable + "' is bound to both a node and a relationship", 1);
            if (!rel_vars.insert(*r.variable).second)
                fail("relationship variable '" + *r.variable + "' is used more than once", 1);
        }
    }

    std::vector<const PropertyRef*> refs;
    if (q.where)
        detail::collect_refs(*q.where, refs);
    for (const auto& p : q.projections)
        refs.push_back(&p);
    for (const PropertyRef* ref : refs) {
        if (!kinds.contains(ref->variable))
            fail("variable '" + ref->variable + "' is not bound in MATCH", ref->position);
    }
}

/// parse_query followed by validate.
inline Query compile(std::string_view text)
{
    Query q = parse_query(text);
    validate(q, text);
    return q;
}

/// Caret diagnostic: the message, the offending line, and a marker under the column.
inline std::string format_diagnostic(std::string_view text, const QueryError& e)
{
    std::string out = std::string(e.what()) + "\n";
    std::size_t line_start = 0;
    for (std::size_t line = 1; line < e.line(); ++line) {
        auto nl = text.find('\n', line_start);
        if (nl == std::string_view::npos)
            break;
        line_start = nl + 1;
    }
    auto line_end = text.find('\n', line_start);
    std::string_view line_text =
        text.substr(line_start, line_end == std::string_view::npos ? std::string_view::npos : line_end - line_start);
    out += "  " + std::string(line_text) + "\n";
    out += "  " + std::string(e.column() > 0 ? e.column() - 1 : 0, ' ') + "^\n";
    return out;
}

} // namespace sciento::query

#endif
