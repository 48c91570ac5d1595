#ifndef SCIENTO_GRAPH_HPP
#define SCIENTO_GRAPH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

namespace sciento::graph {

enum class Label { Journal, Article, Author, Institute, Country, Region };
enum class RelType { PublishedIn, Wrote, WorksFor, IsIn, PartOf, Cites };
enum class Direction { Out, In, Both };

inline constexpr std::array all_labels{Label::Journal, Label::Article,   Label::Author,
                                       Label::Institute, Label::Country, Label::Region};
inline constexpr std::array all_rel_types{RelType::PublishedIn, RelType::Wrote,  RelType::WorksFor,
                                          RelType::IsIn,        RelType::PartOf, RelType::Cites};

constexpr std::string_view to_string(Label label)
{
    switch (label) {
    case Label::Journal: return "Journal";
    case Label::Article: return "Article";
    case Label::Author: return "Author";
    case Label::Institute: return "Institute";
    case Label::Country: return "Country";
    case Label::Region: return "Region";
    }
    return "?";
}

constexpr std::string_view to_string(RelType type)
{
    switch (type) {
    case RelType::PublishedIn: return "PUBLISHED_IN";
    case RelType::Wrote: return "WROTE";
    case RelType::WorksFor: return "WORKS_FOR";
    case RelType::IsIn: return "IS_IN";
    case RelType::PartOf: return "PART_OF";
    case RelType::Cites: return "CITES";
    }
    return "?";
}

constexpr std::optional<Label> parse_label(std::string_view s)
{
    for (Label l : all_labels) {
        if (to_string(l) == s)
            return l;
    }
    return std::nullopt;
}

constexpr std::optional<RelType> parse_rel_type(std::string_view s)
{
    for (RelType t : all_rel_types) {
        if (to_string(t) == s)
            return t;
    }
    return std::nullopt;
}

struct Endpoints {
    Label src;
    Label dst;
};

/// Legal (source label, target label) pair for each relationship type.
constexpr Endpoints schema_endpoints(RelType type)
{
    switch (type) {
    case RelType::PublishedIn: return {Label::Article, Label::Journal};
    case RelType::Wrote: return {Label::Author, Label::Article};
    case RelType::WorksFor: return {Label::Author, Label::Institute};
    case RelType::IsIn: return {Label::Institute, Label::Country};
    case RelType::PartOf: return {Label::Country, Label::Region};
    case RelType::Cites: return {Label::Article, Label::Article};
    }
    return {Label::Article, Label::Article};
}

using PropertyValue = std::variant<std::string, std::int64_t, double, std::vector<std::string>>;
using PropertyMap = std::map<std::string, PropertyValue, std::less<>>;

/// Numeric view of a property: integers widen, text and lists do not convert.
inline std::optional<double> as_number(const PropertyValue& v)
{
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&v))
        return *d;
    return std::nullopt;
}

inline std::optional<std::int64_t> as_integer(const PropertyValue& v)
{
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return *i;
    return std::nullopt;
}

struct NodeId {
    std::uint64_t value = 0;
    auto operator<=>(const NodeId&) const = default;
};

struct RelId {
    std::uint64_t value = 0;
    auto operator<=>(const RelId&) const = default;
};

struct Node {
    NodeId id;
    Label label = Label::Article;
    PropertyMap properties;

    const std::string& name() const { return std::get<std::string>(properties.at("name")); }

    const PropertyValue* property(std::string_view key) const
    {
        auto it = properties.find(key);
        return it == properties.end() ? nullptr : &it->second;
    }
};

struct Relationship {
    RelId id;
    NodeId src;
    RelType type = RelType::Cites;
    NodeId dst;
    PropertyMap properties;
};

class GraphError : public std::runtime_error {
public:
    enum class Kind { EmptyName, UnknownNode, UnknownRelationship, SchemaViolation, InvalidProperty };

    GraphError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

namespace detail {

struct NodeKeyLess {
    using is_transparent = void;

    template <class A, class B>
    bool operator()(const std::pair<Label, A>& a, const std::pair<Label, B>& b) const
    {
        if (a.first != b.first)
            return a.first < b.first;
        return std::string_view(a.second) < std::string_view(b.second);
    }
};

} // namespace detail

struct Adjacent {
    const Relationship* rel;
    const Node* node;
};

/// In-memory labeled property graph with upsert semantics.
///
/// Nodes are keyed by (label, name) and relationships by (src, type, dst);
/// merging an existing key never creates a duplicate. Ids are dense and
/// assigned in creation order; nothing is ever deleted. Pointers handed out by
/// read accessors stay valid until the next mutation.
class PropertyGraph {
public:
    NodeId merge_node(Label label, std::string_view name, const PropertyMap& properties = {})
    {
        if (name.empty())
            throw GraphError(GraphError::Kind::EmptyName, "node name must not be empty");
        for (const auto& [key, value] : properties)
            check_value(key, value);

        auto it = index_.find(std::pair<Label, std::string_view>{label, name});
        if (it == index_.end()) {
            NodeId id{nodes_.size()};
            Node node{id, label, {}};
            node.properties.emplace("name", std::string(name));
            nodes_.push_back(std::move(node));
            out_.emplace_back();
            in_.emplace_back();
            by_label_[static_cast<std::size_t>(label)].push_back(id);
            it = index_.emplace(std::pair{label, std::string(name)}, id).first;
        }
        Node& node = nodes_[it->second.value];
        for (const auto& [key, value] : properties) {
            if (key != "name")
                node.properties.insert_or_assign(key, value);
        }
        return it->second;
    }

    RelId merge_relationship(NodeId src, RelType type, NodeId dst)
    {
        const Node& s = node(src);
        const Node& d = node(dst);
        const Endpoints legal = schema_endpoints(type);
        if (s.label != legal.src || d.label != legal.dst) {
            throw GraphError(GraphError::Kind::SchemaViolation,
                             std::string(to_string(type)) + " must connect " + std::string(to_string(legal.src)) +
                                 " to " + std::string(to_string(legal.dst)) + ", got " +
                                 std::string(to_string(s.label)) + " to " + std::string(to_string(d.label)));
        }
        auto key = std::tuple{src.value, static_cast<int>(type), dst.value};
        if (auto it = rel_index_.find(key); it != rel_index_.end())
            return it->second;

        RelId id{rels_.size()};
        rels_.push_back(Relationship{id, src, type, dst, {}});
        out_[src.value].push_back(id);
        in_[dst.value].push_back(id);
        rel_index_.emplace(key, id);
        return id;
    }

    std::optional<NodeId> find_node(Label label, std::string_view name) const
    {
        auto it = index_.find(std::pair<Label, std::string_view>{label, name});
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    const Node& node(NodeId id) const
    {
        if (id.value >= nodes_.size())
            throw GraphError(GraphError::Kind::UnknownNode, "unknown node id " + std::to_string(id.value));
        return nodes_[id.value];
    }

    const Relationship& relationship(RelId id) const
    {
        if (id.value >= rels_.size())
            throw GraphError(GraphError::Kind::UnknownRelationship,
                             "unknown relationship id " + std::to_string(id.value));
        return rels_[id.value];
    }

    void set_property(NodeId id, std::string_view key, PropertyValue value)
    {
        if (key == "name")
            throw GraphError(GraphError::Kind::InvalidProperty, "'name' is the node key and cannot be reassigned");
        node(id);
        check_value(key, value);
        nodes_[id.value].properties.insert_or_assign(std::string(key), std::move(value));
    }

    void erase_property(NodeId id, std::string_view key)
    {
        if (key == "name")
            throw GraphError(GraphError::Kind::InvalidProperty, "'name' cannot be removed");
        node(id);
        auto& props = nodes_[id.value].properties;
        if (auto it = props.find(key); it != props.end())
            props.erase(it);
    }

    std::vector<const Node*> nodes_by_label(Label label) const
    {
        std::vector<const Node*> out;
        for (NodeId id : by_label_[static_cast<std::size_t>(label)])
            out.push_back(&nodes_[id.value]);
        return out;
    }

    /// Relationships touching `id`, optionally restricted to one type. With
    /// Direction::Both a self-loop is reported once.
    std::vector<Adjacent> neighbors(NodeId id, Direction direction,
                                    std::optional<RelType> type = std::nullopt) const
    {
        node(id);
        std::vector<Adjacent> out;
        if (direction != Direction::In) {
            for (RelId r : out_[id.value]) {
                const Relationship& rel = rels_[r.value];
                if (!type || rel.type == *type)
                    out.push_back({&rel, &nodes_[rel.dst.value]});
            }
        }
        if (direction != Direction::Out) {
            for (RelId r : in_[id.value]) {
                const Relationship& rel = rels_[r.value];
                if (direction == Direction::Both && rel.src == rel.dst)
                    continue;
                if (!type || rel.type == *type)
                    out.push_back({&rel, &nodes_[rel.src.value]});
            }
        }
        return out;
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Relationship>& relationships() const { return rels_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t relationship_count() const { return rels_.size(); }

    /// Describes every violated structural invariant; empty when consistent.
    std::vector<std::string> check_integrity() const
    {
        std::vector<std::string> problems;
        if (index_.size() != nodes_.size())
            problems.push_back("index size differs from node count");
        for (const Node& n : nodes_) {
            const auto* name = n.property("name");
            if (!name || !std::holds_alternative<std::string>(*name) || std::get<std::string>(*name).empty()) {
                problems.push_back("node " + std::to_string(n.id.value) + " has no name");
                continue;
            }
            auto it = index_.find(std::pair<Label, std::string_view>{n.label, n.name()});
            if (it == index_.end() || it->second != n.id)
                problems.push_back("index does not resolve node " + std::to_string(n.id.value));
        }
        std::size_t adjacency_total = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            adjacency_total += out_[i].size() + in_[i].size();
        if (adjacency_total != 2 * rels_.size())
            problems.push_back("adjacency lists disagree with relationship collection");
        for (const Relationship& r : rels_) {
            if (r.src.value >= nodes_.size() || r.dst.value >= nodes_.size()) {
                problems.push_back("relationship " + std::to_string(r.id.value) + " has a dangling endpoint");
                continue;
            }
            const Endpoints legal = schema_endpoints(r.type);
            if (nodes_[r.src.value].label != legal.src || nodes_[r.dst.value].label != legal.dst)
                problems.push_back("relationship " + std::to_string(r.id.value) + " violates the schema");
            const auto& outs = out_[r.src.value];
            const auto& ins = in_[r.dst.value];
            if (std::find(outs.begin(), outs.end(), r.id) == outs.end() ||
                std::find(ins.begin(), ins.end(), r.id) == ins.end())
                problems.push_back("relationship " + std::to_string(r.id.value) + " missing from adjacency");
        }
        if (rel_index_.size() != rels_.size())
            problems.push_back("duplicate relationship triple");
        return problems;
    }

private:
    static void check_value(std::string_view key, const PropertyValue& value)
    {
        if (const auto* d = std::get_if<double>(&value); d && !std::isfinite(*d))
            throw GraphError(GraphError::Kind::InvalidProperty,
                             "property '" + std::string(key) + "' must be a finite number");
    }

    std::vector<Node> nodes_;
    std::vector<Relationship> rels_;
    std::vector<std::vector<RelId>> out_;
    std::vector<std::vector<RelId>> in_;
    std::array<std::vector<NodeId>, all_labels.size()> by_label_;
    std::map<std::pair<Label, std::string>, NodeId, detail::NodeKeyLess> index_;
    std::map<std::tuple<std::uint64_t, int, std::uint64_t>, RelId> rel_index_;
};

} // namespace sciento::graph

#endif
