#ifndef SCIENTO_SNAPSHOT_HPP
#define SCIENTO_SNAPSHOT_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sciento/format.hpp"
#include "sciento/graph.hpp"

namespace sciento::graph {

inline constexpr const char* nodes_file = "nodes.csv";
inline constexpr const char* rels_file = "rels.csv";

class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline nlohmann::json to_json(const PropertyValue& v)
{
    return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

inline PropertyValue from_json(const nlohmann::json& j)
{
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_number_float())
        return j.get<double>();
    if (j.is_array()) {
        std::vector<std::string> items;
        for (const auto& item : j) {
            if (!item.is_string())
                throw SnapshotError("list properties must hold strings");
            items.push_back(item.get<std::string>());
        }
        return items;
    }
    throw SnapshotError("unsupported property value " + j.dump());
}

/// Properties other than `name`, as a compact JSON object with sorted keys.
inline std::string encode_properties(const PropertyMap& props)
{
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [key, value] : props) {
        if (key != "name")
            obj[key] = to_json(value);
    }
    return obj.dump();
}

inline void write_nodes_csv(const PropertyGraph& g, std::ostream& os)
{
    csv::write_row(os, {"id", "label", "name", "properties"});
    for (const Node& n : g.nodes()) {
        csv::write_row(os, {std::to_string(n.id.value), std::string(to_string(n.label)), n.name(),
                            encode_properties(n.properties)});
    }
}

inline void write_rels_csv(const PropertyGraph& g, std::ostream& os)
{
    csv::write_row(os, {"src", "type", "dst"});
    for (const Relationship& r : g.relationships())
        csv::write_row(os, {std::to_string(r.src.value), std::string(to_string(r.type)), std::to_string(r.dst.value)});
}

/// Rebuilds a graph from the two snapshot tables. File ids are remapped in
/// row order, so a snapshot written by write_nodes_csv reloads with the same ids.
inline PropertyGraph read_snapshot(std::istream& nodes_in, std::istream& rels_in)
{
    PropertyGraph g;
    std::map<std::string, NodeId> ids;

    std::vector<std::vector<std::string>> node_rows;
    std::vector<std::vector<std::string>> rel_rows;
    try {
        node_rows = csv::read_all(nodes_in);
        rel_rows = csv::read_all(rels_in);
    } catch (const csv::ParseError& e) {
        throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
    }

    if (node_rows.empty() || node_rows[0] != std::vector<std::string>{"id", "label", "name", "properties"})
        throw SnapshotError("corrupt snapshot: nodes.csv header mismatch");
    if (rel_rows.empty() || rel_rows[0] != std::vector<std::string>{"src", "type", "dst"})
        throw SnapshotError("corrupt snapshot: rels.csv header mismatch");

    for (std::size_t i = 1; i < node_rows.size(); ++i) {
        const auto& row = node_rows[i];
        const std::string where = "nodes.csv row " + std::to_string(i + 1) + ": ";
        if (row.size() != 4)
            throw SnapshotError("corrupt snapshot: " + where + "expected 4 fields");
        auto label = parse_label(row[1]);
        if (!label)
            throw SnapshotError("corrupt snapshot: " + where + "unknown label '" + row[1] + "'");
        auto props_json = nlohmann::json::parse(row[3], nullptr, false);
        if (props_json.is_discarded() || !props_json.is_object())
            throw SnapshotError("corrupt snapshot: " + where + "properties are not a JSON object");
        PropertyMap props;
        try {
            for (const auto& [key, value] : props_json.items())
                props.emplace(key, from_json(value));
        } catch (const SnapshotError& e) {
            throw SnapshotError("corrupt snapshot: " + where + e.what());
        }
        if (ids.contains(row[0]))
            throw SnapshotError("corrupt snapshot: " + where + "duplicate id " + row[0]);
        std::size_t before = g.node_count();
        NodeId id;
        try {
            id = g.merge_node(*label, row[2], props);
        } catch (const GraphError& e) {
            throw SnapshotError("corrupt snapshot: " + where + e.what());
        }
        if (g.node_count() == before)
            throw SnapshotError("corrupt snapshot: " + where + "duplicate node key");
        ids.emplace(row[0], id);
    }

    for (std::size_t i = 1; i < rel_rows.size(); ++i) {
        const auto& row = rel_rows[i];
        const std::string where = "rels.csv row " + std::to_string(i + 1) + ": ";
        if (row.size() != 3)
            throw SnapshotError("corrupt snapshot: " + where + "expected 3 fields");
        auto type = parse_rel_type(row[1]);
        auto src = ids.find(row[0]);
        auto dst = ids.find(row[2]);
        if (!type)
            throw SnapshotError("corrupt snapshot: " + where + "unknown type '" + row[1] + "'");
        if (src == ids.end() || dst == ids.end())
            throw SnapshotError("corrupt snapshot: " + where + "dangling endpoint");
        try {
            g.merge_relationship(src->second, *type, dst->second);
        } catch (const GraphError& e) {
            throw SnapshotError("corrupt snapshot: " + where + e.what());
        }
    }
    return g;
}

inline bool snapshot_exists(const std::filesystem::path& dir)
{
    return std::filesystem::exists(dir / nodes_file) && std::filesystem::exists(dir / rels_file);
}

inline PropertyGraph read_snapshot(const std::filesystem::path& dir)
{
    std::ifstream nodes_in(dir / nodes_file, std::ios::binary);
    std::ifstream rels_in(dir / rels_file, std::ios::binary);
    if (!nodes_in || !rels_in)
        throw SnapshotError("no snapshot in " + dir.string());
    return read_snapshot(nodes_in, rels_in);
}

/// Writes both tables next to each other, replacing any previous snapshot.
/// Each file is written to a temporary and renamed into place.
inline void write_snapshot(const PropertyGraph& g, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto write_one = [&](const char* file, auto&& writer) {
        const auto final_path = dir / file;
        auto tmp_path = final_path;
        tmp_path += ".tmp";
        {
            std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
            if (!os)
                throw SnapshotError("cannot write " + tmp_path.string());
            writer(g, os);
            if (!os.flush())
                throw SnapshotError("cannot write " + tmp_path.string());
        }
        std::filesystem::rename(tmp_path, final_path);
    };
    write_one(nodes_file, [](const PropertyGraph& graph, std::ostream& os) { write_nodes_csv(graph, os); });
    write_one(rels_file, [](const PropertyGraph& graph, std::ostream& os) { write_rels_csv(graph, os); });
}

} // namespace sciento::graph

#endif
