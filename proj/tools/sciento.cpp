// sciento: scholarly-article graph, indicators and journal internationality.
//
// Exit codes: 0 ok, 1 partial success (bad input records), 2 environment
// (I/O, missing or corrupt snapshot, bad config, locked workspace), 3 user
// error (query syntax, bad flag values, chart that cannot be drawn).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "sciento/sciento.hpp"

namespace fs = std::filesystem;
using namespace sciento;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_partial = 1;
constexpr int exit_environment = 2;
constexpr int exit_user = 3;

constexpr const char* config_file = "sciento.conf";
constexpr const char* lock_file = ".lock";

struct EnvironmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    std::string workspace;
    std::string config;
    std::optional<double> threshold;
};

class WorkspaceLock {
public:
    explicit WorkspaceLock(const fs::path& dir) : path_(dir / lock_file)
    {
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0)
            throw EnvironmentError("workspace is locked (" + path_.string() + " exists)");
    }
    WorkspaceLock(const WorkspaceLock&) = delete;
    WorkspaceLock& operator=(const WorkspaceLock&) = delete;
    ~WorkspaceLock()
    {
        ::close(fd_);
        std::error_code ec;
        fs::remove(path_, ec);
    }

private:
    fs::path path_;
    int fd_ = -1;
};

WorkspaceConfig load_config(const GlobalOptions& opts)
{
    WorkspaceConfig cfg;
    cfg.snapshot_dir = opts.workspace;
    try {
        if (!opts.config.empty())
            read_config(opts.config, cfg);
        else if (fs::exists(cfg.snapshot_dir / config_file))
            read_config(cfg.snapshot_dir / config_file, cfg);
        cfg.validate();
    } catch (const ConfigError& e) {
        throw EnvironmentError(e.what());
    }
    if (opts.threshold) {
        try {
            check_threshold(*opts.threshold);
        } catch (const std::invalid_argument& e) {
            throw UserError(std::string("--threshold: ") + e.what());
        }
        cfg.threshold = *opts.threshold;
    }
    return cfg;
}

graph::PropertyGraph open_snapshot(const WorkspaceConfig& cfg)
{
    if (!graph::snapshot_exists(cfg.snapshot_dir))
        throw EnvironmentError("no snapshot in workspace " + cfg.snapshot_dir.string());
    try {
        return graph::read_snapshot(cfg.snapshot_dir);
    } catch (const graph::SnapshotError& e) {
        throw EnvironmentError(e.what());
    }
}

/// Writes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& bytes)
{
    if (out_path.empty()) {
        std::cout << bytes;
        return;
    }
    std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
    if (!os || !(os << bytes) || !os.flush())
        throw EnvironmentError("cannot write " + out_path);
}

int cmd_ingest(const GlobalOptions& opts, const std::vector<std::string>& inputs)
{
    const WorkspaceConfig cfg = load_config(opts);
    fs::create_directories(cfg.snapshot_dir);
    WorkspaceLock lock(cfg.snapshot_dir);

    graph::PropertyGraph g;
    if (graph::snapshot_exists(cfg.snapshot_dir))
        g = open_snapshot(cfg);

    std::vector<ingest::RawArticleRecord> records;
    std::size_t error_count = 0;
    for (const auto& path : inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw EnvironmentError("cannot read " + path);
        auto parsed = ingest::parse_records(in);
        if (inputs.size() > 1 && !parsed.errors.empty())
            std::cerr << path << ":\n";
        for (const auto& e : parsed.errors)
            std::cerr << "line " << e.line << ": " << e.cause << '\n';
        error_count += parsed.errors.size();
        std::move(parsed.records.begin(), parsed.records.end(), std::back_inserter(records));
    }

    const auto load = graph::load_records(g, records);
    const auto annotation = indicators::annotate_graph(g, records, cfg.threshold);
    try {
        graph::write_snapshot(g, cfg.snapshot_dir);
    } catch (const std::exception& e) {
        throw EnvironmentError(e.what());
    }

    std::cout << records.size() << " records, " << error_count << " errors\n"
              << "nodes: " << load.nodes_created << " created, " << g.node_count() << " total\n"
              << "relationships: " << load.relationships_created << " created, " << g.relationship_count()
              << " total\n"
              << "annotated: " << annotation.articles_annotated << " articles, " << annotation.journals_annotated
              << " journals\n";
    for (const auto& a : load.anomalies)
        std::cerr << "note: " << a << '\n';
    for (const auto& j : annotation.journals_missing_snip)
        std::cerr << "note: journal '" << j << "' has no SNIP; x3 omitted\n";
    return error_count ? exit_partial : exit_ok;
}

int cmd_query(const GlobalOptions& opts, std::string text, const std::string& format, const std::string& out)
{
    const WorkspaceConfig cfg = load_config(opts);
    if (text.empty())
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());

    query::Query q;
    try {
        q = query::compile(text);
    } catch (const query::QueryError& e) {
        std::cerr << query::format_diagnostic(text, e);
        return exit_user;
    }
    const auto g = open_snapshot(cfg);
    const auto table = query::execute_query(g, q);
    std::ostringstream os;
    if (format == "json")
        query::write_json(table, os);
    else
        query::write_csv(table, os);
    emit(out, os.str());
    return exit_ok;
}

int cmd_indicators(const GlobalOptions& opts, const std::string& out)
{
    const WorkspaceConfig cfg = load_config(opts);
    const auto g = open_snapshot(cfg);
    std::ostringstream os;
    indicators::write_indicators_csv(indicators::journal_indicators(g), os);
    emit(out, os.str());
    return exit_ok;
}

int cmd_score(const GlobalOptions& opts, std::optional<double> scale, const std::string& alpha,
              const std::string& out)
{
    WorkspaceConfig cfg = load_config(opts);
    if (scale)
        cfg.elasticities.scale = *scale;
    if (!alpha.empty()) {
        try {
            cfg.elasticities.alpha = parse_alpha(alpha);
        } catch (const ConfigError& e) {
            throw UserError(std::string("--alpha: ") + e.what());
        }
    }
    try {
        cfg.elasticities.validate();
    } catch (const std::invalid_argument& e) {
        throw UserError(e.what());
    }

    const auto g = open_snapshot(cfg);
    const auto ranking = scoring::rank_journals(g, cfg.elasticities);
    for (const auto& j : ranking.excluded)
        std::cerr << "excluded: journal '" << j << "' lacks one of x1..x4\n";
    std::ostringstream os;
    scoring::write_ranking_csv(ranking, os);
    emit(out, os.str());
    return exit_ok;
}

struct ChartOptions {
    std::string kind;
    std::string journals;
    std::string format = "svg";
    std::string out;
    std::optional<int> width;
    std::optional<int> height;
    std::string count_mode = "articles";
};

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = clean_text(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

int cmd_chart(const GlobalOptions& opts, const ChartOptions& co)
{
    const WorkspaceConfig cfg = load_config(opts);
    chart::SvgSize size = cfg.chart_size;
    if (co.width)
        size.width = *co.width;
    if (co.height)
        size.height = *co.height;

    const auto g = open_snapshot(cfg);
    chart::ChartBuild build;
    try {
        if (co.kind == "line")
            build = chart::line_publications_per_year(g, split_list(co.journals));
        else if (co.kind == "area")
            build = chart::area_total_vs_self(g);
        else
            build = chart::pie_publications_per_country(
                g, co.count_mode == "authors" ? chart::CountMode::Authors : chart::CountMode::Articles);
    } catch (const chart::ChartError& e) {
        throw UserError(e.what());
    }
    for (const auto& n : build.notes)
        std::cerr << "note: " << n << '\n';

    const chart::Format format = co.format == "csv" ? chart::Format::Csv
                                 : co.format == "json" ? chart::Format::Json
                                                       : chart::Format::Svg;
    std::string bytes;
    try {
        bytes = chart::render_to_string(build.chart, format, size);
    } catch (const chart::ChartError& e) {
        throw UserError(e.what());
    }
    emit(co.out, bytes);
    return exit_ok;
}

int cmd_stats(const GlobalOptions& opts)
{
    const WorkspaceConfig cfg = load_config(opts);
    const auto g = open_snapshot(cfg);
    std::map<std::string, std::size_t> rel_counts;
    for (const auto& r : g.relationships())
        ++rel_counts[std::string(graph::to_string(r.type))];

    std::ostringstream os;
    csv::write_row(os, {"kind", "name", "count"});
    for (graph::Label l : graph::all_labels)
        csv::write_row(os, {"node", std::string(graph::to_string(l)), std::to_string(g.nodes_by_label(l).size())});
    for (graph::RelType t : graph::all_rel_types) {
        const std::string name(graph::to_string(t));
        csv::write_row(os, {"relationship", name, std::to_string(rel_counts[name])});
    }
    emit("", os.str());
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Scholarly-article property graph, scholastic indicators and journal internationality"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sciento 0.1.0");

    GlobalOptions opts;
    const char* env_ws = std::getenv("SCIENTO_WORKSPACE");
    opts.workspace = env_ws && *env_ws ? env_ws : ".";
    app.add_option("-w,--workspace", opts.workspace, "Workspace directory (default: $SCIENTO_WORKSPACE or .)");
    app.add_option("-c,--config", opts.config, "Config file (default: <workspace>/sciento.conf when present)");
    app.add_option("--threshold", opts.threshold, "Name-match cosine threshold in (0,1]");

    auto* ingest_cmd = app.add_subcommand("ingest", "Parse JSON-lines files, load and annotate the graph");
    std::vector<std::string> inputs;
    ingest_cmd->add_option("files", inputs, "Input .jsonl files")->required();

    auto* query_cmd = app.add_subcommand("query", "Run a MATCH ... RETURN query");
    std::string query_text;
    std::string query_format = "csv";
    std::string query_out;
    query_cmd->add_option("-q,--query,text", query_text, "Query text (read from stdin when absent)");
    query_cmd->add_option("--format", query_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    query_cmd->add_option("-o,--out", query_out, "Output file (default: stdout)");

    auto* indicators_cmd = app.add_subcommand("indicators", "Per-journal indicator table");
    std::string indicators_out;
    indicators_cmd->add_option("-o,--out", indicators_out, "Output file (default: stdout)");

    auto* score_cmd = app.add_subcommand("score", "Rank journals by Cobb-Douglas internationality");
    std::optional<double> scale;
    std::string alpha;
    std::string score_out;
    score_cmd->add_option("-A,--A", scale, "Scale factor A");
    score_cmd->add_option("--alpha", alpha, "Elasticities a1,a2,a3,a4");
    score_cmd->add_option("-o,--out", score_out, "Output file (default: stdout)");

    auto* chart_cmd = app.add_subcommand("chart", "Export a line, area or pie chart");
    ChartOptions chart_opts;
    chart_cmd->add_option("--kind", chart_opts.kind, "Chart kind")
        ->required()
        ->check(CLI::IsMember({"line", "area", "pie"}));
    chart_cmd->add_option("--journals", chart_opts.journals, "Comma-separated journal names (line charts)");
    chart_cmd->add_option("--format", chart_opts.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
    chart_cmd->add_option("-o,--out", chart_opts.out, "Output file (default: stdout)");
    chart_cmd->add_option("--width", chart_opts.width, "SVG width")->check(CLI::PositiveNumber);
    chart_cmd->add_option("--height", chart_opts.height, "SVG height")->check(CLI::PositiveNumber);
    chart_cmd->add_option("--count-mode", chart_opts.count_mode, "Pie counting: articles or authors")
        ->check(CLI::IsMember({"articles", "authors"}));

    auto* stats_cmd = app.add_subcommand("stats", "Node and relationship counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_user;
    }

    try {
        if (*ingest_cmd)
            return cmd_ingest(opts, inputs);
        if (*query_cmd)
            return cmd_query(opts, query_text, query_format, query_out);
        if (*indicators_cmd)
            return cmd_indicators(opts, indicators_out);
        if (*score_cmd)
            return cmd_score(opts, scale, alpha, score_out);
        if (*chart_cmd)
            return cmd_chart(opts, chart_opts);
        if (*stats_cmd)
            return cmd_stats(opts);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_user;
    } catch (const EnvironmentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_environment;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_environment;
    }
    return exit_user;
}
