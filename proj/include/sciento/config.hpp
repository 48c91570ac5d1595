#ifndef SCIENTO_CONFIG_HPP
#define SCIENTO_CONFIG_HPP

#include <filesystem>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>

#include "sciento/chart_render.hpp"
#include "sciento/indicators.hpp"
#include "sciento/scoring.hpp"

namespace sciento {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WorkspaceConfig {
    std::filesystem::path snapshot_dir = ".";
    double threshold = indicators::default_threshold;
    scoring::Elasticities elasticities;
    chart::SvgSize chart_size;

    void validate() const
    {
        try {
            check_threshold(threshold);
            elasticities.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (chart_size.width <= 0 || chart_size.height <= 0)
            throw ConfigError("chart size must be positive");
    }
};

namespace detail {

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double number_or_throw(const std::string& text, const std::string& what)
{
    auto v = parse_decimal(text);
    if (!v)
        throw ConfigError(what + ": '" + text + "' is not a number");
    return *v;
}

} // namespace detail

/// Parses `[a1, a2, a3, a4]` (brackets optional) into four elasticities.
inline std::array<double, 4> parse_alpha(std::string_view text)
{
    std::string s = detail::trim(text);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']')
            throw ConfigError("alpha: missing ']'");
        s = s.substr(1, s.size() - 2);
    }
    std::array<double, 4> alpha{};
    std::size_t count = 0;
    std::size_t start = 0;
    for (;;) {
        auto comma = s.find(',', start);
        std::string item = detail::trim(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos
                                                                                                   : comma - start));
        if (count == alpha.size())
            throw ConfigError("alpha: expected exactly 4 values");
        alpha[count++] = detail::number_or_throw(item, "alpha");
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (count != alpha.size())
        throw ConfigError("alpha: expected exactly 4 values");
    return alpha;
}

/// Applies one `key = value` setting. Unknown keys are rejected.
inline void apply_setting(WorkspaceConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "threshold")
        cfg.threshold = detail::number_or_throw(value, key);
    else if (key == "A")
        cfg.elasticities.scale = detail::number_or_throw(value, key);
    else if (key == "alpha")
        cfg.elasticities.alpha = parse_alpha(value);
    else if (key == "chart_width")
        cfg.chart_size.width = static_cast<int>(detail::number_or_throw(value, key));
    else if (key == "chart_height")
        cfg.chart_size.height = static_cast<int>(detail::number_or_throw(value, key));
    else
        throw ConfigError("unknown setting '" + key + "'");
}

/// Flat key-value text: `key = value` per line, `#` starts a comment.
inline void read_config(std::istream& in, WorkspaceConfig& cfg)
{
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::string trimmed = detail::trim(line);
        if (trimmed.empty())
            continue;
        auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
        try {
            apply_setting(cfg, detail::trim(std::string_view(trimmed).substr(0, eq)),
                          detail::trim(std::string_view(trimmed).substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(number) + ": " + e.what());
        }
    }
}

inline void read_config(const std::filesystem::path& path, WorkspaceConfig& cfg)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config " + path.string());
    read_config(in, cfg);
}

} // namespace sciento

#endif
