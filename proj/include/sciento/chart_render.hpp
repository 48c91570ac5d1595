#ifndef SCIENTO_CHART_RENDER_HPP
#define SCIENTO_CHART_RENDER_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sciento/chart.hpp"
#include "sciento/format.hpp"

namespace sciento::chart {

enum class Format { Csv, Json, Svg };

struct SvgSize {
    int width = 800;
    int height = 600;
};

namespace detail {

inline std::string x_text(const XValue& x)
{
    if (const auto* s = std::get_if<std::string>(&x))
        return *s;
    return format_decimal(std::get<double>(x));
}

inline nlohmann::ordered_json number_json(double v)
{
    if (std::trunc(v) == v && std::fabs(v) < 9.0e15)
        return static_cast<std::int64_t>(v);
    return v;
}

inline std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string fixed(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    return s == "-0.00" ? "0.00" : s;
}

inline std::string short_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline constexpr std::array<const char*, 10> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                     "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

inline const char* color(std::size_t i)
{
    return palette[i % palette.size()];
}

inline void svg_open(std::ostringstream& os, const ChartSpec& c, SvgSize size)
{
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size.width << "\" height=\"" << size.height
       << "\" viewBox=\"0 0 " << size.width << ' ' << size.height << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << size.width << "\" height=\"" << size.height
       << "\" style=\"fill:#ffffff;stroke:none\"/>\n"
       << "<text x=\"" << fixed(size.width / 2.0) << "\" y=\"28.00\" style=\"font-family:sans-serif;font-size:18px;"
       << "text-anchor:middle;fill:#222222\">" << xml_escape(c.title) << "</text>\n";
}

inline void legend_entry(std::ostringstream& os, double x, double y, const char* fill, const std::string& text)
{
    os << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y - 10) << "\" width=\"12.00\" height=\"12.00\" style=\"fill:"
       << fill << ";stroke:none\"/>\n"
       << "<text x=\"" << fixed(x + 18) << "\" y=\"" << fixed(y) << "\" style=\"font-family:sans-serif;font-size:12px;"
       << "fill:#222222\">" << xml_escape(text) << "</text>\n";
}

inline std::string pie_svg(const ChartSpec& c, SvgSize size)
{
    const auto slices = pie_slices(c);
    std::ostringstream os;
    svg_open(os, c, size);

    const double legend_width = 200;
    const double cx = (size.width - legend_width) / 2.0;
    const double cy = size.height / 2.0 + 15;
    const double r = std::max(10.0, std::min(size.width - legend_width, size.height - 60.0) * 0.42);
    const double pi = std::acos(-1.0);
    auto at = [&](double degrees) {
        const double rad = degrees * pi / 180.0;
        return std::pair{cx + r * std::sin(rad), cy - r * std::cos(rad)};
    };

    for (std::size_t i = 0; i < slices.size(); ++i) {
        const auto& s = slices[i];
        if (s.sweep_degrees <= 0)
            continue;
        os << "<path d=\"";
        if (s.sweep_degrees >= 360.0 - 1e-9) {
            os << "M " << fixed(cx) << ' ' << fixed(cy - r) << " A " << fixed(r) << ' ' << fixed(r) << " 0 1 1 "
               << fixed(cx) << ' ' << fixed(cy + r) << " A " << fixed(r) << ' ' << fixed(r) << " 0 1 1 " << fixed(cx)
               << ' ' << fixed(cy - r) << " Z";
        } else {
            auto [x0, y0] = at(s.start_degrees);
            auto [x1, y1] = at(s.start_degrees + s.sweep_degrees);
            const int large = s.sweep_degrees > 180.0 ? 1 : 0;
            os << "M " << fixed(cx) << ' ' << fixed(cy) << " L " << fixed(x0) << ' ' << fixed(y0) << " A " << fixed(r)
               << ' ' << fixed(r) << " 0 " << large << " 1 " << fixed(x1) << ' ' << fixed(y1) << " Z";
        }
        os << "\" style=\"fill:" << color(i) << ";stroke:#ffffff;stroke-width:1\"/>\n";
    }

    const double lx = size.width - legend_width + 10;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const auto& s = slices[i];
        char pct[32];
        std::snprintf(pct, sizeof pct, "%.1f%%", s.fraction * 100.0);
        legend_entry(os, lx, 70.0 + 20.0 * static_cast<double>(i), color(i),
                     s.label + " (" + short_number(s.value) + ", " + pct + ")");
    }
    os << "</svg>\n";
    return os.str();
}

inline std::string xy_svg(const ChartSpec& c, SvgSize size)
{
    std::ostringstream os;
    svg_open(os, c, size);

    const double left = 70, right = 170, top = 50, bottom = 90;
    const double plot_w = std::max(10.0, size.width - left - right);
    const double plot_h = std::max(10.0, size.height - top - bottom);

    bool numeric = true;
    std::vector<std::string> categories;
    double xmin = 0, xmax = 0, ymax = 0;
    bool any = false;
    for (const auto& s : c.series) {
        for (const auto& p : s.points) {
            ymax = std::max(ymax, p.y);
            if (const auto* v = std::get_if<double>(&p.x)) {
                xmin = any ? std::min(xmin, *v) : *v;
                xmax = any ? std::max(xmax, *v) : *v;
                any = true;
            } else {
                numeric = false;
            }
            const std::string t = x_text(p.x);
            if (std::find(categories.begin(), categories.end(), t) == categories.end())
                categories.push_back(t);
        }
    }
    if (ymax <= 0)
        ymax = 1;
    if (numeric && xmin == xmax) {
        xmin -= 1;
        xmax += 1;
    }

    auto px = [&](const XValue& x) {
        if (numeric)
            return left + (std::get<double>(x) - xmin) / (xmax - xmin) * plot_w;
        const auto idx = std::find(categories.begin(), categories.end(), x_text(x)) - categories.begin();
        const double n = static_cast<double>(std::max<std::size_t>(categories.size(), 2) - 1);
        return left + static_cast<double>(idx) / n * plot_w;
    };
    auto py = [&](double y) { return top + plot_h - y / ymax * plot_h; };

    // axes and y grid
    os << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + plot_h) << "\" x2=\"" << fixed(left + plot_w)
       << "\" y2=\"" << fixed(top + plot_h) << "\" style=\"stroke:#333333;stroke-width:1\"/>\n"
       << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left) << "\" y2=\""
       << fixed(top + plot_h) << "\" style=\"stroke:#333333;stroke-width:1\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double v = ymax * i / 5.0;
        os << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(py(v)) << "\" x2=\"" << fixed(left + plot_w)
           << "\" y2=\"" << fixed(py(v)) << "\" style=\"stroke:#dddddd;stroke-width:1\"/>\n"
           << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py(v) + 4) << "\" style=\"font-family:sans-serif;"
           << "font-size:11px;text-anchor:end;fill:#222222\">" << short_number(v) << "</text>\n";
    }

    // x tick labels: every category, or every distinct numeric x when few
    std::vector<XValue> ticks;
    if (numeric) {
        std::vector<double> xs;
        for (const auto& s : c.series) {
            for (const auto& p : s.points)
                xs.push_back(std::get<double>(p.x));
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        if (xs.size() > 12) {
            xs.clear();
            for (int i = 0; i <= 6; ++i)
                xs.push_back(xmin + (xmax - xmin) * i / 6.0);
        }
        for (double x : xs)
            ticks.emplace_back(x);
    } else if (categories.size() <= 30) {
        for (const auto& cat : categories)
            ticks.emplace_back(cat);
    }
    for (const auto& t : ticks) {
        std::string label = numeric ? short_number(std::get<double>(t)) : std::get<std::string>(t);
        if (label.size() > 14)
            label = label.substr(0, 12) + "..";
        const double x = px(t);
        const double y = top + plot_h + 14;
        os << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" style=\"font-family:sans-serif;font-size:11px;"
           << "text-anchor:" << (numeric ? "middle" : "end") << ";fill:#222222\"";
        if (!numeric)
            os << " transform=\"rotate(-40 " << fixed(x) << ' ' << fixed(y) << ")\"";
        os << '>' << xml_escape(label) << "</text>\n";
    }

    for (std::size_t i = 0; i < c.series.size(); ++i) {
        const auto& s = c.series[i];
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : s.points)
            pts.emplace_back(px(p.x), py(p.y));
        if (numeric)
            std::sort(pts.begin(), pts.end());
        if (pts.empty())
            continue;
        std::string coords;
        for (const auto& [x, y] : pts)
            coords += (coords.empty() ? "" : " ") + fixed(x) + "," + fixed(y);
        if (c.kind == ChartKind::Area) {
            os << "<polygon points=\"" << fixed(pts.front().first) << ',' << fixed(top + plot_h) << ' ' << coords << ' '
               << fixed(pts.back().first) << ',' << fixed(top + plot_h) << "\" style=\"fill:" << color(i)
               << ";fill-opacity:0.35;stroke:none\"/>\n";
        }
        os << "<polyline points=\"" << coords << "\" style=\"fill:none;stroke:" << color(i) << ";stroke-width:2\"/>\n";
        if (c.kind == ChartKind::Line) {
            for (const auto& [x, y] : pts)
                os << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y) << "\" r=\"3.00\" style=\"fill:" << color(i)
                   << ";stroke:none\"/>\n";
        }
    }

    for (std::size_t i = 0; i < c.series.size(); ++i)
        legend_entry(os, size.width - right + 15, top + 10 + 20.0 * static_cast<double>(i), color(i),
                     c.series[i].label);
    os << "</svg>\n";
    return os.str();
}

} // namespace detail

/// Long form: one `series,x,y` row per point.
inline std::string to_csv(const ChartSpec& c)
{
    validate(c);
    std::ostringstream os;
    csv::write_row(os, {"series", "x", "y"});
    for (const auto& s : c.series) {
        for (const auto& p : s.points)
            csv::write_row(os, {s.label, detail::x_text(p.x), format_decimal(p.y)});
    }
    return os.str();
}

inline std::string to_json(const ChartSpec& c)
{
    validate(c);
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(c.kind));
    j["title"] = c.title;
    j["series"] = nlohmann::ordered_json::array();
    for (const auto& s : c.series) {
        nlohmann::ordered_json series;
        series["label"] = s.label;
        series["points"] = nlohmann::ordered_json::array();
        for (const auto& p : s.points) {
            nlohmann::ordered_json point;
            if (const auto* text = std::get_if<std::string>(&p.x))
                point["x"] = *text;
            else
                point["x"] = detail::number_json(std::get<double>(p.x));
            point["y"] = detail::number_json(p.y);
            series["points"].push_back(std::move(point));
        }
        j["series"].push_back(std::move(series));
    }
    return j.dump(2) + "\n";
}

/// Self-contained static SVG: inline styles, no scripts, fixed number
/// formatting, so identical charts produce identical bytes.
inline std::string to_svg(const ChartSpec& c, SvgSize size = {})
{
    validate(c);
    if (size.width <= 0 || size.height <= 0)
        throw ChartError("chart size must be positive");
    return c.kind == ChartKind::Pie ? detail::pie_svg(c, size) : detail::xy_svg(c, size);
}

inline std::string render_to_string(const ChartSpec& c, Format format, SvgSize size = {})
{
    switch (format) {
    case Format::Csv: return to_csv(c);
    case Format::Json: return to_json(c);
    case Format::Svg: return to_svg(c, size);
    }
    return {};
}

inline void render(const ChartSpec& c, Format format, const std::filesystem::path& out, SvgSize size = {})
{
    const std::string bytes = render_to_string(c, format, size);
    std::ofstream os(out, std::ios::binary | std::ios::trunc);
    if (!os)
        throw ChartError("cannot write " + out.string());
    os << bytes;
    if (!os.flush())
        throw ChartError("cannot write " + out.string());
}

} // namespace sciento::chart

#endif
