#include "output.hpp"

#include "params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace biphoton::app {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0 ? 0.0 : v);
    return buf;
}

void Table::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(std::move(cells));
}

void Table::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size()) throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(cells));
}

std::size_t Table::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw UsageError("no column named '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

void write_csv(std::ostream& out, const std::vector<std::string>& comments, const Table& table) {
    for (const auto& c : comments) out << "# " << c << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

namespace {

std::string ramp(double t) {
    // Dark blue → teal → yellow.
    t = std::clamp(t, 0.0, 1.0);
    const double r = 255 * std::clamp(1.6 * t - 0.6, 0.0, 1.0);
    const double g = 255 * std::clamp(0.15 + 0.85 * t, 0.0, 1.0);
    const double b = 255 * std::clamp(0.55 + 0.6 * t - 1.1 * t * t, 0.0, 1.0);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(r), static_cast<int>(g), static_cast<int>(b));
    return buf;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

void write_svg_heatmap(std::ostream& out, const Heatmap& m) {
    const std::size_t nx = m.x.size(), ny = m.y.size();
    if (nx == 0 || ny == 0 || m.z.size() != nx * ny) throw std::logic_error("heatmap shape mismatch");
    auto value = [&](double v) { return m.log_scale ? (v > 0 ? std::log10(v) : NAN) : v; };
    double lo = INFINITY, hi = -INFINITY;
    for (double v : m.z) {
        const double t = value(v);
        if (std::isfinite(t)) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!std::isfinite(lo)) lo = hi = 0;
    const double span = hi > lo ? hi - lo : 1.0;

    const double left = 70, top = 40, plot_w = 480, plot_h = 400, bar_x = left + plot_w + 20;
    const double cw = plot_w / static_cast<double>(nx), ch = plot_h / static_cast<double>(ny);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << bar_x + 110 << "\" height=\"" << top + plot_h + 60
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<text x=\"" << left << "\" y=\"24\" font-size=\"14\">" << m.title << "</text>\n";
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) {
            const double t = value(m.z[i * ny + j]);
            const std::string fill = std::isfinite(t) ? ramp((t - lo) / span) : "#808080";
            out << "<rect x=\"" << short_number(left + cw * static_cast<double>(i)) << "\" y=\""
                << short_number(top + plot_h - ch * static_cast<double>(j + 1)) << "\" width=\"" << short_number(cw + 0.5)
                << "\" height=\"" << short_number(ch + 0.5) << "\" fill=\"" << fill << "\"/>\n";
        }
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left << "\" y=\"" << top + plot_h + 18 << "\">" << short_number(m.x.front()) << "</text>\n";
    out << "<text x=\"" << left + plot_w << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"end\">"
        << short_number(m.x.back()) << "</text>\n";
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 40 << "\" text-anchor=\"middle\">"
        << m.x_label << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << top + plot_h << "\" text-anchor=\"end\">" << short_number(m.y.front())
        << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << short_number(m.y.back())
        << "</text>\n";
    out << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" transform=\"rotate(-90 20 " << top + plot_h / 2
        << ")\" text-anchor=\"middle\">" << m.y_label << "</text>\n";
    const int steps = 50;
    for (int k = 0; k < steps; ++k) {
        const double t = (k + 0.5) / steps;
        out << "<rect x=\"" << bar_x << "\" y=\"" << short_number(top + plot_h * (1 - (k + 1.0) / steps))
            << "\" width=\"20\" height=\"" << short_number(plot_h / steps + 0.5) << "\" fill=\"" << ramp(t) << "\"/>\n";
    }
    const std::string prefix = m.log_scale ? "1e" : "";
    out << "<text x=\"" << bar_x + 26 << "\" y=\"" << top + 10 << "\">" << prefix << short_number(hi) << "</text>\n";
    out << "<text x=\"" << bar_x + 26 << "\" y=\"" << top + plot_h << "\">" << prefix << short_number(lo) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace biphoton::app
