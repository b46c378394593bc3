#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace biphoton::app {

// 17 significant digits: doubles round-trip exactly.
std::string format_number(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    void add_row(std::vector<std::string> cells);
    std::size_t column_index(const std::string& name) const;
};

void write_csv(std::ostream& out, const std::vector<std::string>& comments, const Table& table);

struct Heatmap {
    std::vector<double> x;  // column coordinates
    std::vector<double> y;  // row coordinates
    std::vector<double> z;  // z[i * y.size() + j] at (x[i], y[j])
    std::string x_label, y_label, title;
    bool log_scale = false;
};

// Minimal SVG: one rect per cell, a blue–yellow ramp and a labelled colour bar.
void write_svg_heatmap(std::ostream& out, const Heatmap& map);

}  // namespace biphoton::app
