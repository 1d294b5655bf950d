#pragma once

#include <string>
#include <vector>

namespace zenosim::csv {

// 12 significant digits, the project-wide CSV number format.
std::string format_number(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> footer; // emitted as trailing '# ' lines
};

// '#'-prefixed metadata header embedding the config snapshot, fixed column
// order, then one comma-separated row per entry.
std::string render(const std::string& tool_line, const std::string& config_snapshot,
                   const Table& table);

void write_file(const std::string& path, const std::string& content);

// Minimal standalone SVG line plot with the CSV data embedded in a metadata
// block; series are drawn as polylines over a framed axis box.
struct Series {
    std::string label;
    std::vector<double> x, y;
};
std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<Series>& series,
                            const std::string& embedded_csv);

} // namespace zenosim::csv
