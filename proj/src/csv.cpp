#include "zenosim/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zenosim/errors.hpp"

namespace zenosim::csv {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string render(const std::string& tool_line, const std::string& config_snapshot,
                   const Table& table) {
    std::ostringstream out;
    out << "# " << tool_line << "\n";
    out << "# config-begin\n";
    std::istringstream cfg(config_snapshot);
    std::string line;
    while (std::getline(cfg, line)) {
        out << "#   " << line << "\n";
    }
    out << "# config-end\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_number(row[i]);
        }
        out << "\n";
    }
    for (const auto& f : table.footer) {
        out << "# " << f << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open output file: " + path);
    }
    out << content;
    if (!out) {
        throw Error("failed writing output file: " + path);
    }
}

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<Series>& series,
                            const std::string& embedded_csv) {
    const int width = 720;
    const int height = 480;
    const int ml = 70, mr = 20, mt = 40, mb = 50;
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series) {
        for (double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (!(x_hi > x_lo)) {
        x_hi = x_lo + 1.0;
    }
    if (!(y_hi > y_lo)) {
        y_hi = y_lo + 1.0;
    }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    auto px = [&](double x) {
        return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr);
    };
    auto py = [&](double y) {
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
    };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    out << "<metadata><![CDATA[\n" << embedded_csv << "]]></metadata>\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
        << width - ml - mr << "\" height=\"" << height - mt - mb
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title
        << "</text>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << height / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"13\" transform=\"rotate(-90 16 " << height / 2 << ")\">"
        << y_label << "</text>\n";

    // axis ticks: 5 per side
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 4.0;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << height - mb
            << "\" x2=\"" << px(xv) << "\" y2=\"" << height - mb + 5
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << format_number(xv) << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\""
            << ml << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << format_number(yv) << "</text>\n";
    }

    int color_idx = 0;
    for (const auto& s : series) {
        const char* color = colors[color_idx % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            out << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << width - mr - 8 << "\" y=\""
            << mt + 16 + 16 * color_idx
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"12\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
        ++color_idx;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace zenosim::csv
