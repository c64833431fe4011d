// Copyright 2026 The ucclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucclab/constants.hpp"

namespace ucclab {

class CsvError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw CsvError("csv: missing column '" + name + "'");
    }

    /// Numeric column; empty cells become nullopt.
    std::vector<std::optional<double>> numbers(const std::string& name) const {
        const int col = column(name);
        std::vector<std::optional<double>> out;
        out.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string& cell = rows[r][static_cast<std::size_t>(col)];
            if (cell.empty()) {
                out.push_back(std::nullopt);
                continue;
            }
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument("trailing junk");
                out.push_back(v);
            } catch (const std::exception&) {
                throw CsvError("csv row " + std::to_string(r + 2) + ": non-numeric cell '" + cell +
                               "' in column " + name);
            }
        }
        return out;
    }
};

inline CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    int line_no = 0;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(s);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.push_back("");
        return cells;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (table.header.empty()) {
            table.header = split(line);
            continue;
        }
        auto cells = split(line);
        if (cells.size() != table.header.size())
            throw CsvError("csv row " + std::to_string(line_no) + ": expected " +
                           std::to_string(table.header.size()) + " cells, got " +
                           std::to_string(cells.size()));
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw CsvError("csv: empty input");
    return table;
}

inline CsvTable read_csv(const std::string& text) {
    std::istringstream is(text);
    return read_csv(is);
}

namespace plot {

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

struct Band {
    std::string color;
    std::vector<std::pair<double, std::pair<double, double>>> points; // x -> (lo, hi)
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::optional<Band> band;
};

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

/// 1-2-5 tick spacing aiming at roughly five intervals.
inline double nice_step(double span) {
    if (span <= 0.0) return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac <= 1.5) return mag;
    if (frac <= 3.5) return 2.0 * mag;
    if (frac <= 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

/// Render stacked panels into one self-contained SVG document. Output bytes
/// are a pure function of the inputs.
inline std::string render(const std::vector<Panel>& panels, int width = 760,
                          int panel_height = 300) {
    const int margin_left = 72, margin_right = 24, margin_top = 40, margin_bottom = 52;
    const int total_height = panel_height * static_cast<int>(panels.size());
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << total_height << "\" viewBox=\"0 0 " << width << " " << total_height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << total_height << "\" fill=\"white\"/>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& panel = panels[pi];
        const double top = static_cast<double>(pi) * panel_height + margin_top;
        const double bottom = static_cast<double>(pi + 1) * panel_height - margin_bottom;
        const double left = margin_left, right = width - margin_right;

        // data ranges
        double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
        auto stretch = [&](double x, double y) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        };
        for (const Series& s : panel.series)
            for (const auto& [x, y] : s.points) stretch(x, y);
        if (panel.band)
            for (const auto& [x, lohi] : panel.band->points) {
                stretch(x, lohi.first);
                stretch(x, lohi.second);
            }
        const bool empty = x_min > x_max;
        if (empty) {
            x_min = 0.0;
            x_max = 1.0;
            y_min = 0.0;
            y_max = 1.0;
        }
        if (x_max == x_min) {
            x_min -= 0.5;
            x_max += 0.5;
        }
        if (y_max == y_min) {
            y_min -= 0.5;
            y_max += 0.5;
        }
        const double y_pad = 0.06 * (y_max - y_min);
        y_min -= y_pad;
        y_max += y_pad;

        auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
        auto sy = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

        // frame and grid
        const double x_step = nice_step(x_max - x_min);
        const double y_step = nice_step(y_max - y_min);
        for (double t = std::ceil(x_min / x_step) * x_step; t <= x_max + 1e-12; t += x_step) {
            svg << "<line x1=\"" << fmt(sx(t)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(sx(t))
                << "\" y2=\"" << fmt(bottom) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            svg << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << fmt(bottom + 18)
                << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333333\">" << fmt_tick(t)
                << "</text>\n";
        }
        for (double t = std::ceil(y_min / y_step) * y_step; t <= y_max + 1e-12; t += y_step) {
            svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(sy(t)) << "\" x2=\"" << fmt(right)
                << "\" y2=\"" << fmt(sy(t)) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
            svg << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(sy(t) + 4)
                << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">" << fmt_tick(t)
                << "</text>\n";
        }
        svg << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\""
            << fmt(right - left) << "\" height=\"" << fmt(bottom - top)
            << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

        // band below curves
        if (panel.band && !panel.band->points.empty()) {
            std::ostringstream path;
            for (std::size_t i = 0; i < panel.band->points.size(); ++i) {
                const auto& [x, lohi] = panel.band->points[i];
                path << (i == 0 ? "M" : "L") << fmt(sx(x)) << "," << fmt(sy(lohi.second)) << " ";
            }
            for (std::size_t i = panel.band->points.size(); i-- > 0;) {
                const auto& [x, lohi] = panel.band->points[i];
                path << "L" << fmt(sx(x)) << "," << fmt(sy(lohi.first)) << " ";
            }
            svg << "<path d=\"" << path.str() << "Z\" fill=\"" << panel.band->color
                << "\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
        }

        for (const Series& s : panel.series) {
            if (s.points.empty()) continue;
            svg << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.6\" points=\"";
            for (const auto& [x, y] : s.points) svg << fmt(sx(x)) << "," << fmt(sy(y)) << " ";
            svg << "\"/>\n";
            for (const auto& [x, y] : s.points)
                svg << "<circle cx=\"" << fmt(sx(x)) << "\" cy=\"" << fmt(sy(y))
                    << "\" r=\"2.2\" fill=\"" << s.color << "\"/>\n";
        }

        // title, axis labels, legend
        svg << "<text x=\"" << fmt(0.5 * (left + right)) << "\" y=\"" << fmt(top - 14)
            << "\" font-size=\"14\" text-anchor=\"middle\" fill=\"#111111\">" << panel.title
            << "</text>\n";
        svg << "<text x=\"" << fmt(0.5 * (left + right)) << "\" y=\"" << fmt(bottom + 38)
            << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#111111\">" << panel.x_label
            << "</text>\n";
        svg << "<text x=\"16\" y=\"" << fmt(0.5 * (top + bottom))
            << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#111111\" transform=\"rotate(-90 16 "
            << fmt(0.5 * (top + bottom)) << ")\">" << panel.y_label << "</text>\n";
        double ly = top + 16;
        for (const Series& s : panel.series) {
            if (s.points.empty()) continue;
            svg << "<line x1=\"" << fmt(left + 10) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
                << fmt(left + 34) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << s.color
                << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << fmt(left + 40) << "\" y=\"" << fmt(ly)
                << "\" font-size=\"11\" fill=\"#111111\">" << s.label << "</text>\n";
            ly += 16;
        }
        if (empty)
            svg << "<text x=\"" << fmt(0.5 * (left + right)) << "\" y=\""
                << fmt(0.5 * (top + bottom)) << "\" font-size=\"12\" text-anchor=\"middle\" "
                << "fill=\"#999999\">no data</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace plot

struct PlotOutcome {
    std::string svg;
    bool empty = false; // axes-only output (warning, not an error)
};

/// Render the scan CSV into the two-panel layout: potential energy curves
/// relative to the FCI dissociation limit on top, errors vs FCI below, both
/// in kcal/mol against bond length in angstrom.
inline PlotOutcome render_scan_plot(const CsvTable& table, const std::string& title = "") {
    const auto xs = table.numbers("r_angstrom");
    const auto fci_ha = table.numbers("fci_ha");
    const auto fci_rel = table.numbers("fci_rel_kcal");
    const auto mean_ha = table.numbers("ens_mean_ha");
    const auto min_ha = table.numbers("ens_min_ha");
    const auto max_ha = table.numbers("ens_max_ha");
    const auto untrot_ha = table.numbers("untrot_ha");
    const auto sgo_ha = table.numbers("sgo_ha");
    const auto err_mean = table.numbers("err_mean_kcal");
    const auto err_min = table.numbers("err_min_kcal");
    const auto err_max = table.numbers("err_max_kcal");
    const auto err_untrot = table.numbers("err_untrot_kcal");
    const auto err_sgo = table.numbers("err_sgo_kcal");

    // kcal/mol PES relative to the dissociation reference: shift every
    // energy by the same zero used for fci_rel_kcal
    auto rel = [&](std::size_t i,
                   const std::vector<std::optional<double>>& e_ha) -> std::optional<double> {
        if (!e_ha[i] || !fci_ha[i] || !fci_rel[i]) return std::nullopt;
        return *fci_rel[i] + (*e_ha[i] - *fci_ha[i]) * kcal_per_hartree;
    };

    plot::Panel pes;
    pes.title = title.empty() ? "Potential energy curve" : title;
    pes.x_label = "R (angstrom)";
    pes.y_label = "E - E_FCI(dissoc) (kcal/mol)";
    plot::Panel err;
    err.title = "Error vs FCI";
    err.x_label = "R (angstrom)";
    err.y_label = "E - E_FCI (kcal/mol)";

    plot::Series fci_s{"FCI", "#000000", {}};
    plot::Series mean_s{"ensemble mean", "#1f77b4", {}};
    plot::Series untrot_s{"untrotterized", "#2ca02c", {}};
    plot::Series sgo_s{"SGO", "#d62728", {}};
    plot::Band pes_band{"#1f77b4", {}};
    plot::Series err_mean_s{"ensemble mean", "#1f77b4", {}};
    plot::Series err_untrot_s{"untrotterized", "#2ca02c", {}};
    plot::Series err_sgo_s{"SGO", "#d62728", {}};
    plot::Band err_band{"#1f77b4", {}};

    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!xs[i]) continue;
        const double x = *xs[i];
        if (fci_rel[i]) fci_s.points.emplace_back(x, *fci_rel[i]);
        if (const auto m = rel(i, mean_ha)) mean_s.points.emplace_back(x, *m);
        if (const auto u = rel(i, untrot_ha)) untrot_s.points.emplace_back(x, *u);
        if (const auto s = rel(i, sgo_ha)) sgo_s.points.emplace_back(x, *s);
        const auto lo = rel(i, min_ha), hi = rel(i, max_ha);
        if (lo && hi) pes_band.points.push_back({x, {*lo, *hi}});
        if (err_mean[i]) err_mean_s.points.emplace_back(x, *err_mean[i]);
        if (err_untrot[i]) err_untrot_s.points.emplace_back(x, *err_untrot[i]);
        if (err_sgo[i]) err_sgo_s.points.emplace_back(x, *err_sgo[i]);
        if (err_min[i] && err_max[i]) err_band.points.push_back({x, {*err_min[i], *err_max[i]}});
    }

    pes.series = {fci_s, mean_s, untrot_s, sgo_s};
    if (!pes_band.points.empty()) pes.band = pes_band;
    err.series = {err_mean_s, err_untrot_s, err_sgo_s};
    if (!err_band.points.empty()) err.band = err_band;

    PlotOutcome out;
    out.empty = fci_s.points.empty() && mean_s.points.empty();
    out.svg = plot::render({pes, err});
    return out;
}

} // namespace ucclab
