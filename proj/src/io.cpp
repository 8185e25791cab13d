#include "anchored/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace anchored {

const char* const kTraceColumns = "k,norm_g_y,norm_g_x,norm_dx,norm_yx,norm_dy,lyapunov_main,bound_value";

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string field(const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); }

std::optional<double> parse_field(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw DataError("trace csv: bad number '" + s + "'");
    return v;
}

}  // namespace

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
    out << kTraceColumns << '\n';
    for (const auto& r : trace.records) {
        out << r.k << ',' << fmt17(r.norm_g_y) << ',' << field(r.norm_g_x) << ',' << field(r.norm_dx)
            << ',' << field(r.norm_yx) << ',' << field(r.norm_dy) << ',' << field(r.lyapunov_main)
            << ',' << field(r.bound) << '\n';
    }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTraceColumns)
        throw DataError("trace csv: unexpected header");
    std::vector<TraceRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (cells.size() != 8) throw DataError("trace csv: expected 8 fields in '" + line + "'");
        TraceRecord r;
        r.k = std::stol(cells[0]);
        r.norm_g_y = parse_field(cells[1]).value_or(0.0);
        r.norm_g_x = parse_field(cells[2]);
        r.norm_dx = parse_field(cells[3]);
        r.norm_yx = parse_field(cells[4]);
        r.norm_dy = parse_field(cells[5]);
        r.lyapunov_main = parse_field(cells[6]);
        r.bound = parse_field(cells[7]);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void write_loglog_svg(const std::vector<Curve>& curves, const PlotOptions& opts, std::ostream& out) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0;
    double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
    for (const auto& c : curves) {
        if (c.k.size() != c.value.size()) throw InputError("svg: curve coordinate length mismatch");
        for (std::size_t i = 0; i < c.k.size(); ++i) {
            if (!(c.k[i] > 0.0) || !(c.value[i] > 0.0)) continue;
            xmin = std::min(xmin, c.k[i]);
            xmax = std::max(xmax, c.k[i]);
            ymin = std::min(ymin, c.value[i]);
            ymax = std::max(ymax, c.value[i]);
        }
    }
    if (!(xmax > 0.0)) {
        xmin = 1.0;
        xmax = 10.0;
        ymin = 0.1;
        ymax = 1.0;
    }
    const double lx0 = std::floor(std::log10(xmin)), lx1 = std::max(lx0 + 1.0, std::ceil(std::log10(xmax)));
    const double ly0 = std::floor(std::log10(ymin)), ly1 = std::max(ly0 + 1.0, std::ceil(std::log10(ymax)));

    const double W = opts.width, H = opts.height;
    const double left = 80, right = 180, top = 40, bottom = 60;
    const double pw = W - left - right, ph = H - top - bottom;
    auto px = [&](double x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double y) { return top + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width << "\" height=\""
        << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << opts.width << "\" height=\"" << opts.height
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
        << escape(opts.title) << "</text>\n";
    out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double e = lx0; e <= lx1 + 1e-9; e += 1.0) {
        const double x = px(std::pow(10.0, e));
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(top + ph) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" << static_cast<int>(e)
            << "</text>\n";
    }
    for (double e = ly0; e <= ly1 + 1e-9; e += 1.0) {
        const double y = py(std::pow(10.0, e));
        out << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + pw) << "\" y2=\""
            << num(y) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << static_cast<int>(e)
            << "</text>\n";
    }
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(H - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(opts.x_label)
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"12\" transform=\"rotate(-90 18 " << num(top + ph / 2) << ")\">" << escape(opts.y_label)
        << "</text>\n";

    if (opts.guide && !curves.empty()) {
        // 1/k through the largest starting value, clipped to the plot box
        const double x0 = std::pow(10.0, lx0), x1 = std::pow(10.0, lx1);
        const double c = ymax * xmin;
        double ya = c / x0, yb = c / x1;
        double xa = x0, xb = x1;
        const double ytop = std::pow(10.0, ly1), ybot = std::pow(10.0, ly0);
        if (ya > ytop) {
            xa = c / ytop;
            ya = ytop;
        }
        if (yb < ybot) {
            xb = c / ybot;
            yb = ybot;
        }
        out << "<line x1=\"" << num(px(xa)) << "\" y1=\"" << num(py(ya)) << "\" x2=\"" << num(px(xb))
            << "\" y2=\"" << num(py(yb)) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    }

    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& c = curves[i];
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 6] << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t j = 0; j < c.k.size(); ++j) {
            if (!(c.k[j] > 0.0) || !(c.value[j] > 0.0)) continue;
            if (!first) out << ' ';
            out << num(px(c.k[j])) << ',' << num(py(c.value[j]));
            first = false;
        }
        out << "\"/>\n";
    }

    double ly = top + 10;
    const double lx = left + pw + 14;
    for (std::size_t i = 0; i < curves.size(); ++i, ly += 20) {
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\""
            << num(ly) << "\" stroke=\"" << kPalette[i % 6] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(curves[i].label) << "</text>\n";
    }
    if (opts.guide && !curves.empty()) {
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\""
            << num(ly) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
        out << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">O(1/k)</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace anchored
