#pragma once

#include "anchored/schemes.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace anchored {

extern const char* const kTraceColumns;

/// Header row plus one row per record; values at 17 significant digits,
/// absent values as empty fields, LF line endings.
void write_trace_csv(const RunTrace& trace, std::ostream& out);
std::vector<TraceRecord> read_trace_csv(std::istream& in);

struct Curve {
    std::string label;
    std::vector<double> k;  // abscissa (iteration index, shifted by one for log scale)
    std::vector<double> value;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "iteration k";
    std::string y_label = "relative residual";
    bool guide = true;  // dashed 1/k reference line
    int width = 720;
    int height = 480;
};

/// Log-log line plot: axes, decade ticks, one polyline per curve (plus the guide).
void write_loglog_svg(const std::vector<Curve>& curves, const PlotOptions& opts, std::ostream& out);

}  // namespace anchored
