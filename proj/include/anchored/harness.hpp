#pragma once

#include "anchored/config.hpp"
#include "anchored/diagnostics.hpp"
#include "anchored/instances.hpp"
#include "anchored/io.hpp"

#include <cstdint>
#include <optional>

#include <iosfwd>
#include <string>
#include <vector>

namespace anchored {

enum class Scale { small, paper };
enum class Suite { lemmas, equivalence, bounds, all };
enum class Figure { exam1, exam2 };

Scale parse_scale(const std::string& s);
Suite parse_suite(const std::string& s);
Figure parse_figure(const std::string& s);

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Builds the instance, solver and trace options described by the config and runs it.
RunTrace execute(const RunConfig& cfg, ProblemInstance* instance_out = nullptr);

std::vector<CheckResult> run_suite(Suite suite, Scale scale, std::uint64_t seed = 7);

/// Exit status 0 on success; 1 on numeric failure, 2 on I/O failure.
int cmd_run(const RunConfig& cfg, std::ostream& log);
int cmd_verify(Suite suite, Scale scale, std::uint64_t seed, const std::string& out_dir,
               std::ostream& log);

struct FigureResult {
    std::vector<std::string> labels;
    std::vector<RateReport> fits;
    std::vector<BoundReport> bounds;
    std::vector<Curve> curves;
    double seconds = 0.0;
};

FigureResult make_figure(Figure which, Scale scale, std::uint64_t seed, std::optional<long> iters);
int cmd_figure(Figure which, Scale scale, std::uint64_t seed, std::optional<long> iters,
               const std::string& out_dir, std::ostream& log);
void list_schemes(std::ostream& out);

}  // namespace anchored
