#pragma once

#include "anchored/schedules.hpp"
#include "anchored/schemes.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace anchored {

/// Sectioned key/value text:
///   [section]
///   key = value     # comment
/// Keys are addressed as "section.key"; keys before any section live in "run".
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in);
    static KeyValueConfig parse_string(const std::string& text);
    static KeyValueConfig load(const std::string& path);

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    std::optional<std::string> find(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::optional<double> find_double(const std::string& key) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    void set(const std::string& key, const std::string& value);
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

struct InstanceConfig {
    std::string generator = "least_squares";  // least_squares|huber|bilinear|identity
    long n = 200, p = 100;  // least squares rows/cols, or saddle m/n, or identity dim in n
    double noise_var = 0.1;
    std::optional<double> start_fill;  // replaces the random start with a constant vector
};

struct SplittingConfig {
    std::string A = "zero";  // zero|l1|box
    double weight = 1.0;
    double lo = 0.0, hi = 1.0;
    std::optional<double> lambda;  // default 2/L
};

struct RunConfig {
    SchemeKind scheme = SchemeKind::halpern;
    ScheduleKind schedule = ScheduleKind::halpern_fast;
    ProblemCase problem = ProblemCase::cocoercive;
    ScheduleConstants constants;
    InstanceConfig instance;
    SplittingConfig splitting;
    std::uint64_t seed = 7;
    long iters = 200;
    long snapshot_stride = 0;
    bool lyapunov = true;
    bool record_g_x = false;
    std::string out_dir = "out";
    std::string trace_name = "trace.csv";
};

RunConfig run_config_from(const KeyValueConfig& kv);

}  // namespace anchored
