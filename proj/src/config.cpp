#include "anchored/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace anchored {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig cfg;
    std::string section = "run";
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InputError("config line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw InputError("config line " + std::to_string(lineno) + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values_[section + "." + key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    return parse(in);
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> KeyValueConfig::find(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
    return find(key).value_or(fallback);
}

std::optional<double> KeyValueConfig::find_double(const std::string& key) const {
    auto v = find(key);
    if (!v) return std::nullopt;
    try {
        std::size_t used = 0;
        const double d = std::stod(*v, &used);
        if (used != v->size()) throw InputError("");
        return d;
    } catch (const std::exception&) {
        throw InputError("config key " + key + ": not a number: " + *v);
    }
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    return find_double(key).value_or(fallback);
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
    auto v = find(key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        const long n = std::stol(*v, &used);
        if (used != v->size()) throw InputError("");
        return n;
    } catch (const std::exception&) {
        throw InputError("config key " + key + ": not an integer: " + *v);
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    auto v = find(key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "off" || s == "no" || s == "0") return false;
    throw InputError("config key " + key + ": not a boolean: " + *v);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

namespace {

ScheduleKind default_schedule(SchemeKind scheme) {
    switch (scheme) {
        case SchemeKind::halpern: return ScheduleKind::halpern_fast;
        case SchemeKind::nesterov: return ScheduleKind::nesterov_theorem3;
        case SchemeKind::eag: return ScheduleKind::eag_constant;
        case SchemeKind::nag_eag: return ScheduleKind::nag_eag;
        case SchemeKind::comono_eag: return ScheduleKind::comono_eag;
        case SchemeKind::nag_comono: return ScheduleKind::nag_comono;
        case SchemeKind::peag: return ScheduleKind::peag_theorem7;
        case SchemeKind::nag_peag: return ScheduleKind::nag_peag;
    }
    return ScheduleKind::halpern_fast;
}

}  // namespace

RunConfig run_config_from(const KeyValueConfig& kv) {
    static const char* const known[] = {
        "run.scheme",         "run.schedule",        "run.problem",          "run.seed",
        "run.iters",          "schedule.L",          "schedule.omega",       "schedule.mu",
        "schedule.sigma",     "schedule.rho",        "schedule.gamma",       "schedule.eta",
        "schedule.eta0",      "schedule.closed_form", "instance.generator",  "instance.n",
        "instance.p",         "instance.m",          "instance.dim",         "instance.noise_var",
        "instance.start",     "splitting.A",         "splitting.weight",     "splitting.lo",
        "splitting.hi",       "splitting.lambda",    "trace.snapshot_stride", "trace.lyapunov",
        "trace.record_g_x",   "output.dir",          "output.trace",
    };
    for (const auto& [key, value] : kv.entries()) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw InputError("unknown config key: " + key);
    }

    RunConfig cfg;
    if (kv.has("run.scheme")) {
        cfg.scheme = parse_scheme_kind(kv.get("run.scheme", ""));
        cfg.schedule = kv.has("run.schedule") ? parse_schedule_kind(kv.get("run.schedule", ""))
                                              : default_schedule(cfg.scheme);
    } else {
        cfg.schedule = parse_schedule_kind(kv.get("run.schedule", "halpern_fast"));
        cfg.scheme = scheme_for(cfg.schedule);
    }
    if (!compatible(cfg.scheme, cfg.schedule))
        throw InputError("schedule " + to_string(cfg.schedule) + " cannot drive scheme " +
                         to_string(cfg.scheme));
    cfg.problem = parse_problem_case(kv.get("run.problem", "cocoercive"));
    const long seed = kv.get_long("run.seed", 7);
    if (seed < 0) throw InputError("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.iters = kv.get_long("run.iters", 200);
    if (cfg.iters < 0) throw InputError("iters must be nonnegative");

    auto& c = cfg.constants;
    c.L = kv.find_double("schedule.L");
    c.omega = kv.get_double("schedule.omega", 3.0);
    c.mu = kv.get_double("schedule.mu", 1.0);
    c.sigma = kv.get_double("schedule.sigma", 1.0);
    c.rho = kv.get_double("schedule.rho", 0.0);
    c.gamma = kv.find_double("schedule.gamma");
    c.eta = kv.find_double("schedule.eta");
    c.eta0 = kv.find_double("schedule.eta0");
    c.closed_form = kv.get_bool("schedule.closed_form", false);

    auto& in = cfg.instance;
    in.generator = kv.get("instance.generator", "least_squares");
    auto reject = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys)
            if (kv.has(k)) throw InputError(std::string(k) + " does not apply to generator " + in.generator);
    };
    if (in.generator == "least_squares") {
        reject({"instance.m", "instance.dim"});
        in.n = kv.get_long("instance.n", 200);
        in.p = kv.get_long("instance.p", 100);
    } else if (in.generator == "huber" || in.generator == "bilinear") {
        reject({"instance.p", "instance.dim", "instance.noise_var"});
        in.n = kv.get_long("instance.m", 200);
        in.p = kv.get_long("instance.n", 150);
    } else if (in.generator == "identity") {
        reject({"instance.m", "instance.n", "instance.p", "instance.noise_var"});
        in.n = kv.get_long("instance.dim", 1);
        in.p = 0;
    } else {
        throw InputError("unknown instance generator: " + in.generator);
    }
    in.noise_var = kv.get_double("instance.noise_var", 0.1);
    in.start_fill = kv.find_double("instance.start");

    auto& sp = cfg.splitting;
    sp.A = kv.get("splitting.A", "zero");
    if (sp.A != "zero" && sp.A != "l1" && sp.A != "box")
        throw InputError("splitting.A must be zero, l1 or box");
    sp.weight = kv.get_double("splitting.weight", 1.0);
    sp.lo = kv.get_double("splitting.lo", 0.0);
    sp.hi = kv.get_double("splitting.hi", 1.0);
    sp.lambda = kv.find_double("splitting.lambda");

    cfg.snapshot_stride = kv.get_long("trace.snapshot_stride", 0);
    cfg.lyapunov = kv.get_bool("trace.lyapunov", true);
    cfg.record_g_x = kv.get_bool("trace.record_g_x", false);
    cfg.out_dir = kv.get("output.dir", "out");
    cfg.trace_name = kv.get("output.trace", "trace.csv");
    return cfg;
}

}  // namespace anchored
