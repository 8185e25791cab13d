#include "anchored/harness.hpp"
#include "anchored/diagnostics.hpp"
#include "anchored/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace anchored {

Scale parse_scale(const std::string& s) {
    if (s == "small") return Scale::small;
    if (s == "paper") return Scale::paper;
    throw InputError("scale must be small or paper");
}

Suite parse_suite(const std::string& s) {
    if (s == "lemmas") return Suite::lemmas;
    if (s == "equivalence") return Suite::equivalence;
    if (s == "bounds") return Suite::bounds;
    if (s == "all") return Suite::all;
    throw InputError("suite must be lemmas, equivalence, bounds or all");
}

Figure parse_figure(const std::string& s) {
    if (s == "exam1") return Figure::exam1;
    if (s == "exam2") return Figure::exam2;
    throw InputError("figure must be exam1 or exam2");
}

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

ProblemInstance build_instance(const RunConfig& cfg) {
    const auto& in = cfg.instance;
    ProblemInstance inst;
    if (in.generator == "least_squares")
        inst = gen_least_squares(in.n, in.p, cfg.seed, in.noise_var);
    else if (in.generator == "huber")
        inst = gen_minimax_huber(in.n, in.p, cfg.seed);
    else if (in.generator == "bilinear")
        inst = gen_bilinear(in.n, in.p, cfg.seed);
    else if (in.generator == "identity")
        inst = gen_identity(in.n, 1.0);
    else
        throw InputError("unknown instance generator: " + in.generator);
    if (in.start_fill) set_start(inst, *in.start_fill);
    return inst;
}

ResolventKind kind_from(const SplittingConfig& sp, Eigen::Index dim) {
    if (sp.A == "l1") return L1Kind{sp.weight};
    if (sp.A == "box") return box_kind(dim, sp.lo, sp.hi);
    return ZeroKind{};
}

std::optional<BoundKind> bound_for(SchemeKind scheme, ScheduleKind kind) {
    switch (kind) {
        case ScheduleKind::halpern_fast:
        case ScheduleKind::nesterov_corollary1_b: return BoundKind::halpern_fast;
        case ScheduleKind::halpern_slow:
        case ScheduleKind::nesterov_corollary1_a: return BoundKind::halpern_slow;
        case ScheduleKind::nag_eag: return BoundKind::eag_anchored;
        case ScheduleKind::eag_constant: return BoundKind::eag_constant;
        case ScheduleKind::eag_varying: return BoundKind::eag_varying;
        case ScheduleKind::comono_eag:
        case ScheduleKind::nag_comono: return BoundKind::comono;
        case ScheduleKind::peag_theorem7:
        case ScheduleKind::nag_peag: return BoundKind::peag;
        default: break;
    }
    (void)scheme;
    return std::nullopt;
}

BoundSpec bound_spec(BoundKind kind, const ScheduleConstants& c, double dist0) {
    BoundSpec b;
    b.kind = kind;
    b.L = *c.L;
    b.dist0 = dist0;
    b.rho = c.rho;
    b.sigma = c.closed_form ? 1.0 : c.sigma;
    b.eta = kind == BoundKind::eag_constant ? c.eta.value_or(1.0 / (8.0 * *c.L)) : c.eta0.value_or(0.5 / *c.L);
    return b;
}

// Lyapunov probe matching the scheme/schedule pair, if one is defined.
std::optional<std::pair<std::string, LyapunovProbe>> probe_for(const Solver& solver,
                                                             const std::optional<Vector>& y_star) {
    const auto kind = solver.schedule().kind();
    const auto scheme = solver.scheme();
    const auto& c = solver.schedule().constants();
    const double L = *c.L;
    if (scheme == SchemeKind::halpern || scheme == SchemeKind::nesterov) {
        if (kind == ScheduleKind::nesterov_theorem3) {
            if (!y_star) return std::nullopt;
            const double gamma = c.gamma.value_or(0.9 / L), omega = c.omega;
            Vector ys = *y_star;
            return std::make_pair(std::string("V"), LyapunovProbe([=](const IterateState& s) {
                                      return lyapunov_V(s, nesterov_coeffs(s.k, gamma, omega, 1.0), ys);
                                  }));
        }
        return std::make_pair(std::string("L"), LyapunovProbe([=](const IterateState& s) {
                                  const auto h = halpern_coeffs(s.k);
                                  return lyapunov_L(s, h.p, h.q, L);
                              }));
    }
    if (!y_star) return std::nullopt;
    Vector ys = *y_star;
    if (kind == ScheduleKind::nag_eag && scheme == SchemeKind::nag_eag)
        return std::make_pair(std::string("Q"), LyapunovProbe([=](const IterateState& s) {
                                  return lyapunov_Q(s, nag_eag_coeffs(s.k, L), ys);
                              }));
    if (kind == ScheduleKind::peag_theorem7 && scheme == SchemeKind::peag) {
        const double sigma = c.sigma;
        return std::make_pair(std::string("E"), LyapunovProbe([=](const IterateState& s) {
                                  return lyapunov_E(s, sigma, L, ys);
                              }));
    }
    return std::nullopt;
}

}  // namespace

RunTrace execute(const RunConfig& cfg, ProblemInstance* instance_out) {
    ProblemInstance inst = build_instance(cfg);
    SolverData data;
    data.dim = inst.op.dim;
    std::optional<Vector> y_star;
    if (cfg.problem == ProblemCase::cocoercive) {
        data.op = inst.op;
        y_star = inst.solution;
    } else {
        SplittingSpec& sp = data.splitting;
        sp.A = kind_from(cfg.splitting, inst.op.dim);
        const double LB = inst.op.cocoercivity ? 1.0 / *inst.op.cocoercivity : inst.l_estimate;
        sp.lambda = cfg.splitting.lambda.value_or(2.0 / LB);
        sp.l_forward = LB;
        if (cfg.problem == ProblemCase::inclusion_AB) {
            sp.B = inst.op;
        } else if (cfg.problem == ProblemCase::inclusion_ABC) {
            sp.B = ResolventKind{ZeroKind{}};
            sp.C = inst.op;
        } else {
            sp.lambda = cfg.splitting.lambda.value_or(1.0);
        }
        if (cfg.splitting.A == "zero" && cfg.problem != ProblemCase::inclusion_A) y_star = inst.solution;
    }
    Solver solver = make_solver(cfg.problem, data, cfg.scheme, cfg.schedule, cfg.constants);

    TraceOptions opts;
    opts.snapshot_stride = cfg.snapshot_stride;
    opts.record_g_x = cfg.record_g_x;
    if (cfg.lyapunov)
        if (auto probe = probe_for(solver, y_star)) opts.probes.push_back(*probe);
    if (y_star) {
        if (auto bk = bound_for(cfg.scheme, cfg.schedule); bk && *bk != BoundKind::eag_varying) {
            const BoundSpec spec = bound_spec(*bk, solver.schedule().constants(), (inst.y0 - *y_star).norm());
            opts.bound = [spec](long k) { return residual_bound(spec, k).value_or(NAN); };
        }
    }
    RunTrace trace = run(solver, inst.y0, cfg.iters, opts);
    for (auto& r : trace.records)
        if (r.bound && std::isnan(*r.bound)) r.bound.reset();
    trace.meta.seed = cfg.seed;
    if (instance_out) *instance_out = std::move(inst);
    return trace;
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
    ProblemInstance inst;
    RunTrace trace;
    try {
        trace = execute(cfg, &inst);
    } catch (const NumericError& e) {
        log << "numeric error: " << e.what() << '\n';
        return 1;
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    const fs::path csv = fs::path(cfg.out_dir) / cfg.trace_name;
    std::ofstream out(csv, std::ios::binary);
    if (!out) {
        log << "cannot write " << csv.string() << '\n';
        return 2;
    }
    write_trace_csv(trace, out);
    out.close();

    std::ofstream rep(fs::path(cfg.out_dir) / "report.txt", std::ios::binary);
    if (!rep) {
        log << "cannot write report.txt\n";
        return 2;
    }
    rep << "scheme: " << trace.meta.scheme << '\n';
    rep << "schedule: " << trace.meta.schedule << '\n';
    rep << "problem: " << to_string(cfg.problem) << '\n';
    rep << "instance: " << inst.meta.generator;
    for (long d : inst.meta.dims) rep << ' ' << d;
    rep << " seed " << cfg.seed << '\n';
    rep << "L: " << sci(trace.meta.L) << '\n';
    rep << "iterations: " << (trace.records.empty() ? 0 : trace.records.back().k) << '\n';
    if (!trace.records.empty()) {
        rep << "initial |Gy|: " << sci(trace.records.front().norm_g_y) << '\n';
        rep << "final |Gy|: " << sci(trace.records.back().norm_g_y) << '\n';
    }
    long bound_viol = 0, bounded = 0;
    for (const auto& r : trace.records)
        if (r.bound) {
            ++bounded;
            if (r.norm_g_y > *r.bound * (1.0 + 1e-9)) ++bound_viol;
        }
    if (bounded) rep << "bound violations: " << bound_viol << " of " << bounded << '\n';
    std::vector<double> lyap;
    for (const auto& r : trace.records)
        if (r.lyapunov_main) lyap.push_back(*r.lyapunov_main);
    if (lyap.size() > 1) {
        const auto d = decrease_check(lyap, "lyapunov");
        rep << "lyapunov " << trace.records.front().lyapunov.begin()->first
            << " increases: " << d.violations << '\n';
    }
    if (trace.error) rep << "error: " << *trace.error << '\n';
    log << "wrote " << csv.string() << '\n';
    if (trace.error) {
        log << "numeric error: " << *trace.error << '\n';
        return 1;
    }
    return 0;
}

// Verification suites ---------------------------------------------------------

namespace {

struct Desk {
    ProblemInstance ls, huber, bilinear;
    long K;
    long equiv_steps = 500;
};

Desk make_desk(Scale scale, std::uint64_t seed) {
    Desk d;
    if (scale == Scale::small) {
        d.ls = gen_least_squares(200, 100, seed, 0.1);
        d.huber = gen_minimax_huber(200, 150, seed);
        d.bilinear = gen_bilinear(200, 150, seed);
        d.K = 2000;
    } else {
        d.ls = gen_least_squares(500, 1000, seed, 0.1);
        d.huber = gen_minimax_huber(1000, 750, seed);
        d.bilinear = gen_bilinear(1000, 750, seed);
        d.K = 5000;
    }
    return d;
}

Solver plain_solver(const ProblemInstance& inst, SchemeKind scheme, ScheduleKind kind,
                    ScheduleConstants c = {}) {
    if (!c.L) c.L = inst.l_estimate;
    SolverData data;
    data.op = inst.op;
    return make_solver(ProblemCase::cocoercive, data, scheme, kind, c);
}

RunTrace iterate_run(const ProblemInstance& inst, SchemeKind scheme, ScheduleKind kind, long K,
                     ScheduleConstants c = {}) {
    Solver s = plain_solver(inst, scheme, kind, c);
    TraceOptions o;
    o.keep_iterates = true;
    return run(s, inst.y0, K, o);
}

CheckResult check(const std::string& suite, const std::string& name, bool pass, std::string detail) {
    return CheckResult{suite, name, pass, std::move(detail)};
}

std::string describe(const BoundReport& r) {
    if (r.skipped) return "skipped: " + r.flag;
    std::string s = std::to_string(r.violations) + " violations / " + std::to_string(r.checked) +
                    ", worst excess " + sci(r.worst_excess);
    if (r.first_violation) s += ", first at k = " + std::to_string(*r.first_violation);
    if (r.approximate) s += " (approximate: " + r.flag + ")";
    return s;
}

std::vector<double> lyapunov_series(const RunTrace& t) {
    std::vector<double> v;
    for (const auto& r : t.records) v.push_back(r.lyapunov_main.value_or(NAN));
    return v;
}

void lemmas_suite(const Desk& d, std::vector<CheckResult>& out) {
    const std::string S = "lemmas";
    const double Lls = d.ls.l_estimate, Lh = d.huber.l_estimate;
    const Vector& ls_star = *d.ls.solution;
    const Vector& h_star = *d.huber.solution;

    {  // Nesterov-form Lyapunov function with mu = 1
        ScheduleConstants c;
        c.L = Lls;
        const double gamma = 0.9 / Lls, omega = 3.0;
        Solver s = plain_solver(d.ls, SchemeKind::nesterov, ScheduleKind::nesterov_theorem3, c);
        TraceOptions o;
        o.snapshot_stride = 1;
        o.probes.push_back({"V", [&](const IterateState& st) {
                                return lyapunov_V(st, nesterov_coeffs(st.k, gamma, omega, 1.0), ls_star);
                            }});
        o.probes.push_back({"mu_dist", [&](const IterateState& st) { return (st.x - ls_star).squaredNorm(); }});
        RunTrace t = run(s, d.ls.y0, d.K, o);
        const auto V = lyapunov_series(t);
        const auto dec = decrease_check(V, "V");
        out.push_back(check(S, "V_k nonincreasing (least squares)", dec.ok() && !t.error, describe(dec)));
        std::vector<double> lb;
        for (const auto& r : t.records) lb.push_back(r.lyapunov.at("mu_dist"));
        const auto low = lower_bound_check(V, lb, "V >= mu |x - y*|^2", 1e-10);
        out.push_back(check(S, "V_k >= |x_k - y*|^2", low.ok(), describe(low)));
        const auto sums = summability_check(t, gamma, omega, Lls, V.front());
        for (const auto& r : sums) out.push_back(check(S, "budget " + r.name + " <= V_0", r.ok(), describe(r)));
        std::vector<double> g;
        for (const auto& r : t.records) g.push_back(r.norm_g_y);
        const auto tr = little_o_trend(g);
        out.push_back(check(S, "(k+1)^2 |Gy_k|^2 late max <= early max", tr.ok(),
                            "late " + sci(tr.late_max) + ", early " + sci(tr.early_max)));
    }
    {  // extra-anchored Lyapunov function
        ScheduleConstants c;
        c.L = Lh;
        Solver s = plain_solver(d.huber, SchemeKind::nag_eag, ScheduleKind::nag_eag, c);
        TraceOptions o;
        o.probes.push_back({"Q", [&](const IterateState& st) {
                                return lyapunov_Q(st, nag_eag_coeffs(st.k, Lh), h_star);
                            }});
        RunTrace t = run(s, d.huber.y0, d.K, o);
        const auto Q = lyapunov_series(t);
        const auto dec = decrease_check(std::span<const double>(Q).subspan(1), "Q");
        out.push_back(check(S, "Q_k nonincreasing from k = 1 (Huber saddle)", dec.ok() && !t.error, describe(dec)));
        std::vector<double> lhs, rhs;
        for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
            const double kk = static_cast<double>(k);
            lhs.push_back(Q[k + 1]);
            const double g = t.records[k].norm_g_y;
            rhs.push_back((kk + 1.0) * (kk + 1.0) / (4.0 * Lh * Lh) * g * g);
        }
        const auto low = lower_bound_check(lhs, rhs, "Q lower bound", 1e-10);
        out.push_back(check(S, "Q_{k+1} >= (k+1)^2 |Gy_k|^2 / (4L^2)", low.ok(), describe(low)));
    }
    {  // past-extra-anchored Lyapunov function, sigma = 2
        ScheduleConstants c;
        c.L = Lh;
        c.sigma = 2.0;
        Solver s = plain_solver(d.huber, SchemeKind::peag, ScheduleKind::peag_theorem7, c);
        TraceOptions o;
        o.probes.push_back({"E", [&](const IterateState& st) { return lyapunov_E(st, 2.0, Lh, h_star); }});
        RunTrace t = run(s, d.huber.y0, d.K, o);
        const auto E = lyapunov_series(t);
        const auto dec = decrease_check(E, "E");
        out.push_back(check(S, "E_k nonincreasing (sigma = 2)", dec.ok() && !t.error, describe(dec)));
        const auto ws = peag_weighted_sum_check(t, Lh, 2.0, E.front());
        out.push_back(check(S, "weighted |z - y|^2 sum <= E_0", ws.ok(), describe(ws)));
    }
    {  // Halpern -> Nesterov Lyapunov correspondence and decrease of L_k
        ScheduleConstants c;
        c.L = Lls;
        Solver s = plain_solver(d.ls, SchemeKind::halpern, ScheduleKind::halpern_slow, c);
        TraceOptions o;
        o.snapshot_stride = 1;
        o.probes.push_back({"L", [&](const IterateState& st) {
                                const auto h = halpern_coeffs(st.k);
                                return lyapunov_L(st, h.p, h.q, 2.0 * Lls);
                            }});
        const long K = std::min<long>(d.K, 1000);
        RunTrace t = run(s, d.ls.y0, K, o);
        double worst = 0.0;
        for (long k = 0; k + 1 < static_cast<long>(t.snapshots.size()); ++k) {
            const auto p = halpern_schedule(k, Lls, HalpernVariant::slow);
            worst = std::max(worst, lyapunov_correspondence_gap(t.snapshots[k], t.snapshots[k + 1], *p.beta,
                                                                *p.eta, Lls, ls_star));
        }
        out.push_back(check(S, "V_{k+1} - |y0 - y*|^2 = (4p/(Lq^2)) L_k", worst <= 1e-10,
                            "max relative gap " + sci(worst)));
        const auto dec = decrease_check(lyapunov_series(t), "L");
        out.push_back(check(S, "Halpern L_k with 2L nonincreasing (slow stepsize)", dec.ok(), describe(dec)));
    }
}

void equivalence_suite(const Desk& d, std::vector<CheckResult>& out) {
    const std::string S = "equivalence";
    const long N = d.equiv_steps;
    struct Inst {
        const char* name;
        const ProblemInstance* inst;
    };
    auto outcome = [](const RunTrace& a, const RunTrace& b) {
        std::string s;
        for (const RunTrace* t : {&a, &b})
            if (t->error) s += ", " + t->meta.scheme + " stopped: " + *t->error;
        return s;
    };
    for (Inst in : {Inst{"least squares", &d.ls}, Inst{"Huber saddle", &d.huber}}) {
        const auto& I = *in.inst;
        {
            const auto a = iterate_run(I, SchemeKind::halpern, ScheduleKind::halpern_fast, N);
            const auto b = iterate_run(I, SchemeKind::nesterov, ScheduleKind::halpern_fast, N);
            const double dev = equivalence_report(a.ys, b.ys);
            out.push_back(check(S, std::string("Halpern = two-correction Nesterov (") + in.name + ")",
                                dev <= 1e-8 && !a.error && !b.error, "max deviation " + sci(dev) + outcome(a, b)));
        }
        {
            const auto a = iterate_run(I, SchemeKind::eag, ScheduleKind::nag_eag, N);
            const auto b = iterate_run(I, SchemeKind::nag_eag, ScheduleKind::nag_eag, N);
            const double dy = equivalence_report(a.ys, b.ys);
            const double dz = equivalence_report(a.zs, b.zs);
            out.push_back(check(S, std::string("EAG = Nesterov-form EAG (") + in.name + ")",
                                std::max(dy, dz) <= 1e-8 && !a.error && !b.error,
                                "max deviation y " + sci(dy) + ", z " + sci(dz) + outcome(a, b)));
        }
        {
            const auto a = iterate_run(I, SchemeKind::peag, ScheduleKind::peag_theorem7, N);
            const auto b = iterate_run(I, SchemeKind::nag_peag, ScheduleKind::nag_peag, N);
            const double dz = equivalence_report(a.zs, b.zs);
            out.push_back(check(S, std::string("PEAG = three-correction Nesterov (") + in.name + ")",
                                dz <= 1e-8 && !a.error && !b.error, "max deviation z " + sci(dz) + outcome(a, b)));
        }
    }
    {
        ScheduleConstants c;
        c.L = d.bilinear.l_estimate;
        c.rho = -1.0 / (4.0 * *c.L);
        const auto a = iterate_run(d.bilinear, SchemeKind::comono_eag, ScheduleKind::comono_eag, 300, c);
        const auto b = iterate_run(d.bilinear, SchemeKind::nag_comono, ScheduleKind::nag_comono, 300, c);
        const double dy = equivalence_report(a.ys, b.ys);
        const double dz = equivalence_report(a.zs, b.zs);
        out.push_back(check(S, "co-monotone EAG = Nesterov form (bilinear)",
                            std::max(dy, dz) <= 1e-8 && !a.error && !b.error,
                            "max deviation y " + sci(dy) + ", z " + sci(dz) + outcome(a, b)));
    }
}

void bounds_suite(const Desk& d, std::vector<CheckResult>& out) {
    const std::string S = "bounds";
    struct Case {
        SchemeKind scheme;
        ScheduleKind kind;
        const ProblemInstance* inst;
        double rho_scale;  // rho = rho_scale / L
    };
    const std::vector<Case> cases = {
        {SchemeKind::halpern, ScheduleKind::halpern_fast, &d.ls, 0},
        {SchemeKind::halpern, ScheduleKind::halpern_slow, &d.ls, 0},
        {SchemeKind::nesterov, ScheduleKind::halpern_fast, &d.ls, 0},
        {SchemeKind::nesterov, ScheduleKind::halpern_slow, &d.ls, 0},
        {SchemeKind::nesterov, ScheduleKind::nesterov_corollary1_a, &d.ls, 0},
        {SchemeKind::nesterov, ScheduleKind::nesterov_corollary1_b, &d.ls, 0},
        {SchemeKind::eag, ScheduleKind::nag_eag, &d.huber, 0},
        {SchemeKind::nag_eag, ScheduleKind::nag_eag, &d.huber, 0},
        {SchemeKind::eag, ScheduleKind::eag_constant, &d.huber, 0},
        {SchemeKind::eag, ScheduleKind::eag_varying, &d.huber, 0},
        {SchemeKind::comono_eag, ScheduleKind::comono_eag, &d.bilinear, -0.25},
        {SchemeKind::comono_eag, ScheduleKind::nag_comono, &d.bilinear, -0.25},
        {SchemeKind::nag_comono, ScheduleKind::nag_comono, &d.bilinear, -0.25},
        {SchemeKind::peag, ScheduleKind::peag_theorem7, &d.huber, 0},
        {SchemeKind::nag_peag, ScheduleKind::peag_theorem7, &d.huber, 0},
        {SchemeKind::nag_peag, ScheduleKind::nag_peag, &d.huber, 0},
    };
    for (const auto& cs : cases) {
        const auto& I = *cs.inst;
        ScheduleConstants c;
        c.L = I.l_estimate;
        c.rho = cs.rho_scale / I.l_estimate;
        Solver s = plain_solver(I, cs.scheme, cs.kind, c);
        RunTrace t = run(s, I.y0, d.K);
        const double dist0 = (I.y0 - *I.solution).norm();
        const auto bk = *bound_for(cs.scheme, cs.kind);
        BoundSpec spec = bound_spec(bk, c, dist0);
        if (bk == BoundKind::eag_varying) {
            double eta = spec.eta;
            for (long k = 0; k < d.K; ++k) eta = eag_varying_next(k, *c.L, eta);
            spec.eta_limit = eta;
        }
        const std::string label = to_string(cs.scheme) + " / " + to_string(cs.kind);
        for (const auto& r : bound_check(t, spec))
            out.push_back(check(S, label + ": " + r.name, r.ok() && !t.error, describe(r)));
    }
    {
        ScheduleConstants c;
        c.L = d.ls.l_estimate;
        Solver s = plain_solver(d.ls, SchemeKind::halpern, ScheduleKind::halpern_slow, c);
        TraceOptions o;
        o.snapshot_stride = 1;
        RunTrace t = run(s, d.ls.y0, d.K, o);
        const auto r = halpern_summability_check(t, *c.L, (d.ls.y0 - *d.ls.solution).norm());
        out.push_back(check(S, "halpern / halpern_slow: summability", r.ok(), describe(r)));
    }
    {  // start at the solution: every residual is zero
        ProblemInstance I = d.ls;
        I.y0 = *I.solution;
        ScheduleConstants c;
        c.L = I.l_estimate;
        Solver s = plain_solver(I, SchemeKind::halpern, ScheduleKind::halpern_fast, c);
        RunTrace t = run(s, I.y0, 50);
        double worst = 0.0;
        for (const auto& r : t.records) worst = std::max(worst, r.norm_g_y);
        out.push_back(check(S, "start at a solution stays there", worst <= 1e-8 * I.l_estimate,
                            "max |Gy| " + sci(worst)));
    }
}

}  // namespace

std::vector<CheckResult> run_suite(Suite suite, Scale scale, std::uint64_t seed) {
    const Desk d = make_desk(scale, seed);
    std::vector<CheckResult> out;
    if (suite == Suite::lemmas || suite == Suite::all) lemmas_suite(d, out);
    if (suite == Suite::equivalence || suite == Suite::all) equivalence_suite(d, out);
    if (suite == Suite::bounds || suite == Suite::all) bounds_suite(d, out);
    return out;
}

int cmd_verify(Suite suite, Scale scale, std::uint64_t seed, const std::string& out_dir,
               std::ostream& log) {
    const auto results = run_suite(suite, scale, seed);
    std::ostringstream table;
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    long failed = 0;
    for (const auto& r : results) {
        table << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(12) << r.suite
              << std::setw(static_cast<int>(width) + 2) << r.name << r.detail << '\n';
        if (!r.pass) ++failed;
    }
    table << results.size() - failed << " passed, " << failed << " failed\n";
    log << table.str();
    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        std::ofstream rep(std::filesystem::path(out_dir) / "report.txt", std::ios::binary);
        if (!rep) {
            log << "cannot write report.txt\n";
            return 2;
        }
        rep << table.str();
    }
    return failed ? 1 : 0;
}

// Figures ---------------------------------------------------------------------

FigureResult make_figure(Figure which, Scale scale, std::uint64_t seed, std::optional<long> iters) {
    const auto t0 = std::chrono::steady_clock::now();
    FigureResult fig;
    const long K = iters.value_or(scale == Scale::small ? 2000 : 5000);
    struct Spec {
        std::string label;
        SchemeKind scheme;
        ScheduleKind kind;
    };
    ProblemInstance inst;
    std::vector<Spec> specs;
    if (which == Figure::exam1) {
        inst = scale == Scale::small ? gen_least_squares(200, 100, seed, 0.1)
                                     : gen_least_squares(500, 1000, seed, 0.1);
        specs = {{"NesGD-v1", SchemeKind::nesterov, ScheduleKind::nesterov_corollary1_a},
                 {"NesGD-v2", SchemeKind::nesterov, ScheduleKind::nesterov_theorem3}};
    } else {
        inst = scale == Scale::small ? gen_minimax_huber(200, 150, seed) : gen_minimax_huber(1000, 750, seed);
        specs = {{"NesEAG", SchemeKind::nag_eag, ScheduleKind::nag_eag},
                 {"NesPEAG", SchemeKind::nag_peag, ScheduleKind::nag_peag}};
    }
    const double dist0 = (inst.y0 - *inst.solution).norm();
    for (const auto& sp : specs) {
        ScheduleConstants c;
        c.L = inst.l_estimate;
        Solver s = plain_solver(inst, sp.scheme, sp.kind, c);
        TraceOptions o;
        o.record_g_x = true;
        RunTrace t = run(s, inst.y0, K, o);
        if (t.error) throw NumericError(sp.label + ": " + *t.error);
        Curve curve;
        curve.label = sp.label;
        std::vector<double> rel;
        const double g0 = *t.records.front().norm_g_x;
        for (const auto& r : t.records) {
            curve.k.push_back(static_cast<double>(r.k + 1));
            curve.value.push_back(*r.norm_g_x / g0);
            rel.push_back(*r.norm_g_x / g0);
        }
        fig.labels.push_back(sp.label);
        fig.fits.push_back(rate_fit(rel));
        if (auto bk = bound_for(sp.scheme, sp.kind)) {
            for (auto& b : bound_check(t, bound_spec(*bk, c, dist0))) {
                b.name = sp.label + ": " + b.name;
                fig.bounds.push_back(std::move(b));
            }
        }
        fig.curves.push_back(std::move(curve));
    }
    fig.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return fig;
}

int cmd_figure(Figure which, Scale scale, std::uint64_t seed, std::optional<long> iters,
               const std::string& out_dir, std::ostream& log) {
    FigureResult fig;
    try {
        fig = make_figure(which, scale, seed, iters);
    } catch (const NumericError& e) {
        log << "numeric error: " << e.what() << '\n';
        return 1;
    }
    namespace fs = std::filesystem;
    const std::string tag = which == Figure::exam1 ? "exam1" : "exam2";
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    for (const auto& c : fig.curves) {
        std::ofstream out(fs::path(out_dir) / (tag + "_" + c.label + ".csv"), std::ios::binary);
        if (!out) {
            log << "cannot write curve csv\n";
            return 2;
        }
        out << "k,relative_norm_g_x\n";
        char buf[40];
        for (std::size_t i = 0; i < c.k.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", c.value[i]);
            out << static_cast<long>(c.k[i]) - 1 << ',' << buf << '\n';
        }
    }
    PlotOptions po;
    po.title = which == Figure::exam1 ? "Accelerated gradient variants on least squares"
                                      : "Accelerated extra-anchored variants on a Huber saddle problem";
    po.y_label = "|G x_k| / |G x_0|";
    po.x_label = "k + 1";
    {
        std::ofstream svg(fs::path(out_dir) / (tag + ".svg"), std::ios::binary);
        if (!svg) {
            log << "cannot write svg\n";
            return 2;
        }
        write_loglog_svg(fig.curves, po, svg);
    }
    std::ostringstream rep;
    rep << tag << " (" << (scale == Scale::small ? "small" : "paper") << " scale, seed " << seed << ")\n";
    bool ok = true;
    for (std::size_t i = 0; i < fig.labels.size(); ++i) {
        const auto& f = fig.fits[i];
        rep << fig.labels[i] << ": slope " << sci(f.slope) << " over [" << f.k_lo << ", " << f.k_hi
            << "], fit residual " << sci(f.residual) << '\n';
    }
    for (const auto& b : fig.bounds) {
        rep << b.name << ": " << describe(b) << '\n';
        ok = ok && b.ok();
    }
    rep << "elapsed: " << sci(fig.seconds) << " s\n";
    std::ofstream(fs::path(out_dir) / "report.txt", std::ios::binary) << rep.str();
    log << rep.str();
    return ok ? 0 : 1;
}

void list_schemes(std::ostream& out) {
    for (auto kind : all_schedule_kinds()) {
        for (auto scheme : {SchemeKind::halpern, SchemeKind::nesterov, SchemeKind::eag, SchemeKind::nag_eag,
                            SchemeKind::comono_eag, SchemeKind::nag_comono, SchemeKind::peag,
                            SchemeKind::nag_peag}) {
            if (!compatible(scheme, kind)) continue;
            out << std::left << std::setw(12) << to_string(scheme) << std::setw(24) << to_string(kind);
            if (auto b = bound_for(scheme, kind)) out << "bound " << to_string(*b);
            out << '\n';
        }
    }
}

}  // namespace anchored
