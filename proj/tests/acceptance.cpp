#include "anchored/harness.hpp"
#include "anchored/random.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace anchored;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << what << " | " << detail << std::endl;
}

Solver solver_for(const ProblemInstance& inst, SchemeKind scheme, ScheduleKind kind, ScheduleConstants c = {}) {
    if (!c.L) c.L = inst.l_estimate;
    SolverData d;
    d.op = inst.op;
    return make_solver(ProblemCase::cocoercive, d, scheme, kind, c);
}

std::vector<double> main_probe(const RunTrace& t) {
    std::vector<double> v;
    for (const auto& r : t.records) v.push_back(r.lyapunov_main.value_or(NAN));
    return v;
}

std::string summary(const BoundReport& r) {
    if (r.skipped) return r.name + " skipped (" + r.flag + ")";
    return r.name + " " + std::to_string(r.violations) + "/" + std::to_string(r.checked);
}

const ProblemInstance& ls_desk() {
    static const ProblemInstance inst = gen_least_squares(200, 100, 7, 0.1);
    return inst;
}

const ProblemInstance& huber_desk() {
    static const ProblemInstance inst = gen_minimax_huber(200, 150, 7);
    return inst;
}

void criterion1() {
    const auto t0 = Clock::now();
    const auto& I = ls_desk();
    Solver s = solver_for(I, SchemeKind::halpern, ScheduleKind::halpern_fast);
    const auto t = run(s, I.y0, 2000);
    BoundSpec b;
    b.kind = BoundKind::halpern_fast;
    b.L = I.l_estimate;
    b.dist0 = (I.y0 - *I.solution).norm();
    const auto r = bound_check(t, b).front();
    const double sec = seconds_since(t0);
    report(1, r.ok() && r.checked == 2001 && sec < 10.0 && !t.error, "Halpern fast bound, K = 2000",
           std::to_string(r.violations) + " violations / " + std::to_string(r.checked) + ", worst excess " +
               sci(r.worst_excess) + ", " + sci(sec) + " s");
}

void criterion2() {
    const auto I = gen_identity(1, 1.0);
    Solver s = solver_for(I, SchemeKind::halpern, ScheduleKind::halpern_fast);
    const auto t = run(s, I.y0, 2);
    const double g2 = t.records[2].norm_g_y;
    const double bound = 1.0 * 1.0 / 3.0;
    report(2, std::abs(g2 - bound) <= 1e-15 && std::abs(g2 - 1.0 / 3.0) <= 1e-15, "tightness at k = 2",
           "|G y_2| = " + sci(g2) + ", gap " + sci(std::abs(g2 - bound)));
}

void criterion3() {
    bool pass = true;
    std::ostringstream detail;
    struct Pair {
        const char* label;
        SchemeKind a, b;
        ScheduleKind ka, kb;
    };
    const Pair pairs[] = {
        {"halpern/nesterov", SchemeKind::halpern, SchemeKind::nesterov, ScheduleKind::halpern_fast,
         ScheduleKind::halpern_fast},
        {"eag/nag_eag", SchemeKind::eag, SchemeKind::nag_eag, ScheduleKind::nag_eag, ScheduleKind::nag_eag},
        {"peag/nag_peag", SchemeKind::peag, SchemeKind::nag_peag, ScheduleKind::peag_theorem7,
         ScheduleKind::nag_peag},
    };
    TraceOptions o;
    o.keep_iterates = true;
    for (const auto* inst : {&ls_desk(), &huber_desk()}) {
        for (const auto& p : pairs) {
            Solver sa = solver_for(*inst, p.a, p.ka), sb = solver_for(*inst, p.b, p.kb);
            const auto ta = run(sa, inst->y0, 500, o), tb = run(sb, inst->y0, 500, o);
            const bool z_based = p.a == SchemeKind::peag;
            const double dev = z_based ? equivalence_report(ta.zs, tb.zs) : equivalence_report(ta.ys, tb.ys);
            const bool full = !ta.error && !tb.error && ta.ys.size() == 501;
            const bool ok = full && dev <= 1e-8;
            pass = pass && ok;
            detail << inst->meta.generator << " " << p.label << " " << sci(dev);
            if (!full) detail << " (stopped at step " << ta.error_step.value_or(-1) << ": " << ta.error.value_or("")
                              << ")";
            detail << "; ";
        }
    }
    report(3, pass, "scheme equivalences over 500 steps", detail.str());
}

void criterion4() {
    const auto& I = ls_desk();
    const double L = I.l_estimate, gamma = 0.9 / L, omega = 3.0;
    ScheduleConstants c;
    c.gamma = gamma;
    c.omega = omega;
    Solver s = solver_for(I, SchemeKind::nesterov, ScheduleKind::nesterov_theorem3, c);
    const Vector ys = *I.solution;
    TraceOptions o;
    o.snapshot_stride = 1;
    o.probes.push_back({"V", [&](const IterateState& st) {
                            return lyapunov_V(st, nesterov_coeffs(st.k, gamma, omega, 1.0), ys);
                        }});
    const auto t = run(s, I.y0, 5000, o);
    const auto V = main_probe(t);
    const auto dec = decrease_check(V, "V");
    bool pass = dec.ok() && !t.error;
    std::string detail = "V increases " + std::to_string(dec.violations);
    for (const auto& r : summability_check(t, gamma, omega, L, V.front())) {
        pass = pass && r.ok();
        detail += ", " + summary(r);
    }
    std::vector<double> g;
    for (const auto& r : t.records) g.push_back(r.norm_g_y);
    const auto tr = little_o_trend(g);
    pass = pass && tr.ok();
    detail += ", trend late " + sci(tr.late_max) + " <= early " + sci(tr.early_max);
    report(4, pass, "Nesterov-form Lyapunov suite, K = 5000", detail);
}

void criterion5() {
    const auto& I = huber_desk();
    const double L = I.l_estimate;
    const Vector ys = *I.solution;
    Solver s = solver_for(I, SchemeKind::nag_eag, ScheduleKind::nag_eag);
    TraceOptions o;
    o.probes.push_back({"Q", [&](const IterateState& st) { return lyapunov_Q(st, nag_eag_coeffs(st.k, L), ys); }});
    const auto t = run(s, I.y0, 5000, o);
    const auto Q = main_probe(t);
    const auto dec = decrease_check(std::span<const double>(Q).subspan(1), "Q");
    std::vector<double> lhs, rhs;
    for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
        const double g = t.records[k].norm_g_y, kk = static_cast<double>(k);
        lhs.push_back(Q[k + 1]);
        rhs.push_back((kk + 1) * (kk + 1) / (4 * L * L) * g * g);
    }
    const auto low = lower_bound_check(lhs, rhs, "Q lower bound", 1e-10);
    BoundSpec b;
    b.kind = BoundKind::eag_anchored;
    b.L = L;
    b.dist0 = (I.y0 - ys).norm();
    const auto bound = bound_check(t, b).front();
    report(5, dec.ok() && low.ok() && bound.ok() && !t.error, "extra-anchored Lyapunov suite, K = 5000",
           "Q increases from k = 1: " + std::to_string(dec.violations) + ", lower bound violations " +
               std::to_string(low.violations) + ", " + summary(bound));
}

void criterion6() {
    const auto& I = huber_desk();
    const double L = I.l_estimate;
    const Vector ys = *I.solution;
    ScheduleConstants c1;
    c1.sigma = 1.0;
    Solver s1 = solver_for(I, SchemeKind::peag, ScheduleKind::peag_theorem7, c1);
    const auto t1 = run(s1, I.y0, 5000);
    BoundSpec b;
    b.kind = BoundKind::peag;
    b.L = L;
    b.sigma = 1.0;
    b.dist0 = (I.y0 - ys).norm();
    bool pass = !t1.error;
    std::string detail;
    for (const auto& r : bound_check(t1, b)) {
        pass = pass && r.ok();
        detail += summary(r) + ", ";
    }
    ScheduleConstants c2;
    c2.sigma = 2.0;
    Solver s2 = solver_for(I, SchemeKind::peag, ScheduleKind::peag_theorem7, c2);
    TraceOptions o;
    o.probes.push_back({"E", [&](const IterateState& st) { return lyapunov_E(st, 2.0, L, ys); }});
    const auto t2 = run(s2, I.y0, 5000, o);
    const auto E = main_probe(t2);
    const auto dec = decrease_check(E, "E");
    const auto ws = peag_weighted_sum_check(t2, L, 2.0, E.front());
    pass = pass && dec.ok() && ws.ok() && !t2.error;
    detail += "E increases " + std::to_string(dec.violations) + ", weighted sum " + sci(ws.worst_excess);
    report(6, pass, "past-extra-anchored suite, K = 5000", detail);
}

void criterion7() {
    const auto I = gen_bilinear(200, 150, 7);
    const double L = I.l_estimate;
    ScheduleConstants c;
    c.rho = -1.0 / (4.0 * L);
    Solver s = solver_for(I, SchemeKind::comono_eag, ScheduleKind::comono_eag, c);
    const auto t = run(s, I.y0, 3000);
    BoundSpec b;
    b.kind = BoundKind::comono;
    b.L = L;
    b.rho = c.rho;
    b.dist0 = (I.y0 - *I.solution).norm();
    const auto r = bound_check(t, b).front();
    report(7, r.ok() && !t.error && r.checked == 3000, "co-monotone bound, K = 3000",
           summary(r) + ", worst excess " + sci(r.worst_excess));
}

void criterion8() {
    const auto& I = ls_desk();
    const double L = I.l_estimate, lam = 2.0 / L, m = splitting_modulus(lam, L);
    SplittingSpec fb;
    fb.A = L1Kind{0.5};
    fb.B = I.op;
    fb.lambda = lam;
    fb.l_forward = L;
    const auto rf = cocoercivity_report(fb_residual(fb), m, 1000, 3);
    SplittingSpec tos;
    tos.A = L1Kind{0.5};
    tos.B = ResolventKind{box_kind(I.op.dim, -0.5, 0.5)};
    tos.C = I.op;
    tos.lambda = lam;
    tos.l_forward = L;
    const auto rt = cocoercivity_report(tos_residual(tos), m, 1000, 4);

    // Correspondence with an affine monotone B whose resolvent is exact.
    const Eigen::Index n = 50;
    const Matrix S = Rng(21).normal_matrix(n, n), W = Rng(22).normal_matrix(n, n);
    const Matrix M = S * S.transpose() / static_cast<double>(n) + (W - W.transpose());
    const Vector c = Rng(23).normal_vector(n);
    const double mu = 0.3;
    SplittingSpec g;
    g.A = L1Kind{0.2};
    g.B = affine_operator(M, c);
    g.lambda = mu;
    SplittingSpec e = g;
    e.B = ResolventKind{AffineKind{M, c}};
    const auto G = fb_residual(g);
    const ThreeOperatorResidual E(e);
    Rng r(24);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Vector y = r.normal_vector(n);
        worst = std::max(worst, (E(y + mu * (M * y + c)) - G(y)).norm());
    }
    report(8, rf.violations == 0 && rt.violations == 0 && worst <= 1e-10, "residual-operator properties",
           "fb violations " + std::to_string(rf.violations) + "/" + std::to_string(rf.pairs) +
               ", tos violations " + std::to_string(rt.violations) + "/" + std::to_string(rt.pairs) +
               ", correspondence gap " + sci(worst));
}

void criterion9() {
    bool pass = true;
    std::ostringstream detail;
    const auto out = std::filesystem::temp_directory_path() / "anchored_acceptance_figures";
    for (auto fig : {Figure::exam1, Figure::exam2}) {
        const auto t0 = Clock::now();
        std::ostringstream log;
        const std::string tag = fig == Figure::exam1 ? "exam1" : "exam2";
        const int code = cmd_figure(fig, Scale::small, 7, std::nullopt, (out / tag).string(), log);
        const double sec = seconds_since(t0);
        const auto f = make_figure(fig, Scale::small, 7, std::nullopt);
        detail << tag << " " << sci(sec) << " s";
        for (std::size_t i = 0; i < f.fits.size(); ++i) {
            detail << ", " << f.labels[i] << " slope " << sci(f.fits[i].slope);
            pass = pass && f.fits[i].slope <= -0.9;
        }
        detail << "; ";
        pass = pass && code == 0 && sec < 60.0 && std::filesystem::exists(out / tag / (tag + ".svg"));
    }
    report(9, pass, "figure regeneration", detail.str());
}

void criterion10() {
    const auto I = gen_least_squares(50, 30, 5, 0.1);
    struct Case {
        SchemeKind scheme;
        ScheduleKind kind;
        long per_step;
    };
    const Case cases[] = {
        {SchemeKind::halpern, ScheduleKind::halpern_fast, 1},  {SchemeKind::nesterov, ScheduleKind::halpern_fast, 1},
        {SchemeKind::nesterov, ScheduleKind::nesterov_theorem3, 1},
        {SchemeKind::peag, ScheduleKind::peag_theorem7, 1},    {SchemeKind::nag_peag, ScheduleKind::nag_peag, 1},
        {SchemeKind::eag, ScheduleKind::eag_constant, 2},      {SchemeKind::eag, ScheduleKind::nag_eag, 2},
        {SchemeKind::nag_eag, ScheduleKind::nag_eag, 2},       {SchemeKind::comono_eag, ScheduleKind::comono_eag, 2},
        {SchemeKind::nag_comono, ScheduleKind::nag_comono, 2},
    };
    bool pass = true;
    std::ostringstream detail;
    const long warm = 5, K = 100;
    for (const auto& cs : cases) {
        auto n = std::make_shared<long>(0);
        SolverData d;
        d.op = counting_operator(I.op, n);
        ScheduleConstants c;
        c.L = I.l_estimate;
        Solver s = make_solver(ProblemCase::cocoercive, d, cs.scheme, cs.kind, c);
        auto st = IterateState::start(I.y0);
        for (long k = 0; k < warm; ++k) s.step(st);
        const long before = *n;
        for (long k = 0; k < K; ++k) s.step(st);
        const long used = *n - before;
        const bool ok = used == cs.per_step * K;
        pass = pass && ok;
        if (!ok) detail << to_string(cs.scheme) << "/" << to_string(cs.kind) << " used " << used << "; ";
    }
    if (pass) detail << "all 10 scheme/schedule pairs exact";
    report(10, pass, "evaluations per step", detail.str());
}

}  // namespace

int main() {
    std::cout.setf(std::ios::unitbuf);
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << (10 - failures) << " of 10 criteria passed" << std::endl;
    return 0;
}
